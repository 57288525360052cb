#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "polyqp/hamiltonian.hpp"

namespace polyqp {

struct Eigensystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors; // orthonormal columns, aligned with values
};

// Full dense Hermitian eigendecomposition (LAPACK zheevd behind the
// contract). Throws SolverError on failure; never returns NaNs silently.
Eigensystem eig_all(const HamiltonianMatrix& H);
Eigensystem eig_all(const Eigen::MatrixXcd& H);

// Ascending eigenvalues only.
Eigen::VectorXd eig_values(const Eigen::MatrixXcd& H);

// Eigenpair continuation floors. gap_floor = gap_floor_scale * (1 + |lambda|).
struct SelectionFloors {
  double overlap_floor = 0.5;
  double gap_floor_scale = 1e-8;
};

// A continued non-resonant eigenpair at one truncation level.
struct SpectralPair {
  int level = 1;
  double lambda = 0;
  Eigen::VectorXcd coeffs;  // unit l2 norm, phase-fixed
  double overlap_prev = 1;  // squared overlap with the previous-scale vector
  double l1_increment = 0;  // ||u^{(n)} - extended u^{(n-1)}||_1
  double nearest_gap = 0;   // distance to the nearest other eigenvalue
  TruncationSetPtr set;
};

// Continuation failed: no sufficiently overlapping simple eigenvalue.
struct Resonant {
  int level = 1;
  double overlap = 0;  // best squared overlap achieved
  double gap = 0;      // nearest-neighbor gap at the best candidate
};

using PairOrResonant = std::variant<SpectralPair, Resonant>;

// Step one: pick the eigenpair of H^{(1)}(k) with maximal squared overlap
// with the unperturbed vector u^{(0)} = delta at the zero index.
PairOrResonant initial_pair(const PotentialSpec& spec, const Vec2& k,
                            const TruncationSetPtr& set1,
                            const SelectionFloors& floors = {});

// Step n: zero-extend the previous coefficients into the larger set and pick
// the eigenpair of H^{(n)}(k) with maximal squared overlap.
PairOrResonant continue_pair(const PotentialSpec& spec, const Vec2& k,
                             const SpectralPair& prev,
                             const TruncationSetPtr& set_n,
                             const SelectionFloors& floors = {});

// Hellmann-Feynman gradient of the continued eigenvalue:
// only H_0 depends on k, so
//   grad = sum_idx 2l |k+b|^{2l-2} (k+b) |u_idx|^2.
// Rejects near-degenerate pairs (gap below floor), where the formula breaks.
Vec2 gradient(const PotentialSpec& spec, const Vec2& k,
              const SpectralPair& pair, const SelectionFloors& floors = {});

struct ConvergenceRow {
  int n = 0;
  double lambda = 0;
  double diff = 0;           // |lambda^{(n)} - lambda^{(n-1)}|; n=1: vs |k|^{2l}
  double l1_increment = 0;
  double residual_next = 0;  // ||H^{(n+1)} u~ - lambda u~||_2
  Vec2 grad{0, 0};
};

struct ConvergenceReport {
  Vec2 k;
  std::vector<ConvergenceRow> rows;
  // Least-squares slope of log(diff) vs n over positive diffs; diagnostic only.
  double fitted_decay = 0;
};

struct ResonantAtLevel {
  Resonant witness;
};

using ReportOrResonant = std::variant<ConvergenceReport, ResonantAtLevel>;

// Chain initial_pair / continue_pair over levels 1..N.
ReportOrResonant run_multiscale(const PotentialSpec& spec, const Vec2& k, int N,
                                const GrowthSchedule& schedule,
                                const SelectionFloors& floors = {});

// The pairs themselves, for callers that need the eigenvectors.
std::variant<std::vector<SpectralPair>, ResonantAtLevel> multiscale_pairs(
    const PotentialSpec& spec, const Vec2& k, int N,
    const GrowthSchedule& schedule, const SelectionFloors& floors = {});

// (H^{(target)} - lambda) u computed in coefficient space, without
// assembling the target matrix; u lives on pair.set, zero outside.
Eigen::VectorXcd residual_vector(const PotentialSpec& spec, const Vec2& k,
                                 const SpectralPair& pair,
                                 const TruncationSet& target);

void write_convergence_csv(const ConvergenceReport& rep, std::ostream& os);

}  // namespace polyqp
