#pragma once

#include <functional>
#include <optional>

#include "polyqp/spectral.hpp"

namespace polyqp {

// Threshold schedule for the resonance criterion. The level-n threshold is
//   delta_n(lambda) = delta1_coeff * lambda^{1 - 1/2l} * rho^{n-1} + eps0,
// scale-matched to the radial derivative of |k|^{2l}.
struct ResonanceThresholds {
  double delta1_coeff = 0.1;
  double rho = 0.1;
  double eps0 = 0.0;
  bool full_s_scan = false;  // scan all block levels s = 1..n-1, not just n-1

  double delta_n(double lambda, int n, int l) const;
};

struct ResonanceWitness {
  LatticeIndex shift;
  int block_level = 0;  // 0 means the unperturbed (level-1) diagonal test
  double distance = 0;
  double threshold = 0;
};

struct ResonanceVerdict {
  bool resonant = false;
  std::optional<ResonanceWitness> witness;
};

// Resonance test at momentum k against reference energy lambda_ref.
// n = 1: resonant iff |lambda_ref - |k+b(j)|^{2l}| < delta_1 for some
//        nonzero j in M_1.
// n >= 2: resonant iff dist(lambda_ref, spec H^{(s)}(k+b(j))) < delta_n for
//        some nonzero shift j in M_n, block level s = n-1 (all s < n when
//        full_s_scan). The first violating shift in canonical order is the
//        witness.
ResonanceVerdict is_resonant(const PotentialSpec& spec, const Vec2& k,
                             double lambda_ref, int n,
                             const GrowthSchedule& schedule,
                             const ResonanceThresholds& thresholds);

// Half-open arc [begin, end) within [0, 2pi).
struct Arc {
  double begin = 0;
  double end = 0;
  double length() const { return end - begin; }
};

// Union of disjoint sorted arcs of the unit circle: the non-resonant
// directions B_n(lambda).
class AngleSet {
 public:
  static AngleSet full_circle(int level, double lambda);
  static AngleSet from_arcs(int level, double lambda, std::vector<Arc> arcs);

  int level() const { return level_; }
  double lambda() const { return lambda_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  double total_length() const;
  bool contains(double phi) const;
  bool empty() const { return arcs_.empty(); }

  // Removes [a, b) (wrapping across 2pi allowed).
  void subtract(double a, double b);
  AngleSet intersect(const AngleSet& other) const;
  // Complement within [0, 2pi): the holes.
  std::vector<Arc> holes() const;

  void write_csv(std::ostream& os) const;

 private:
  int level_ = 1;
  double lambda_ = 0;
  std::vector<Arc> arcs_;
  void normalize();
};

struct HoleStatistics {
  std::size_t count = 0;
  std::vector<double> lengths;  // descending
  double total_removed = 0;
};

HoleStatistics hole_statistics(const AngleSet& set);

// Radius of the previous-level isoenergetic curve in direction phi; empty
// when the direction has no continued root (treated as resonant).
using RadiusFunction = std::function<std::optional<double>(double phi)>;

// One carving step of the Swiss-cheese construction: mark the resonant phi
// samples on the level-(n-1) curve, punch holes of half-grid padding around
// them, and intersect with the previous angle set.
AngleSet carve_cheese(const PotentialSpec& spec, double lambda, int n,
                      const RadiusFunction& kappa_prev, int phi_resolution,
                      const GrowthSchedule& schedule,
                      const ResonanceThresholds& thresholds,
                      const AngleSet& prev,
                      ExecutionPolicy policy = ExecutionPolicy::Parallel);

// The raw per-sample verdict kernel behind carve_cheese; exposed so the
// serial reference and the OpenMP version can be compared directly.
std::vector<std::uint8_t> resonance_scan(
    const PotentialSpec& spec, double lambda, int n,
    const RadiusFunction& kappa_prev, int phi_resolution,
    const GrowthSchedule& schedule, const ResonanceThresholds& thresholds,
    const AngleSet& prev, ExecutionPolicy policy);

struct FractionEstimate {
  double fraction = 0;
  double ci_low = 0;
  double ci_high = 0;
  std::size_t samples = 0;
};

// Monte Carlo estimate of the non-resonant fraction of the disk B_R
// (or the annulus R/2 <= |k| <= R). lambda_ref per sample comes from the
// continued branch for n >= 2 (chain failure counts as resonant) and from
// |k|^{2l} at n = 1.
FractionEstimate nonresonant_fraction(const PotentialSpec& spec, double R,
                                      int n, std::size_t samples,
                                      std::uint64_t seed,
                                      const GrowthSchedule& schedule,
                                      const ResonanceThresholds& thresholds,
                                      bool annulus = false,
                                      ExecutionPolicy policy = ExecutionPolicy::Parallel);

void write_fraction_csv(const std::vector<std::pair<double, FractionEstimate>>& rows,
                        std::ostream& os);

}  // namespace polyqp
