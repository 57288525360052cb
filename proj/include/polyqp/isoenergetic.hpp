#pragma once

#include "polyqp/resonance.hpp"

namespace polyqp {

struct CurveSample {
  double phi = 0;
  double kappa = 0;
  double dkappa_dphi = 0;
  double residual = 0;  // |lambda^{(n)}(kappa nu) - lambda|
};

enum class SolveFailure { NoRoot, Resonant, TangentialCrossing };

struct SampleFailure {
  double phi = 0;
  SolveFailure kind = SolveFailure::NoRoot;
  double bracket_low = 0;   // F at the bracket endpoints for NoRoot
  double bracket_high = 0;
};

struct IsoCurve {
  double lambda = 0;
  int level = 1;
  std::vector<CurveSample> samples;   // ordered by phi
  std::vector<SampleFailure> failures;
};

struct RadialRoot {
  double kappa = 0;
  SpectralPair pair;
  double residual = 0;
};

struct RadialSolveOptions {
  double eta = 0.2;          // bracket half-width, relative to lambda^{1/2l}
  double tol_scale = 1e-9;   // |lambda^{(n)} - lambda| <= tol_scale * lambda
  double radial_floor = 1e-6;  // positivity floor on grad(lambda) . nu, relative
  int max_bisect = 60;
  int max_newton = 30;
};

using RadialResult = std::variant<RadialRoot, SampleFailure>;

// Solve lambda^{(n)}(kappa nu(phi)) = lambda for kappa in the bracket
// [kappa0 (1-eta), kappa0 (1+eta)], kappa0 = lambda^{1/2l}: bracketed
// bisection refined by Newton steps using the Hellmann-Feynman gradient.
RadialResult radial_solve(const PotentialSpec& spec, double lambda, double phi,
                          int level, const GrowthSchedule& schedule,
                          const SelectionFloors& floors = {},
                          const RadialSolveOptions& options = {});

// Implicit-function derivative at a solved sample:
//   dkappa/dphi = -kappa (grad . t) / (grad . nu),  t = (-sin phi, cos phi).
// Throws when grad . nu is below the positivity floor.
double curve_derivative(const PotentialSpec& spec, double lambda, double phi,
                        double kappa, const SpectralPair& pair,
                        const RadialSolveOptions& options = {});

// Radial solve on every grid direction inside the angle set; failures are
// recorded, never fatal.
IsoCurve trace_curve(const PotentialSpec& spec, double lambda, int level,
                     const AngleSet& angle_set, int phi_resolution,
                     const GrowthSchedule& schedule,
                     const SelectionFloors& floors = {},
                     const RadialSolveOptions& options = {},
                     ExecutionPolicy policy = ExecutionPolicy::Parallel);

void write_isocurve_csv(const IsoCurve& curve, std::ostream& os);

}  // namespace polyqp
