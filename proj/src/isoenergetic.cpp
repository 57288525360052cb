#include "polyqp/isoenergetic.hpp"

#include <cmath>
#include <cstdio>

namespace polyqp {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct BranchEval {
  double lambda;
  SpectralPair pair;
};

// lambda^{(n)}(kappa nu) via the continuation chain; nullopt when resonant.
std::optional<BranchEval> eval_branch(const PotentialSpec& spec, double kappa,
                                      const Vec2& nu, int level,
                                      const GrowthSchedule& schedule,
                                      const SelectionFloors& floors) {
  auto chain = multiscale_pairs(spec, Vec2(kappa * nu), level, schedule, floors);
  if (std::holds_alternative<ResonantAtLevel>(chain)) return std::nullopt;
  auto& pairs = std::get<std::vector<SpectralPair>>(chain);
  return BranchEval{pairs.back().lambda, std::move(pairs.back())};
}

}  // namespace

RadialResult radial_solve(const PotentialSpec& spec, double lambda, double phi,
                          int level, const GrowthSchedule& schedule,
                          const SelectionFloors& floors,
                          const RadialSolveOptions& options) {
  if (lambda <= 0) throw std::invalid_argument("radial_solve: lambda > 0");
  const Vec2 nu(std::cos(phi), std::sin(phi));
  const double kappa0 = std::pow(lambda, 1.0 / (2.0 * spec.l));
  double a = kappa0 * (1.0 - options.eta);
  double b = kappa0 * (1.0 + options.eta);
  const double tol = options.tol_scale * lambda;

  auto F = [&](double kappa) -> std::optional<BranchEval> {
    return eval_branch(spec, kappa, nu, level, schedule, floors);
  };

  auto fa = F(a);
  if (!fa) return SampleFailure{phi, SolveFailure::Resonant};
  auto fb = F(b);
  if (!fb) return SampleFailure{phi, SolveFailure::Resonant};
  double Fa = fa->lambda - lambda;
  double Fb = fb->lambda - lambda;
  if (Fa == 0.0) return RadialRoot{a, fa->pair, 0.0};
  if (Fb == 0.0) return RadialRoot{b, fb->pair, 0.0};
  if (Fa * Fb > 0) return SampleFailure{phi, SolveFailure::NoRoot, Fa, Fb};

  // bisection down to a narrow interval, then Newton
  double mid = 0.5 * (a + b);
  std::optional<BranchEval> fm;
  for (int it = 0; it < options.max_bisect && (b - a) > 1e-3 * kappa0; ++it) {
    mid = 0.5 * (a + b);
    fm = F(mid);
    if (!fm) return SampleFailure{phi, SolveFailure::Resonant};
    const double Fm = fm->lambda - lambda;
    if (std::abs(Fm) <= tol)
      return RadialRoot{mid, fm->pair, std::abs(Fm)};
    if (Fa * Fm < 0) {
      b = mid;
      Fb = Fm;
    } else {
      a = mid;
      Fa = Fm;
    }
  }

  double kappa = 0.5 * (a + b);
  fm = F(kappa);
  if (!fm) return SampleFailure{phi, SolveFailure::Resonant};
  const double radial_scale =
      2.0 * spec.l * std::pow(kappa0, 2.0 * spec.l - 1.0);
  for (int it = 0; it < options.max_newton; ++it) {
    const double Fm = fm->lambda - lambda;
    if (std::abs(Fm) <= tol) return RadialRoot{kappa, fm->pair, std::abs(Fm)};
    const Vec2 g = gradient(spec, Vec2(kappa * nu), fm->pair);
    const double slope = g.dot(nu);
    if (slope < options.radial_floor * radial_scale)
      return SampleFailure{phi, SolveFailure::TangentialCrossing};
    double next = kappa - Fm / slope;
    if (next <= a || next >= b) next = 0.5 * (a + b);  // keep the bracket
    const auto fn = F(next);
    if (!fn) return SampleFailure{phi, SolveFailure::Resonant};
    const double Fn = fn->lambda - lambda;
    if (Fa * Fn < 0) {
      b = next;
      Fb = Fn;
    } else {
      a = next;
      Fa = Fn;
    }
    kappa = next;
    fm = fn;
  }
  return SampleFailure{phi, SolveFailure::NoRoot, Fa, Fb};
}

double curve_derivative(const PotentialSpec& spec, double lambda, double phi,
                        double kappa, const SpectralPair& pair,
                        const RadialSolveOptions& options) {
  const Vec2 nu(std::cos(phi), std::sin(phi));
  const Vec2 t(-std::sin(phi), std::cos(phi));
  const Vec2 g = gradient(spec, Vec2(kappa * nu), pair);
  const double radial = g.dot(nu);
  const double kappa0 = std::pow(lambda, 1.0 / (2.0 * spec.l));
  const double radial_scale =
      2.0 * spec.l * std::pow(kappa0, 2.0 * spec.l - 1.0);
  if (radial < options.radial_floor * radial_scale)
    throw std::invalid_argument(
        "curve_derivative: radial derivative below positivity floor");
  return -kappa * g.dot(t) / radial;
}

IsoCurve trace_curve(const PotentialSpec& spec, double lambda, int level,
                     const AngleSet& angle_set, int phi_resolution,
                     const GrowthSchedule& schedule,
                     const SelectionFloors& floors,
                     const RadialSolveOptions& options,
                     ExecutionPolicy policy) {
  if (angle_set.empty())
    throw std::invalid_argument("trace_curve: empty angle set");
  IsoCurve curve;
  curve.lambda = lambda;
  curve.level = level;
  const double h = kTwoPi / phi_resolution;
  std::vector<std::optional<RadialResult>> slots(
      static_cast<std::size_t>(phi_resolution));
  auto probe = [&](std::ptrdiff_t i) {
    const double phi = i * h;
    if (!angle_set.contains(phi)) return;
    slots[static_cast<std::size_t>(i)] =
        radial_solve(spec, lambda, phi, level, schedule, floors, options);
  };
  if (policy == ExecutionPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < phi_resolution; ++i) probe(i);
  } else {
    for (std::ptrdiff_t i = 0; i < phi_resolution; ++i) probe(i);
  }
  for (std::ptrdiff_t i = 0; i < phi_resolution; ++i) {
    auto& slot = slots[static_cast<std::size_t>(i)];
    if (!slot) continue;
    const double phi = i * h;
    if (std::holds_alternative<SampleFailure>(*slot)) {
      curve.failures.push_back(std::get<SampleFailure>(*slot));
      continue;
    }
    const RadialRoot& root = std::get<RadialRoot>(*slot);
    CurveSample s;
    s.phi = phi;
    s.kappa = root.kappa;
    s.residual = root.residual;
    try {
      s.dkappa_dphi =
          curve_derivative(spec, lambda, phi, root.kappa, root.pair, options);
    } catch (const std::invalid_argument&) {
      curve.failures.push_back(
          SampleFailure{phi, SolveFailure::TangentialCrossing});
      continue;
    }
    curve.samples.push_back(s);
  }
  return curve;
}

void write_isocurve_csv(const IsoCurve& curve, std::ostream& os) {
  os << "phi,kappa,dkappa_dphi,residual\n";
  char buf[160];
  for (const auto& s : curve.samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g", s.phi, s.kappa,
                  s.dkappa_dphi, s.residual);
    os << buf << '\n';
  }
}

}  // namespace polyqp
