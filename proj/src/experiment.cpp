#include "polyqp/experiment.hpp"

#include <cmath>

namespace polyqp {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

std::vector<std::optional<double>> solve_radii(const ExperimentConfig& cfg,
                                               double lambda, int level,
                                               const AngleSet& angle_set,
                                               ExecutionPolicy policy) {
  const int res = cfg.grids.phi_resolution;
  const double h = kTwoPi / res;
  std::vector<std::optional<double>> radii(static_cast<std::size_t>(res));
  auto probe = [&](std::ptrdiff_t i) {
    const double phi = i * h;
    if (!angle_set.contains(phi)) return;
    const RadialResult r = radial_solve(cfg.potential, lambda, phi, level,
                                        cfg.schedule, cfg.floors, cfg.radial);
    if (std::holds_alternative<RadialRoot>(r))
      radii[static_cast<std::size_t>(i)] = std::get<RadialRoot>(r).kappa;
  };
  if (policy == ExecutionPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < res; ++i) probe(i);
  } else {
    for (std::ptrdiff_t i = 0; i < res; ++i) probe(i);
  }
  return radii;
}

RadiusFunction radius_lookup(
    std::shared_ptr<const std::vector<std::optional<double>>> radii,
    int phi_resolution) {
  const double h = kTwoPi / phi_resolution;
  return [radii, h](double phi) -> std::optional<double> {
    const auto i = static_cast<std::size_t>(std::llround(phi / h));
    return i < radii->size() ? (*radii)[i] : std::nullopt;
  };
}

std::vector<AngleSet> carve_levels(const ExperimentConfig& cfg, double lambda,
                                   int max_level, ExecutionPolicy policy) {
  const double kappa0 = std::pow(lambda, 1.0 / (2.0 * cfg.potential.l));
  std::vector<AngleSet> out;
  AngleSet current = AngleSet::full_circle(0, lambda);
  for (int n = 1; n <= max_level; ++n) {
    RadiusFunction kappa_prev;
    if (n == 1) {
      kappa_prev = [kappa0](double) { return std::optional<double>(kappa0); };
    } else {
      auto radii = std::make_shared<const std::vector<std::optional<double>>>(
          solve_radii(cfg, lambda, n - 1, current, policy));
      kappa_prev = radius_lookup(radii, cfg.grids.phi_resolution);
    }
    current = carve_cheese(cfg.potential, lambda, n, kappa_prev,
                           cfg.grids.phi_resolution, cfg.schedule,
                           cfg.thresholds, current, policy);
    out.push_back(current);
    if (current.empty()) break;  // legal: lambda below the practical floor
  }
  return out;
}

IsoCurve isocurve_at(const ExperimentConfig& cfg, double lambda, int level,
                     ExecutionPolicy policy, AngleSet* angle_set_out) {
  const auto sets = carve_levels(cfg, lambda, level, policy);
  const AngleSet& b = sets.back();
  if (angle_set_out) *angle_set_out = b;
  if (b.empty())
    return IsoCurve{lambda, level, {}, {}};
  return trace_curve(cfg.potential, lambda, level, b, cfg.grids.phi_resolution,
                     cfg.schedule, cfg.floors, cfg.radial, policy);
}

}  // namespace polyqp
