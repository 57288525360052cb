#pragma once

#include "polyqp/config.hpp"

namespace polyqp {

// Per-direction radii kappa_{level}(lambda, phi) on the uniform phi grid,
// solved only inside the angle set; empty where the solve failed.
std::vector<std::optional<double>> solve_radii(
    const ExperimentConfig& cfg, double lambda, int level,
    const AngleSet& angle_set,
    ExecutionPolicy policy = ExecutionPolicy::Parallel);

// The Swiss-cheese chain B_1(lambda) ... B_N(lambda).
std::vector<AngleSet> carve_levels(const ExperimentConfig& cfg, double lambda,
                                   int max_level,
                                   ExecutionPolicy policy = ExecutionPolicy::Parallel);

// D_n(lambda): carve to level n, then trace the curve on B_n.
IsoCurve isocurve_at(const ExperimentConfig& cfg, double lambda, int level,
                     ExecutionPolicy policy = ExecutionPolicy::Parallel,
                     AngleSet* angle_set_out = nullptr);

// Turns phi-grid radii into a lookup the carve step accepts.
RadiusFunction radius_lookup(std::shared_ptr<const std::vector<std::optional<double>>> radii,
                             int phi_resolution);

}  // namespace polyqp
