// Shared test potentials and schedules.
#pragma once

#include "polyqp/experiment.hpp"

namespace polyqp::testing {

// cos-type potential along x1 plus a weaker incommensurate cosine: the
// standard two-frequency sample used throughout the tests.
inline PotentialSpec cosine2(int l = 2, double coupling = 0.05) {
  PotentialSpec spec;
  spec.freq = Frequency::quadratic(0, 1, 2);
  spec.l = l;
  spec.Q = 1;
  spec.coupling = coupling;
  spec.coeffs[make_key(IVec2(1, 0), IVec2(0, 0))] = 1.0;
  spec.coeffs[make_key(IVec2(-1, 0), IVec2(0, 0))] = 1.0;
  spec.coeffs[make_key(IVec2(0, 0), IVec2(1, 0))] = 0.5;
  spec.coeffs[make_key(IVec2(0, 0), IVec2(-1, 0))] = 0.5;
  return spec;
}

// Couples every lattice direction; no decoupled fibers.
inline PotentialSpec full_couple(int l = 2, double coupling = 0.05) {
  PotentialSpec spec = cosine2(l, coupling);
  spec.coeffs[make_key(IVec2(0, 1), IVec2(0, 0))] = 1.0;
  spec.coeffs[make_key(IVec2(0, -1), IVec2(0, 0))] = 1.0;
  spec.coeffs[make_key(IVec2(0, 0), IVec2(0, 1))] = 0.5;
  spec.coeffs[make_key(IVec2(0, 0), IVec2(0, -1))] = 0.5;
  return spec;
}

// Purely periodic coefficients (s2 = 0 only), for r = 0 schedules.
inline PotentialSpec periodic_only(int l = 2, double coupling = 0.05) {
  PotentialSpec spec;
  spec.freq = Frequency::quadratic(0, 1, 2);
  spec.l = l;
  spec.Q = 1;
  spec.coupling = coupling;
  spec.coeffs[make_key(IVec2(1, 0), IVec2(0, 0))] = 1.0;
  spec.coeffs[make_key(IVec2(-1, 0), IVec2(0, 0))] = 1.0;
  spec.coeffs[make_key(IVec2(0, 1), IVec2(0, 0))] = 1.0;
  spec.coeffs[make_key(IVec2(0, -1), IVec2(0, 0))] = 1.0;
  return spec;
}

inline GrowthSchedule sched(int R1, int r1, int factor = 2, int R_cap = 0,
                            int r_cap = 0, std::size_t size_cap = 2500) {
  GrowthSchedule s;
  s.R1 = R1;
  s.r1 = r1;
  s.factor = factor;
  s.R_cap = R_cap;
  s.r_cap = r_cap;
  s.size_cap = size_cap;
  return s;
}

}  // namespace polyqp::testing
