#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "polyqp/lattice.hpp"
#include "polyqp/types.hpp"

namespace polyqp {

// Key (s1, s2) of a potential coefficient, flattened for canonical map order.
using CoeffKey = std::array<int, 4>;

inline CoeffKey make_key(const IVec2& s1, const IVec2& s2) {
  return {s1.x(), s1.y(), s2.x(), s2.y()};
}
inline IVec2 key_s1(const CoeffKey& k) { return IVec2(k[0], k[1]); }
inline IVec2 key_s2(const CoeffKey& k) { return IVec2(k[2], k[3]); }

// Trigonometric-polynomial quasi-periodic potential
//   V = g * sum V_{s1,s2} e^{2 pi i <s1 + alpha s2, x>},  0 < |s1|+|s2| <= Q.
// The coupling g scales all coefficients uniformly.
struct PotentialSpec {
  Frequency freq = Frequency::quadratic(0, 1, 2);
  int l = 2;
  int Q = 1;
  double coupling = 1.0;
  bool real_valued = true;
  std::map<CoeffKey, Complex> coeffs;
};

struct Violation {
  std::string message;
  CoeffKey key{0, 0, 0, 0};
};

// Returns every violated invariant; empty means the spec is valid.
std::vector<Violation> validate(const PotentialSpec& spec);
inline bool is_valid(const PotentialSpec& spec) { return validate(spec).empty(); }

// Pointwise value of V at x under the given phase convention.
Complex evaluate(const PotentialSpec& spec, const Vec2& x,
                 PhaseConvention conv = PhaseConvention::Absorbed);

// Stored amplitude g*V_{s1,s2}, exact zero when the key is absent.
Complex coefficient(const PotentialSpec& spec, const IVec2& s1, const IVec2& s2);

// g * sum |V_{s1,s2}|: exact bound on every off-diagonal row sum.
double coeff_abs_sum(const PotentialSpec& spec);

// Sup-norm support radii of the coefficient table.
int max_s1_inf(const PotentialSpec& spec);
int max_s2_inf(const PotentialSpec& spec);

}  // namespace polyqp
