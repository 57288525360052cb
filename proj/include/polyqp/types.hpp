#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace polyqp {

using Vec2 = Eigen::Vector2d;
using IVec2 = Eigen::Vector2i;
using Complex = std::complex<double>;

// Phase convention for the exponentials e^{i c <s1+alpha s2, x>}.
// Absorbed: c = 1 (momenta measured so the dual shift is exactly p + alpha m).
// Literal:  c = 2*pi (the trigonometric-polynomial form of the potential).
enum class PhaseConvention { Absorbed, Literal };

inline double phase_scale(PhaseConvention conv) {
  return conv == PhaseConvention::Literal ? 6.283185307179586476925286766559 : 1.0;
}

enum class ExecutionPolicy { Serial, Parallel };

struct CapExceeded : std::length_error {
  using std::length_error::length_error;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// |v|^{2l} as an iterated product of |v|^2, bit-reproducible across call sites.
inline double pow2l(double squared_norm, int l) {
  double out = squared_norm;
  for (int i = 1; i < l; ++i) out *= squared_norm;
  return out;
}

// Counter-based pseudorandom stream (splitmix64): value depends only on
// (seed, counter), so parallel sampling is independent of thread count.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = splitmix64(splitmix64(seed) ^ (counter * 0xd1342543de82ef95ULL + 1));
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

}  // namespace polyqp
