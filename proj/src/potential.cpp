#include "polyqp/potential.hpp"

#include <cmath>
#include <cstdlib>

namespace polyqp {

namespace {

int l1_norm(const CoeffKey& k) {
  return std::abs(k[0]) + std::abs(k[1]) + std::abs(k[2]) + std::abs(k[3]);
}

std::string key_str(const CoeffKey& k) {
  return "s1=(" + std::to_string(k[0]) + "," + std::to_string(k[1]) + ") s2=(" +
         std::to_string(k[2]) + "," + std::to_string(k[3]) + ")";
}

}  // namespace

std::vector<Violation> validate(const PotentialSpec& spec) {
  std::vector<Violation> out;
  if (spec.l < 2)
    out.push_back({"polyharmonic order l must be >= 2", {}});
  if (spec.Q < 1)
    out.push_back({"frequency cutoff Q must be >= 1", {}});
  if (!std::isfinite(spec.coupling) || spec.coupling < 0)
    out.push_back({"coupling must be finite and >= 0", {}});
  for (const auto& [key, value] : spec.coeffs) {
    const int n = l1_norm(key);
    if (n == 0)
      out.push_back({"|s1|+|s2|=0: constant term excluded, " + key_str(key), key});
    else if (spec.Q >= 1 && n > spec.Q)
      out.push_back({"cutoff exceeded: |s1|+|s2| > Q at " + key_str(key), key});
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
      out.push_back({"non-finite amplitude at " + key_str(key), key});
    if (spec.real_valued) {
      const CoeffKey neg{-key[0], -key[1], -key[2], -key[3]};
      auto it = spec.coeffs.find(neg);
      if (it == spec.coeffs.end()) {
        out.push_back({"Hermitian partner missing for " + key_str(key), key});
      } else if (it->second != std::conj(value)) {
        out.push_back({"Hermitian symmetry violated at " + key_str(key), key});
      }
    }
  }
  return out;
}

Complex evaluate(const PotentialSpec& spec, const Vec2& x, PhaseConvention conv) {
  const double c = phase_scale(conv);
  const double alpha = spec.freq.value();
  Complex sum(0, 0);
  for (const auto& [key, value] : spec.coeffs) {
    const double f1 = key[0] + alpha * key[2];
    const double f2 = key[1] + alpha * key[3];
    const double phase = c * (f1 * x.x() + f2 * x.y());
    sum += value * Complex(std::cos(phase), std::sin(phase));
  }
  return spec.coupling * sum;
}

Complex coefficient(const PotentialSpec& spec, const IVec2& s1, const IVec2& s2) {
  auto it = spec.coeffs.find(make_key(s1, s2));
  if (it == spec.coeffs.end()) return Complex(0, 0);
  return spec.coupling * it->second;
}

double coeff_abs_sum(const PotentialSpec& spec) {
  double s = 0;
  for (const auto& [key, value] : spec.coeffs) s += std::abs(value);
  return spec.coupling * s;
}

int max_s1_inf(const PotentialSpec& spec) {
  int r = 0;
  for (const auto& [key, value] : spec.coeffs)
    r = std::max({r, std::abs(key[0]), std::abs(key[1])});
  return r;
}

int max_s2_inf(const PotentialSpec& spec) {
  int r = 0;
  for (const auto& [key, value] : spec.coeffs)
    r = std::max({r, std::abs(key[2]), std::abs(key[3])});
  return r;
}

}  // namespace polyqp
