#include "oracles.hpp"

#include <cmath>

namespace polyqp::oracle {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Eigen::MatrixXcd naive_assemble(const PotentialSpec& spec, const Vec2& k,
                                const TruncationSet& set) {
  const std::size_t n = set.size();
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < n; ++col) {
      if (row == col) {
        const Vec2 v = k + dual_vector(set[row], spec.freq);
        H(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
            pow2l(v.squaredNorm(), spec.l);
        continue;
      }
      const LatticeIndex d = set[row] - set[col];
      H(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
          coefficient(spec, d.p, d.m);
    }
  }
  return H;
}

std::pair<double, LatticeIndex> exhaustive_min_shift(const Frequency& freq,
                                                     int box) {
  const long double alpha = static_cast<long double>(freq.value());
  long double best = -1;
  LatticeIndex argmin;
  for (int m1 = -box; m1 <= box; ++m1)
    for (int m2 = -box; m2 <= box; ++m2)
      for (int p1 = -box; p1 <= box; ++p1)
        for (int p2 = -box; p2 <= box; ++p2) {
          if (p1 == 0 && p2 == 0 && m1 == 0 && m2 == 0) continue;
          const long double x = p1 + alpha * m1;
          const long double y = p2 + alpha * m2;
          const long double norm = std::sqrt(x * x + y * y);
          if (best < 0 || norm < best) {
            best = norm;
            argmin = LatticeIndex{IVec2(p1, p2), IVec2(m1, m2)};
          }
        }
  return {static_cast<double>(best), argmin};
}

bool brute_force_resonant(const PotentialSpec& spec, const Vec2& k,
                          double lambda_ref, int n,
                          const GrowthSchedule& schedule,
                          const ResonanceThresholds& thresholds) {
  const double thr = thresholds.delta_n(lambda_ref, n, spec.l);
  const TruncationSetPtr shifts = build_truncation_uncapped(std::max(n, 1), schedule);
  if (n <= 1) {
    for (const auto& j : shifts->indices()) {
      if (j.is_zero()) continue;
      const double d =
          pow2l((k + dual_vector(j, spec.freq)).squaredNorm(), spec.l);
      if (std::abs(lambda_ref - d) < thr) return true;
    }
    return false;
  }
  const int s_lo = thresholds.full_s_scan ? 1 : n - 1;
  bool resonant = false;
  for (int s = s_lo; s <= n - 1; ++s) {
    const TruncationSetPtr block_set = build_truncation(s, schedule);
    for (const auto& j : shifts->indices()) {
      if (j.is_zero()) continue;
      const Vec2 shifted = k + dual_vector(j, spec.freq);
      const Eigen::MatrixXcd B = naive_assemble(spec, shifted, *block_set);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
          B, Eigen::EigenvaluesOnly);
      const double dist =
          (es.eigenvalues().array() - lambda_ref).abs().minCoeff();
      if (dist < thr) resonant = true;  // no early exit: scan everything
    }
  }
  return resonant;
}

std::optional<double> branch_lambda(const PotentialSpec& spec, const Vec2& k,
                                    int level, const GrowthSchedule& schedule,
                                    const SelectionFloors& floors) {
  auto chain = multiscale_pairs(spec, k, level, schedule, floors);
  if (std::holds_alternative<ResonantAtLevel>(chain)) return std::nullopt;
  return std::get<std::vector<SpectralPair>>(chain).back().lambda;
}

std::optional<Vec2> fd_gradient(const PotentialSpec& spec, const Vec2& k,
                                int level, const GrowthSchedule& schedule,
                                double h, const SelectionFloors& floors) {
  Vec2 g;
  for (int axis = 0; axis < 2; ++axis) {
    Vec2 e(0, 0);
    e(axis) = h;
    const auto fp = branch_lambda(spec, k + e, level, schedule, floors);
    const auto fm = branch_lambda(spec, k - e, level, schedule, floors);
    if (!fp || !fm) return std::nullopt;
    g(axis) = (*fp - *fm) / (2.0 * h);
  }
  return g;
}

std::optional<double> dense_root_scan(const PotentialSpec& spec, double lambda,
                                      double phi, int level,
                                      const GrowthSchedule& schedule,
                                      double lo, double hi, int n_steps,
                                      double tol) {
  const Vec2 nu(std::cos(phi), std::sin(phi));
  const SelectionFloors floors;
  auto F = [&](double kappa) -> std::optional<double> {
    const auto lam = branch_lambda(spec, Vec2(kappa * nu), level, schedule, floors);
    if (!lam) return std::nullopt;
    return *lam - lambda;
  };
  double a = lo, b = lo;
  std::optional<double> Fa = F(lo);
  if (!Fa) return std::nullopt;
  bool bracketed = false;
  for (int i = 1; i <= n_steps; ++i) {
    b = lo + (hi - lo) * i / n_steps;
    const auto Fb = F(b);
    if (!Fb) return std::nullopt;
    if (*Fa == 0.0) return a;
    if (*Fa * *Fb <= 0) {
      bracketed = true;
      break;
    }
    a = b;
    Fa = Fb;
  }
  if (!bracketed) return std::nullopt;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    const auto Fm = F(mid);
    if (!Fm) return std::nullopt;
    if (std::abs(*Fm) <= tol) return mid;
    if (*Fa * *Fm <= 0)
      b = mid;
    else {
      a = mid;
      Fa = Fm;
    }
  }
  return 0.5 * (a + b);
}

std::complex<double> evaluate_ld(const PotentialSpec& spec, const Vec2& x,
                                 PhaseConvention conv) {
  const long double c = conv == PhaseConvention::Literal
                            ? 6.283185307179586476925286766559L
                            : 1.0L;
  const long double alpha = static_cast<long double>(spec.freq.value());
  long double re = 0, im = 0;
  for (const auto& [key, v] : spec.coeffs) {
    const long double bx = key[0] + alpha * key[2];
    const long double by = key[1] + alpha * key[3];
    const long double arg = c * (bx * static_cast<long double>(x.x()) +
                                 by * static_cast<long double>(x.y()));
    const long double cr = std::cos(arg), ci = std::sin(arg);
    re += static_cast<long double>(v.real()) * cr -
          static_cast<long double>(v.imag()) * ci;
    im += static_cast<long double>(v.real()) * ci +
          static_cast<long double>(v.imag()) * cr;
  }
  re *= static_cast<long double>(spec.coupling);
  im *= static_cast<long double>(spec.coupling);
  return {static_cast<double>(re), static_cast<double>(im)};
}

std::vector<Arc> level1_resonant_arcs(const PotentialSpec& spec, double lambda,
                                      double kappa, double delta,
                                      const GrowthSchedule& schedule) {
  std::vector<Arc> arcs;
  auto push = [&](double begin, double end) {
    // fold into [0, 2pi), splitting at the seam
    begin = std::fmod(begin, kTwoPi);
    end = std::fmod(end, kTwoPi);
    if (begin < 0) begin += kTwoPi;
    if (end < 0) end += kTwoPi;
    if (end >= begin)
      arcs.push_back({begin, end});
    else {
      arcs.push_back({begin, kTwoPi});
      arcs.push_back({0.0, end});
    }
  };
  const TruncationSetPtr shifts = build_truncation_uncapped(1, schedule);
  for (const auto& j : shifts->indices()) {
    if (j.is_zero()) continue;
    const Vec2 b = dual_vector(j, spec.freq);
    const double bn = b.norm();
    if (bn < 1e-15) continue;
    const double beta = std::atan2(b.y(), b.x());
    // |kappa nu + b|^{2l} in (lambda - delta, lambda + delta)
    //   <=> cos(phi - beta) in (c_lo, c_hi)
    const double lo_sq =
        lambda - delta > 0 ? std::pow(lambda - delta, 1.0 / spec.l) : 0.0;
    const double hi_sq = std::pow(lambda + delta, 1.0 / spec.l);
    double c_lo = (lo_sq - kappa * kappa - bn * bn) / (2.0 * kappa * bn);
    double c_hi = (hi_sq - kappa * kappa - bn * bn) / (2.0 * kappa * bn);
    c_lo = std::max(c_lo, -1.0);
    c_hi = std::min(c_hi, 1.0);
    if (c_hi <= c_lo) continue;
    const double t_lo = std::acos(c_hi);  // acos is decreasing
    const double t_hi = std::acos(c_lo);
    push(beta + t_lo, beta + t_hi);
    push(beta - t_hi, beta - t_lo);
  }
  return arcs;
}

}  // namespace polyqp::oracle
