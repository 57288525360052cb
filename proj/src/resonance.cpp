#include "polyqp/resonance.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace polyqp {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Number of eigenvalues of the Hermitian matrix H below x, by Sylvester
// inertia of the Bunch-Kaufman factorization of H - x. An exactly singular
// shift (x equal to an eigenvalue to the last bit) reports -1.
std::ptrdiff_t count_below(const Eigen::MatrixXcd& H, double x) {
  const lapack_int n = static_cast<lapack_int>(H.rows());
  Eigen::MatrixXcd A = H;
  A.diagonal().array() -= x;
  std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_zhetrf(
      LAPACK_COL_MAJOR, 'L', n,
      reinterpret_cast<lapack_complex_double*>(A.data()), n, ipiv.data());
  if (info < 0) throw SolverError("zhetrf: bad argument");
  if (info > 0) return -1;  // exact zero pivot: x is an eigenvalue
  std::ptrdiff_t neg = 0;
  for (lapack_int i = 0; i < n; ++i) {
    if (ipiv[static_cast<std::size_t>(i)] > 0) {
      if (A(i, i).real() < 0) ++neg;
    } else {
      // 2x2 block: eigenvalue signs from det and trace
      const double a = A(i, i).real();
      const double c = A(i + 1, i + 1).real();
      const double det = a * c - std::norm(A(i + 1, i));
      if (det < 0)
        ++neg;  // one of each sign
      else if (a + c < 0)
        neg += 2;
      ++i;
    }
  }
  return neg;
}

// Does the block at shifted_k have an eigenvalue within threshold of
// lambda_ref? Returns the distance when it does (via a dense eigensolve,
// rare), and a value >= threshold when it does not.
double block_distance(const PotentialSpec& spec, const Vec2& shifted_k,
                      double lambda_ref, const TruncationSetPtr& block_set,
                      double offdiag_bound, double threshold) {
  // Gershgorin prefilter: every eigenvalue lies within offdiag_bound of some
  // diagonal entry, so a diagonal farther than threshold + offdiag_bound from
  // lambda_ref cannot produce a violation.
  double min_diag_dist = std::numeric_limits<double>::infinity();
  for (const auto& idx : block_set->indices()) {
    const double d =
        pow2l((shifted_k + dual_vector(idx, spec.freq)).squaredNorm(), spec.l);
    min_diag_dist = std::min(min_diag_dist, std::abs(lambda_ref - d));
  }
  if (min_diag_dist >= threshold + offdiag_bound)
    return min_diag_dist - offdiag_bound;  // certified lower bound on the distance

  const HamiltonianMatrix B = assemble(spec, shifted_k, block_set);
  // Inertia count in (lambda_ref - threshold, lambda_ref + threshold): two
  // LDL^T factorizations instead of a full eigensolve.
  const std::ptrdiff_t lo = count_below(B.entries, lambda_ref - threshold);
  const std::ptrdiff_t hi = count_below(B.entries, lambda_ref + threshold);
  if (lo >= 0 && hi >= 0 && lo == hi) return threshold;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(B.entries,
                                                     Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw SolverError("block eigensolve failed");
  return (es.eigenvalues().array() - lambda_ref).abs().minCoeff();
}

}  // namespace

double ResonanceThresholds::delta_n(double lambda, int n, int l) const {
  const double scale = std::pow(std::abs(lambda), 1.0 - 1.0 / (2.0 * l));
  double d = delta1_coeff * scale;
  for (int i = 1; i < n; ++i) d *= rho;
  return d + eps0;
}

ResonanceVerdict is_resonant(const PotentialSpec& spec, const Vec2& k,
                             double lambda_ref, int n,
                             const GrowthSchedule& schedule,
                             const ResonanceThresholds& thresholds) {
  if (!std::isfinite(lambda_ref))
    throw std::invalid_argument("is_resonant: lambda_ref must be finite");
  const double thr = thresholds.delta_n(lambda_ref, n, spec.l);
  const TruncationSetPtr shifts = build_truncation_uncapped(std::max(n, 1), schedule);

  if (n <= 1) {
    for (const auto& j : shifts->indices()) {
      if (j.is_zero()) continue;
      const double d =
          pow2l((k + dual_vector(j, spec.freq)).squaredNorm(), spec.l);
      const double dist = std::abs(lambda_ref - d);
      if (dist < thr)
        return {true, ResonanceWitness{j, 0, dist, thr}};
    }
    return {false, std::nullopt};
  }

  const double offdiag_bound = coeff_abs_sum(spec);
  const int s_lo = thresholds.full_s_scan ? 1 : n - 1;
  for (int s = s_lo; s <= n - 1; ++s) {
    const TruncationSetPtr block_set = build_truncation(s, schedule);
    for (const auto& j : shifts->indices()) {
      if (j.is_zero()) continue;
      const Vec2 shifted = k + dual_vector(j, spec.freq);
      const double dist = block_distance(spec, shifted, lambda_ref, block_set,
                                         offdiag_bound, thr);
      if (dist < thr)
        return {true, ResonanceWitness{j, s, dist, thr}};
    }
  }
  return {false, std::nullopt};
}

AngleSet AngleSet::full_circle(int level, double lambda) {
  AngleSet s;
  s.level_ = level;
  s.lambda_ = lambda;
  s.arcs_ = {Arc{0.0, kTwoPi}};
  return s;
}

AngleSet AngleSet::from_arcs(int level, double lambda, std::vector<Arc> arcs) {
  AngleSet s;
  s.level_ = level;
  s.lambda_ = lambda;
  s.arcs_ = std::move(arcs);
  s.normalize();
  return s;
}

void AngleSet::normalize() {
  std::sort(arcs_.begin(), arcs_.end(),
            [](const Arc& a, const Arc& b) { return a.begin < b.begin; });
  std::vector<Arc> merged;
  for (const Arc& a : arcs_) {
    if (a.end <= a.begin) continue;
    if (a.begin < 0 || a.end > kTwoPi)
      throw std::invalid_argument("angle set: arcs must lie within [0, 2pi)");
    if (!merged.empty() && a.begin <= merged.back().end)
      merged.back().end = std::max(merged.back().end, a.end);
    else
      merged.push_back(a);
  }
  arcs_ = std::move(merged);
}

double AngleSet::total_length() const {
  double s = 0;
  for (const Arc& a : arcs_) s += a.length();
  return s;
}

bool AngleSet::contains(double phi) const {
  auto it = std::upper_bound(
      arcs_.begin(), arcs_.end(), phi,
      [](double v, const Arc& a) { return v < a.begin; });
  if (it == arcs_.begin()) return false;
  --it;
  return phi >= it->begin && phi < it->end;
}

void AngleSet::subtract(double a, double b) {
  if (b <= a) return;
  // wraparound: split at 2pi
  if (a < 0) {
    subtract(a + kTwoPi, kTwoPi);
    a = 0;
  }
  if (b > kTwoPi) {
    subtract(0, b - kTwoPi);
    b = kTwoPi;
  }
  std::vector<Arc> out;
  out.reserve(arcs_.size() + 1);
  for (const Arc& arc : arcs_) {
    if (arc.end <= a || arc.begin >= b) {
      out.push_back(arc);
      continue;
    }
    if (arc.begin < a) out.push_back({arc.begin, a});
    if (arc.end > b) out.push_back({b, arc.end});
  }
  arcs_ = std::move(out);
}

AngleSet AngleSet::intersect(const AngleSet& other) const {
  std::vector<Arc> out;
  std::size_t i = 0, j = 0;
  while (i < arcs_.size() && j < other.arcs_.size()) {
    const Arc& a = arcs_[i];
    const Arc& b = other.arcs_[j];
    const double lo = std::max(a.begin, b.begin);
    const double hi = std::min(a.end, b.end);
    if (hi > lo) out.push_back({lo, hi});
    if (a.end < b.end)
      ++i;
    else
      ++j;
  }
  return AngleSet::from_arcs(level_, lambda_, std::move(out));
}

std::vector<Arc> AngleSet::holes() const {
  std::vector<Arc> out;
  double cursor = 0;
  for (const Arc& a : arcs_) {
    if (a.begin > cursor) out.push_back({cursor, a.begin});
    cursor = a.end;
  }
  if (cursor < kTwoPi) out.push_back({cursor, kTwoPi});
  return out;
}

void AngleSet::write_csv(std::ostream& os) const {
  os << "arc_start,arc_end\n";
  char buf[80];
  for (const Arc& a : arcs_) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", a.begin, a.end);
    os << buf << '\n';
  }
}

HoleStatistics hole_statistics(const AngleSet& set) {
  HoleStatistics st;
  for (const Arc& h : set.holes()) {
    st.lengths.push_back(h.length());
    st.total_removed += h.length();
  }
  std::sort(st.lengths.begin(), st.lengths.end(), std::greater<double>());
  st.count = st.lengths.size();
  return st;
}

std::vector<std::uint8_t> resonance_scan(
    const PotentialSpec& spec, double lambda, int n,
    const RadiusFunction& kappa_prev, int phi_resolution,
    const GrowthSchedule& schedule, const ResonanceThresholds& thresholds,
    const AngleSet& prev, ExecutionPolicy policy) {
  std::vector<std::uint8_t> marked(static_cast<std::size_t>(phi_resolution), 0);
  const double h = kTwoPi / phi_resolution;
  auto probe = [&](std::ptrdiff_t i) {
    const double phi = i * h;
    if (!prev.contains(phi)) return;  // already excluded; nothing to mark
    const std::optional<double> kappa = kappa_prev(phi);
    if (!kappa) {
      marked[static_cast<std::size_t>(i)] = 1;  // no continued root: resonant direction
      return;
    }
    const Vec2 k(*kappa * std::cos(phi), *kappa * std::sin(phi));
    if (is_resonant(spec, k, lambda, n, schedule, thresholds).resonant)
      marked[static_cast<std::size_t>(i)] = 1;
  };
  if (policy == ExecutionPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < phi_resolution; ++i) probe(i);
  } else {
    for (std::ptrdiff_t i = 0; i < phi_resolution; ++i) probe(i);
  }
  return marked;
}

AngleSet carve_cheese(const PotentialSpec& spec, double lambda, int n,
                      const RadiusFunction& kappa_prev, int phi_resolution,
                      const GrowthSchedule& schedule,
                      const ResonanceThresholds& thresholds,
                      const AngleSet& prev, ExecutionPolicy policy) {
  if (phi_resolution < 1024)
    throw std::invalid_argument("carve_cheese: grid resolution >= 2^10");
  const auto marked = resonance_scan(spec, lambda, n, kappa_prev,
                                     phi_resolution, schedule, thresholds,
                                     prev, policy);
  AngleSet set = AngleSet::full_circle(n, lambda);
  const double h = kTwoPi / phi_resolution;
  // merge consecutive marks into one hole with half-step padding
  std::ptrdiff_t i = 0;
  while (i < phi_resolution) {
    if (!marked[static_cast<std::size_t>(i)]) {
      ++i;
      continue;
    }
    std::ptrdiff_t j = i;
    while (j + 1 < phi_resolution && marked[static_cast<std::size_t>(j + 1)]) ++j;
    set.subtract(i * h - 0.5 * h, j * h + 0.5 * h);
    i = j + 1;
  }
  return set.intersect(prev);
}

FractionEstimate nonresonant_fraction(const PotentialSpec& spec, double R,
                                      int n, std::size_t samples,
                                      std::uint64_t seed,
                                      const GrowthSchedule& schedule,
                                      const ResonanceThresholds& thresholds,
                                      bool annulus, ExecutionPolicy policy) {
  if (R <= 0) throw std::invalid_argument("nonresonant_fraction: R > 0");
  if (samples < 1000)
    throw std::invalid_argument("nonresonant_fraction: samples >= 10^3");
  std::vector<std::uint8_t> good(samples, 0);
  SelectionFloors floors;
  auto probe = [&](std::size_t i) {
    const double u1 = uniform01(seed, 2 * i);
    const double u2 = uniform01(seed, 2 * i + 1);
    const double r = annulus ? (0.5 * R) * std::sqrt(1.0 + 3.0 * u1)
                             : R * std::sqrt(u1);
    const double phi = kTwoPi * u2;
    const Vec2 k(r * std::cos(phi), r * std::sin(phi));
    double lambda_ref = pow2l(k.squaredNorm(), spec.l);
    if (n >= 2) {
      auto chain = multiscale_pairs(spec, k, n - 1, schedule, floors);
      if (std::holds_alternative<ResonantAtLevel>(chain)) return;  // resonant
      lambda_ref = std::get<std::vector<SpectralPair>>(chain).back().lambda;
    }
    if (!is_resonant(spec, k, lambda_ref, n, schedule, thresholds).resonant)
      good[i] = 1;
  };
  if (policy == ExecutionPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(samples); ++i)
      probe(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < samples; ++i) probe(i);
  }
  std::size_t hits = 0;
  for (auto g : good) hits += g;
  FractionEstimate est;
  est.samples = samples;
  est.fraction = static_cast<double>(hits) / static_cast<double>(samples);
  const double se =
      std::sqrt(est.fraction * (1.0 - est.fraction) / static_cast<double>(samples));
  est.ci_low = std::max(0.0, est.fraction - 1.959963984540054 * se);
  est.ci_high = std::min(1.0, est.fraction + 1.959963984540054 * se);
  return est;
}

void write_fraction_csv(const std::vector<std::pair<double, FractionEstimate>>& rows,
                        std::ostream& os) {
  os << "R,fraction,ci_low,ci_high,samples\n";
  char buf[160];
  for (const auto& [R, est] : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%zu", R,
                  est.fraction, est.ci_low, est.ci_high, est.samples);
    os << buf << '\n';
  }
}

}  // namespace polyqp
