#include "polyqp/spectral.hpp"

#include <lapacke.h>

#include <cmath>
#include <cstdio>
#include <mutex>

extern "C" void openblas_set_num_threads(int);

namespace polyqp {

namespace {

// Outer parallelism lives in our OpenMP loops; BLAS stays serial so results
// do not depend on the thread knob.
void pin_blas_once() {
  static std::once_flag flag;
  std::call_once(flag, [] { openblas_set_num_threads(1); });
}

void phase_fix(Eigen::VectorXcd& v, std::size_t zero_pos) {
  Complex c = v(static_cast<Eigen::Index>(zero_pos));
  if (std::abs(c) < 1e-14 * v.cwiseAbs().maxCoeff()) {
    Eigen::Index arg = 0;
    double best = -1;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (std::abs(v(i)) > best) {
        best = std::abs(v(i));
        arg = i;
      }
    c = v(arg);
  }
  const double a = std::abs(c);
  if (a > 0) v *= std::conj(c) / a;
}

double nearest_gap_at(const Eigen::VectorXd& values, Eigen::Index sel) {
  double gap = std::numeric_limits<double>::infinity();
  if (sel > 0) gap = std::min(gap, values(sel) - values(sel - 1));
  if (sel + 1 < values.size()) gap = std::min(gap, values(sel + 1) - values(sel));
  return gap;
}

PairOrResonant select_pair(const Eigensystem& es, const Eigen::VectorXcd& ref,
                           const TruncationSetPtr& set,
                           const SelectionFloors& floors) {
  const int level = set->level();
  const std::size_t zero_pos = set->zero_position();
  const Eigen::Index n = es.values.size();
  Eigen::VectorXcd overlaps = es.vectors.adjoint() * ref;
  Eigen::Index sel = 0;
  double best = -1;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = std::norm(overlaps(i));
    if (w > best) {
      best = w;
      sel = i;
    }
  }
  const double lambda = es.values(sel);
  const double gap = nearest_gap_at(es.values, sel);
  const double gap_floor = floors.gap_floor_scale * (1.0 + std::abs(lambda));
  if (best < floors.overlap_floor || gap < gap_floor)
    return Resonant{level, best, gap};

  SpectralPair pair;
  pair.level = level;
  pair.lambda = lambda;
  pair.coeffs = es.vectors.col(sel);
  phase_fix(pair.coeffs, zero_pos);
  pair.overlap_prev = best;
  pair.l1_increment = (pair.coeffs - ref).lpNorm<1>();
  pair.nearest_gap = gap;
  pair.set = set;
  return pair;
}

}  // namespace

Eigensystem eig_all(const Eigen::MatrixXcd& H) {
  pin_blas_once();
  const auto n = H.rows();
  if (n != H.cols()) throw std::invalid_argument("eig_all: square matrix");
  Eigensystem es;
  es.vectors = H;
  es.values.resize(n);
  const int info = LAPACKE_zheevd(
      LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n),
      reinterpret_cast<lapack_complex_double*>(es.vectors.data()),
      static_cast<lapack_int>(n), es.values.data());
  if (info != 0)
    throw SolverError("zheevd failed with info " + std::to_string(info));
  if (!es.values.allFinite())
    throw SolverError("zheevd produced non-finite eigenvalues");
  return es;
}

Eigensystem eig_all(const HamiltonianMatrix& H) { return eig_all(H.entries); }

Eigen::VectorXd eig_values(const Eigen::MatrixXcd& H) {
  pin_blas_once();
  const auto n = H.rows();
  Eigen::MatrixXcd work = H;
  Eigen::VectorXd values(n);
  const int info = LAPACKE_zheevd(
      LAPACK_COL_MAJOR, 'N', 'L', static_cast<lapack_int>(n),
      reinterpret_cast<lapack_complex_double*>(work.data()),
      static_cast<lapack_int>(n), values.data());
  if (info != 0)
    throw SolverError("zheevd failed with info " + std::to_string(info));
  if (!values.allFinite())
    throw SolverError("zheevd produced non-finite eigenvalues");
  return values;
}

PairOrResonant initial_pair(const PotentialSpec& spec, const Vec2& k,
                            const TruncationSetPtr& set1,
                            const SelectionFloors& floors) {
  const HamiltonianMatrix H = assemble(spec, k, set1);
  const Eigensystem es = eig_all(H);
  Eigen::VectorXcd u0 = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(set1->size()));
  u0(static_cast<Eigen::Index>(set1->zero_position())) = 1.0;
  return select_pair(es, u0, set1, floors);
}

PairOrResonant continue_pair(const PotentialSpec& spec, const Vec2& k,
                             const SpectralPair& prev,
                             const TruncationSetPtr& set_n,
                             const SelectionFloors& floors) {
  if (!prev.set) throw std::invalid_argument("continue_pair: previous pair has no set");
  if (set_n->level() != prev.level + 1)
    throw std::invalid_argument("continue_pair: level must be prev.level + 1");
  Eigen::VectorXcd ext = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(set_n->size()));
  for (std::size_t i = 0; i < prev.set->size(); ++i) {
    const std::ptrdiff_t j = set_n->position((*prev.set)[i]);
    if (j < 0)
      throw std::invalid_argument("continue_pair: sets are not nested");
    ext(static_cast<Eigen::Index>(j)) = prev.coeffs(static_cast<Eigen::Index>(i));
  }
  const HamiltonianMatrix H = assemble(spec, k, set_n);
  const Eigensystem es = eig_all(H);
  return select_pair(es, ext, set_n, floors);
}

Vec2 gradient(const PotentialSpec& spec, const Vec2& k,
              const SpectralPair& pair, const SelectionFloors& floors) {
  const double gap_floor = floors.gap_floor_scale * (1.0 + std::abs(pair.lambda));
  if (pair.nearest_gap < gap_floor)
    throw std::invalid_argument("gradient: pair is near-degenerate");
  Vec2 g(0, 0);
  const auto& set = *pair.set;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const Vec2 kb = k + dual_vector(set[i], spec.freq);
    const double q = kb.squaredNorm();
    double qpow = 1.0;  // q^{l-1}
    for (int j = 1; j < spec.l; ++j) qpow *= q;
    g += (2.0 * spec.l * qpow * std::norm(pair.coeffs(static_cast<Eigen::Index>(i)))) * kb;
  }
  return g;
}

Eigen::VectorXcd residual_vector(const PotentialSpec& spec, const Vec2& k,
                                 const SpectralPair& pair,
                                 const TruncationSet& target) {
  const auto& src = *pair.set;
  auto u_at = [&](const LatticeIndex& idx) -> Complex {
    const std::ptrdiff_t i = src.position(idx);
    return i < 0 ? Complex(0, 0) : pair.coeffs(static_cast<Eigen::Index>(i));
  };
  Eigen::VectorXcd out(static_cast<Eigen::Index>(target.size()));
  for (std::size_t i = 0; i < target.size(); ++i) {
    const LatticeIndex& idx = target[i];
    const double d = pow2l((k + dual_vector(idx, spec.freq)).squaredNorm(), spec.l);
    Complex acc = (d - pair.lambda) * u_at(idx);
    for (const auto& [key, value] : spec.coeffs) {
      const LatticeIndex s{key_s1(key), key_s2(key)};
      acc += spec.coupling * value * u_at(idx - s);
    }
    out(static_cast<Eigen::Index>(i)) = acc;
  }
  return out;
}

std::variant<std::vector<SpectralPair>, ResonantAtLevel> multiscale_pairs(
    const PotentialSpec& spec, const Vec2& k, int N,
    const GrowthSchedule& schedule, const SelectionFloors& floors) {
  if (N < 1) throw std::invalid_argument("multiscale: N >= 1");
  std::vector<SpectralPair> pairs;
  for (int n = 1; n <= N; ++n) {
    const TruncationSetPtr set = build_truncation(n, schedule);
    PairOrResonant r = (n == 1) ? initial_pair(spec, k, set, floors)
                                : continue_pair(spec, k, pairs.back(), set, floors);
    if (std::holds_alternative<Resonant>(r))
      return ResonantAtLevel{std::get<Resonant>(r)};
    pairs.push_back(std::move(std::get<SpectralPair>(r)));
  }
  return pairs;
}

ReportOrResonant run_multiscale(const PotentialSpec& spec, const Vec2& k, int N,
                                const GrowthSchedule& schedule,
                                const SelectionFloors& floors) {
  auto chain = multiscale_pairs(spec, k, N, schedule, floors);
  if (std::holds_alternative<ResonantAtLevel>(chain))
    return std::get<ResonantAtLevel>(chain);
  const auto& pairs = std::get<std::vector<SpectralPair>>(chain);

  ConvergenceReport rep;
  rep.k = k;
  const double lambda0 = pow2l(k.squaredNorm(), spec.l);
  for (int n = 1; n <= N; ++n) {
    const SpectralPair& pair = pairs[static_cast<std::size_t>(n - 1)];
    ConvergenceRow row;
    row.n = n;
    row.lambda = pair.lambda;
    row.diff = std::abs(pair.lambda - (n == 1 ? lambda0 : pairs[n - 2].lambda));
    row.l1_increment = pair.l1_increment;
    const TruncationSetPtr next = build_truncation_uncapped(n + 1, schedule);
    row.residual_next = residual_vector(spec, k, pair, *next).norm();
    row.grad = gradient(spec, k, pair, floors);
    rep.rows.push_back(row);
  }

  // diagnostic decay slope of log diff vs n
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (const auto& row : rep.rows) {
    if (row.diff <= 0) continue;
    const double x = row.n, y = std::log(row.diff);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++cnt;
  }
  rep.fitted_decay =
      cnt >= 2 ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : 0.0;
  return rep;
}

void write_convergence_csv(const ConvergenceReport& rep, std::ostream& os) {
  os << "n,lambda,diff,l1_increment,residual_next,grad_x,grad_y\n";
  char buf[256];
  for (const auto& r : rep.rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g",
                  r.n, r.lambda, r.diff, r.l1_increment, r.residual_next,
                  r.grad.x(), r.grad.y());
    os << buf << '\n';
  }
}

}  // namespace polyqp
