#include "polyqp/lattice.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace polyqp {

std::ostream& operator<<(std::ostream& os, const LatticeIndex& idx) {
  return os << "((" << idx.p.x() << "," << idx.p.y() << "),(" << idx.m.x()
            << "," << idx.m.y() << "))";
}

namespace {

bool squarefree(int d) {
  for (int q = 2; q * q <= d; ++q)
    if (d % (q * q) == 0) return false;
  return true;
}

bool perfect_square(int d) {
  int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(d))));
  return s * s == d;
}

}  // namespace

Frequency Frequency::quadratic(double a, double b, int d, double mu_assumed) {
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("frequency: a, b must be finite");
  if (b == 0.0)
    throw std::invalid_argument("frequency: b = 0 makes alpha rational");
  if (d < 2 || perfect_square(d) || !squarefree(d))
    throw std::invalid_argument("frequency: d must be a squarefree integer >= 2");
  if (mu_assumed < 2.0)
    throw std::invalid_argument("frequency: irrationality measure >= 2");
  Frequency f;
  f.kind_ = FrequencyKind::QuadraticIrrational;
  f.a_ = a;
  f.b_ = b;
  f.d_ = d;
  f.value_ = a + b * std::sqrt(static_cast<double>(d));
  f.mu_assumed_ = mu_assumed;
  if (!std::isfinite(f.value_))
    throw std::invalid_argument("frequency: alpha not finite");
  return f;
}

Frequency Frequency::decimal(double value, double mu_assumed) {
  if (!std::isfinite(value))
    throw std::invalid_argument("frequency: alpha must be finite");
  if (mu_assumed < 2.0)
    throw std::invalid_argument("frequency: irrationality measure >= 2");
  Frequency f;
  f.kind_ = FrequencyKind::Decimal;
  f.value_ = value;
  f.a_ = value;
  f.b_ = 0;
  f.d_ = 0;
  f.mu_assumed_ = mu_assumed;
  return f;
}

int GrowthSchedule::box_p(int level) const {
  long long R = R1;
  for (int i = 1; i < level; ++i) R *= factor;
  if (R_cap > 0 && R > R_cap) R = R_cap;
  if (R > 1'000'000) R = 1'000'000;
  return static_cast<int>(R);
}

int GrowthSchedule::box_m(int level) const {
  long long r = r1;
  for (int i = 1; i < level; ++i) r *= factor;
  if (r_cap > 0 && r > r_cap) r = r_cap;
  if (r > 1'000'000) r = 1'000'000;
  return static_cast<int>(r);
}

TruncationSet::TruncationSet(int level, int box_p, int box_m)
    : level_(level), R_(box_p), r_(box_m) {
  if (level < 1) throw std::invalid_argument("truncation: level >= 1");
  if (R_ < 0 || r_ < 0) throw std::invalid_argument("truncation: negative box");
  const std::size_t np = 2 * static_cast<std::size_t>(R_) + 1;
  const std::size_t nm = 2 * static_cast<std::size_t>(r_) + 1;
  indices_.reserve(np * np * nm * nm);
  for (int m1 = -r_; m1 <= r_; ++m1)
    for (int m2 = -r_; m2 <= r_; ++m2)
      for (int p1 = -R_; p1 <= R_; ++p1)
        for (int p2 = -R_; p2 <= R_; ++p2)
          indices_.push_back({IVec2(p1, p2), IVec2(m1, m2)});
  zero_pos_ = static_cast<std::size_t>(position({IVec2(0, 0), IVec2(0, 0)}));
}

bool TruncationSet::contains(const LatticeIndex& idx) const {
  return std::abs(idx.p.x()) <= R_ && std::abs(idx.p.y()) <= R_ &&
         std::abs(idx.m.x()) <= r_ && std::abs(idx.m.y()) <= r_;
}

std::ptrdiff_t TruncationSet::position(const LatticeIndex& idx) const {
  if (!contains(idx)) return -1;
  const std::ptrdiff_t np = 2 * R_ + 1;
  const std::ptrdiff_t nm = 2 * r_ + 1;
  std::ptrdiff_t pos = (idx.m.x() + r_) * nm + (idx.m.y() + r_);
  pos = pos * np + (idx.p.x() + R_);
  pos = pos * np + (idx.p.y() + R_);
  return pos;
}

void TruncationSet::write_csv(std::ostream& os) const {
  os << "p1,p2,m1,m2\n";
  for (const auto& idx : indices_)
    os << idx.p.x() << ',' << idx.p.y() << ',' << idx.m.x() << ',' << idx.m.y()
       << '\n';
}

TruncationSetPtr build_truncation(int level, const GrowthSchedule& schedule) {
  if (level < 1) throw std::invalid_argument("build_truncation: level >= 1");
  if (schedule.R1 < 1 || schedule.r1 < 0)
    throw std::invalid_argument("build_truncation: R1 >= 1, r1 >= 0");
  if (schedule.factor < 2)
    throw std::invalid_argument("build_truncation: factor >= 2");
  const long long R = schedule.box_p(level);
  const long long r = schedule.box_m(level);
  const unsigned long long card =
      static_cast<unsigned long long>(2 * R + 1) * (2 * R + 1) * (2 * r + 1) *
      (2 * r + 1);
  if (schedule.size_cap > 0 && card > schedule.size_cap)
    throw CapExceeded("truncation set of " + std::to_string(card) +
                      " indices exceeds the matrix-size cap " +
                      std::to_string(schedule.size_cap));
  return std::make_shared<TruncationSet>(level, static_cast<int>(R),
                                         static_cast<int>(r));
}

TruncationSetPtr build_truncation_uncapped(int level, const GrowthSchedule& schedule) {
  GrowthSchedule s = schedule;
  s.size_cap = std::numeric_limits<std::size_t>::max();
  return build_truncation(level, s);
}

std::pair<double, LatticeIndex> min_shift_norm(const TruncationSet& set,
                                               const Frequency& freq) {
  double best = std::numeric_limits<double>::infinity();
  LatticeIndex arg;
  for (const auto& idx : set.indices()) {
    if (idx.is_zero()) continue;
    const double n = dual_vector(idx, freq).norm();
    if (n < best) {
      best = n;
      arg = idx;
    }
  }
  return {best, arg};
}

std::vector<DiophantineRow> diophantine_report(const Frequency& freq, int max_box) {
  std::vector<DiophantineRow> rows;
  for (int box = 1; box <= max_box; ++box) {
    TruncationSet set(1, box, box);
    auto [v, idx] = min_shift_norm(set, freq);
    rows.push_back({box, v, idx});
  }
  return rows;
}

void write_diophantine_csv(const std::vector<DiophantineRow>& rows, std::ostream& os) {
  os << "box,min_norm,p1,p2,m1,m2\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g", r.min_norm);
    os << r.box << ',' << buf << ',' << r.argmin.p.x() << ',' << r.argmin.p.y()
       << ',' << r.argmin.m.x() << ',' << r.argmin.m.y() << '\n';
  }
}

}  // namespace polyqp
