#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "polyqp/types.hpp"

namespace polyqp {

// Index (p, m) of the exponential e^{i<p + alpha m, .>} relative to the
// carrier plane wave.
struct LatticeIndex {
  IVec2 p{0, 0};
  IVec2 m{0, 0};

  bool operator==(const LatticeIndex& o) const {
    return p == o.p && m == o.m;
  }
  bool is_zero() const { return p.isZero() && m.isZero(); }

  LatticeIndex operator+(const LatticeIndex& o) const {
    return {p + o.p, m + o.m};
  }
  LatticeIndex operator-(const LatticeIndex& o) const {
    return {p - o.p, m - o.m};
  }
};

std::ostream& operator<<(std::ostream& os, const LatticeIndex& idx);

struct LatticeIndexHash {
  std::size_t operator()(const LatticeIndex& i) const {
    std::uint64_t h = 0;
    for (int v : {i.p.x(), i.p.y(), i.m.x(), i.m.y()})
      h = splitmix64(h ^ static_cast<std::uint32_t>(v));
    return static_cast<std::size_t>(h);
  }
};

enum class FrequencyKind { QuadraticIrrational, Decimal };

// The frequency ratio alpha. Quadratic irrationals a + b sqrt(d) are kept in
// exact form so small-denominator diagnostics are not polluted by decimal
// truncation; a plain decimal literal is allowed but flagged.
class Frequency {
 public:
  static Frequency quadratic(double a, double b, int d, double mu_assumed = 2.0);
  static Frequency decimal(double value, double mu_assumed = 2.0);

  double value() const { return value_; }
  FrequencyKind kind() const { return kind_; }
  double mu_assumed() const { return mu_assumed_; }
  double quad_a() const { return a_; }
  double quad_b() const { return b_; }
  int quad_d() const { return d_; }

 private:
  Frequency() = default;
  FrequencyKind kind_ = FrequencyKind::QuadraticIrrational;
  double a_ = 0, b_ = 1;
  int d_ = 2;
  double value_ = 0;
  double mu_assumed_ = 2.0;
};

// b(idx) = p + alpha m.
inline Vec2 dual_vector(const LatticeIndex& idx, const Frequency& freq) {
  double alpha = freq.value();
  return Vec2(idx.p.x() + alpha * idx.m.x(), idx.p.y() + alpha * idx.m.y());
}

struct GrowthSchedule {
  int R1 = 1;
  int r1 = 1;
  int factor = 2;
  int R_cap = 0;  // 0 means uncapped
  int r_cap = 0;
  std::size_t size_cap = 2500;

  int box_p(int level) const;
  int box_m(int level) const;
};

// Finite index set M_n: the full sup-norm box |p|<=R, |m|<=r, listed in
// lexicographic order on (m, p). Immutable after construction.
class TruncationSet {
 public:
  TruncationSet(int level, int box_p, int box_m);

  int level() const { return level_; }
  int box_p() const { return R_; }
  int box_m() const { return r_; }
  std::size_t size() const { return indices_.size(); }
  const LatticeIndex& operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<LatticeIndex>& indices() const { return indices_; }

  bool contains(const LatticeIndex& idx) const;
  // Position in the canonical order, -1 if outside the box.
  std::ptrdiff_t position(const LatticeIndex& idx) const;
  std::size_t zero_position() const { return zero_pos_; }

  void write_csv(std::ostream& os) const;

 private:
  int level_;
  int R_, r_;
  std::vector<LatticeIndex> indices_;
  std::size_t zero_pos_;
};

using TruncationSetPtr = std::shared_ptr<const TruncationSet>;

// M_n with R_n = R1 * factor^{n-1} (optionally capped), likewise r_n.
// Throws CapExceeded when the cardinality exceeds schedule.size_cap.
TruncationSetPtr build_truncation(int level, const GrowthSchedule& schedule);

// Same box geometry, no cardinality cap; used where only the index
// enumeration (never a dense matrix) is needed.
TruncationSetPtr build_truncation_uncapped(int level, const GrowthSchedule& schedule);

// Minimal |p + alpha m| over the nonzero indices of the set, with a
// minimizing index (first in canonical order on ties).
std::pair<double, LatticeIndex> min_shift_norm(const TruncationSet& set,
                                               const Frequency& freq);

struct DiophantineRow {
  int box;
  double min_norm;
  LatticeIndex argmin;
};

// (box, min |p+alpha m|) for boxes 1..max_box; min over |p|,|m| <= box.
std::vector<DiophantineRow> diophantine_report(const Frequency& freq, int max_box);

void write_diophantine_csv(const std::vector<DiophantineRow>& rows, std::ostream& os);

}  // namespace polyqp
