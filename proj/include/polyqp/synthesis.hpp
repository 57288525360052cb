#pragma once

#include "polyqp/spectral.hpp"

namespace polyqp {

// Psi_n(k, x) = sum_idx u_idx e^{i <k + c b(idx), x>}, c per the convention.
Complex eigenfunction(const SpectralPair& pair, const Vec2& k,
                      const Frequency& freq, const Vec2& x,
                      PhaseConvention conv = PhaseConvention::Absorbed);

// Exact coefficient-space residual f_n of
//   (-Delta)^l Psi_n + V Psi_n = lambda^{(n)} Psi_n + f_n,
// supported on M_n (+) supp(V).
struct ResidualReport {
  int level = 1;
  double coeff_l1 = 0;
  double coeff_l2 = 0;
  double interior_abs_max = 0;  // max |f coeff| on M_n (eigensolver certificate)
  std::vector<LatticeIndex> support;  // |coeff| > 1e-10 (1 + |lambda|)
};

ResidualReport residual_coefficients(const PotentialSpec& spec,
                                     const SpectralPair& pair, const Vec2& k);

struct GridSpec {
  Vec2 origin{0, 0};
  Vec2 extent{1, 1};
  int nx = 64;
  int ny = 64;
  std::size_t cell_cap = 1 << 22;
};

// Row-major samples of Psi_n over the rectangle.
std::vector<Complex> grid_render(const SpectralPair& pair, const Vec2& k,
                                 const Frequency& freq, const GridSpec& grid,
                                 PhaseConvention conv = PhaseConvention::Absorbed,
                                 ExecutionPolicy policy = ExecutionPolicy::Parallel);

void write_field_csv(const std::vector<Complex>& field, const GridSpec& grid,
                     std::ostream& os, bool magnitude_only = false);

}  // namespace polyqp
