#include "polyqp/synthesis.hpp"

#include <cmath>
#include <cstdio>

namespace polyqp {

Complex eigenfunction(const SpectralPair& pair, const Vec2& k,
                      const Frequency& freq, const Vec2& x,
                      PhaseConvention conv) {
  const double c = phase_scale(conv);
  const auto& set = *pair.set;
  Complex sum(0, 0);
  for (std::size_t i = 0; i < set.size(); ++i) {
    const Vec2 b = dual_vector(set[i], freq);
    const double phase = (k.x() + c * b.x()) * x.x() + (k.y() + c * b.y()) * x.y();
    sum += pair.coeffs(static_cast<Eigen::Index>(i)) *
           Complex(std::cos(phase), std::sin(phase));
  }
  return sum;
}

ResidualReport residual_coefficients(const PotentialSpec& spec,
                                     const SpectralPair& pair, const Vec2& k) {
  const auto& set = *pair.set;
  if (static_cast<std::size_t>(pair.coeffs.size()) != set.size())
    throw std::invalid_argument("residual_coefficients: pair/set size mismatch");
  // enlarged support M_n (+) supp(V)
  const TruncationSet enlarged(set.level(), set.box_p() + max_s1_inf(spec),
                               set.box_m() + max_s2_inf(spec));
  const Eigen::VectorXcd f = residual_vector(spec, k, pair, enlarged);

  ResidualReport rep;
  rep.level = pair.level;
  const double support_tol = 1e-10 * (1.0 + std::abs(pair.lambda));
  double l2sq = 0;
  for (std::size_t i = 0; i < enlarged.size(); ++i) {
    const double a = std::abs(f(static_cast<Eigen::Index>(i)));
    rep.coeff_l1 += a;
    l2sq += a * a;
    if (set.contains(enlarged[i]))
      rep.interior_abs_max = std::max(rep.interior_abs_max, a);
    if (a > support_tol) rep.support.push_back(enlarged[i]);
  }
  rep.coeff_l2 = std::sqrt(l2sq);
  return rep;
}

std::vector<Complex> grid_render(const SpectralPair& pair, const Vec2& k,
                                 const Frequency& freq, const GridSpec& grid,
                                 PhaseConvention conv, ExecutionPolicy policy) {
  if (grid.nx < 1 || grid.ny < 1)
    throw std::invalid_argument("grid_render: positive resolution");
  const std::size_t cells =
      static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny);
  if (cells > grid.cell_cap)
    throw CapExceeded("grid_render: resolution exceeds the configured cap");
  std::vector<Complex> out(cells);
  const double dx = grid.nx > 1 ? grid.extent.x() / (grid.nx - 1) : 0.0;
  const double dy = grid.ny > 1 ? grid.extent.y() / (grid.ny - 1) : 0.0;
  auto row = [&](std::ptrdiff_t iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const Vec2 x(grid.origin.x() + ix * dx, grid.origin.y() + iy * dy);
      out[static_cast<std::size_t>(iy) * grid.nx + ix] =
          eigenfunction(pair, k, freq, x, conv);
    }
  };
  if (policy == ExecutionPolicy::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t iy = 0; iy < grid.ny; ++iy) row(iy);
  } else {
    for (std::ptrdiff_t iy = 0; iy < grid.ny; ++iy) row(iy);
  }
  return out;
}

void write_field_csv(const std::vector<Complex>& field, const GridSpec& grid,
                     std::ostream& os, bool magnitude_only) {
  const double dx = grid.nx > 1 ? grid.extent.x() / (grid.nx - 1) : 0.0;
  const double dy = grid.ny > 1 ? grid.extent.y() / (grid.ny - 1) : 0.0;
  char buf[160];
  if (magnitude_only)
    os << "x1,x2,abs\n";
  else
    os << "x1,x2,re,im\n";
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double x1 = grid.origin.x() + ix * dx;
      const double x2 = grid.origin.y() + iy * dy;
      const Complex v = field[static_cast<std::size_t>(iy) * grid.nx + ix];
      if (magnitude_only)
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", x1, x2, std::abs(v));
      else
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g", x1, x2,
                      v.real(), v.imag());
      os << buf << '\n';
    }
}

}  // namespace polyqp
