#include "polyqp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace polyqp {

namespace {

constexpr int kSize = 640;
constexpr double kMargin = 40;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void header(std::ostringstream& os) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize
     << "\" height=\"" << kSize << "\" viewBox=\"0 0 " << kSize << ' ' << kSize
     << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

// circle arc path in screen coordinates, radius rho, angles [a, b]
std::string arc_path(double cx, double cy, double rho, double a, double b) {
  const double x0 = cx + rho * std::cos(a), y0 = cy - rho * std::sin(a);
  const double x1 = cx + rho * std::cos(b), y1 = cy - rho * std::sin(b);
  const int large = (b - a) > 3.14159265358979323846 ? 1 : 0;
  std::ostringstream os;
  os << "M " << fmt(x0) << ' ' << fmt(y0) << " A " << fmt(rho) << ' '
     << fmt(rho) << " 0 " << large << " 0 " << fmt(x1) << ' ' << fmt(y1);
  return os.str();
}

}  // namespace

std::string svg_angle_set(const AngleSet& set) {
  std::ostringstream os;
  header(os);
  const double c = kSize / 2.0;
  const double rho = c - kMargin;
  os << "<circle cx=\"" << c << "\" cy=\"" << c << "\" r=\"" << fmt(rho)
     << "\" fill=\"none\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
  for (const Arc& a : set.arcs())
    os << "<path d=\"" << arc_path(c, c, rho, a.begin, a.end)
       << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"8\"/>\n";
  for (const Arc& h : set.holes())
    os << "<path d=\"" << arc_path(c, c, rho, h.begin, h.end)
       << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"3\"/>\n";
  os << "</svg>\n";
  return os.str();
}

std::string svg_isocurve(const IsoCurve& curve) {
  std::ostringstream os;
  header(os);
  const double c = kSize / 2.0;
  double kmax = 0;
  for (const auto& s : curve.samples) kmax = std::max(kmax, s.kappa);
  if (kmax <= 0) kmax = 1;
  const double scale = (c - kMargin) / kmax;
  // split into contiguous runs so holes stay visibly open
  std::size_t i = 0;
  while (i < curve.samples.size()) {
    std::size_t j = i;
    std::ostringstream path;
    path << "M ";
    while (j < curve.samples.size()) {
      const auto& s = curve.samples[j];
      if (j > i) {
        const double gap = s.phi - curve.samples[j - 1].phi;
        if (gap > 0.05) break;
        path << " L ";
      }
      path << fmt(c + scale * s.kappa * std::cos(s.phi)) << ' '
           << fmt(c - scale * s.kappa * std::sin(s.phi));
      ++j;
    }
    os << "<path d=\"" << path.str()
       << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
    i = j;
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_field_magnitude(const std::vector<Complex>& field,
                                const GridSpec& grid) {
  if (field.size() !=
      static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny))
    throw std::invalid_argument("svg_field_magnitude: field size != nx*ny");
  std::ostringstream os;
  header(os);
  double vmax = 0;
  for (const Complex& v : field) vmax = std::max(vmax, std::abs(v));
  if (vmax <= 0) vmax = 1;
  const double w = (kSize - 2 * kMargin) / grid.nx;
  const double h = (kSize - 2 * kMargin) / grid.ny;
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double a =
          std::abs(field[static_cast<std::size_t>(iy) * grid.nx + ix]) / vmax;
      const int g = static_cast<int>(std::lround(255.0 * (1.0 - a)));
      char color[8];
      std::snprintf(color, sizeof color, "#%02x%02x%02x", g, g, 255);
      os << "<rect x=\"" << fmt(kMargin + ix * w) << "\" y=\""
         << fmt(kSize - kMargin - (iy + 1) * h) << "\" width=\"" << fmt(w + 0.5)
         << "\" height=\"" << fmt(h + 0.5) << "\" fill=\"" << color << "\"/>\n";
    }
  os << "</svg>\n";
  return os.str();
}

}  // namespace polyqp
