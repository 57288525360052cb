#pragma once

#include <string>
#include <vector>

#include "polyqp/isoenergetic.hpp"
#include "polyqp/synthesis.hpp"

namespace polyqp {

// All renderers are pure functions of data that is also written to CSV, so a
// figure can be replayed offline from the CSV alone.

std::string svg_angle_set(const AngleSet& set);
std::string svg_isocurve(const IsoCurve& curve);
std::string svg_field_magnitude(const std::vector<Complex>& field,
                                const GridSpec& grid);

}  // namespace polyqp
