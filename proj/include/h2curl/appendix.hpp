#pragma once

#include <filesystem>
#include <istream>
#include <vector>

#include "h2curl/cell_shape.hpp"
#include "h2curl/poly2d.hpp"

namespace h2curl {

/// Basis polynomials read from a coefficient file.
///
/// Format (one directive per line, '#' starts a comment):
///   shape rect|tri
///   order <k>
///   phi <index>
///   <component 1|2> <i> <j> <num>/<den>   coefficient of x^i y^j
struct AppendixBasis {
  CellShape shape = CellShape::Rectangle;
  int order = 0;
  std::vector<VecPoly2D> functions;
};

AppendixBasis load_appendix(std::istream& in);
AppendixBasis load_appendix(const std::filesystem::path& path);

}  // namespace h2curl
