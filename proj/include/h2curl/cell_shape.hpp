#pragma once

#include <array>
#include <span>

#include "h2curl/poly2d.hpp"

namespace h2curl {

/// Rectangle: reference cell (-1,1)^2 with vertices numbered counterclockwise
/// from (-1,-1). Triangle: reference cell with vertices (0,0), (1,0), (0,1).
enum class CellShape { Rectangle, Triangle };

/// Local edge as (start vertex, end vertex); the reference tangent points
/// from start to end. Rectangle edges run along +x / +y, triangle edges
/// counterclockwise.
using LocalEdge = std::array<int, 2>;

std::span<const Point> reference_vertices(CellShape shape);
std::span<const LocalEdge> reference_edges(CellShape shape);
int vertex_count(CellShape shape);
double reference_measure(CellShape shape);

/// Half the coordinate extent of the reference cell (1 for (-1,1)^2, 1/2 for
/// the unit triangle).
double reference_half_extent(CellShape shape);

/// Point on a reference edge at fraction t in [0,1] from its start vertex.
Point edge_point(CellShape shape, int edge, double t);

/// Unscaled edge vector end - start.
Point edge_vector(CellShape shape, int edge);

const char* to_string(CellShape shape);

}  // namespace h2curl
