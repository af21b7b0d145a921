#include "h2curl/cell_shape.hpp"

namespace h2curl {

namespace {

const std::array<Point, 4> kRectVertices = {Point(-1, -1), Point(1, -1), Point(1, 1), Point(-1, 1)};
const std::array<Point, 3> kTriVertices = {Point(0, 0), Point(1, 0), Point(0, 1)};
constexpr std::array<LocalEdge, 4> kRectEdges = {{{0, 1}, {1, 2}, {3, 2}, {0, 3}}};
constexpr std::array<LocalEdge, 3> kTriEdges = {{{0, 1}, {1, 2}, {2, 0}}};

}  // namespace

std::span<const Point> reference_vertices(CellShape shape) {
  if (shape == CellShape::Rectangle) return kRectVertices;
  return kTriVertices;
}

std::span<const LocalEdge> reference_edges(CellShape shape) {
  if (shape == CellShape::Rectangle) return kRectEdges;
  return kTriEdges;
}

int vertex_count(CellShape shape) { return shape == CellShape::Rectangle ? 4 : 3; }

double reference_measure(CellShape shape) { return shape == CellShape::Rectangle ? 4.0 : 0.5; }

double reference_half_extent(CellShape shape) { return shape == CellShape::Rectangle ? 1.0 : 0.5; }

Point edge_point(CellShape shape, int edge, double t) {
  const auto verts = reference_vertices(shape);
  const auto& e = reference_edges(shape)[edge];
  return (1.0 - t) * verts[e[0]] + t * verts[e[1]];
}

Point edge_vector(CellShape shape, int edge) {
  const auto verts = reference_vertices(shape);
  const auto& e = reference_edges(shape)[edge];
  return verts[e[1]] - verts[e[0]];
}

const char* to_string(CellShape shape) { return shape == CellShape::Rectangle ? "rect" : "tri"; }

}  // namespace h2curl
