#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "h2curl/cell_shape.hpp"
#include "h2curl/poly2d.hpp"

namespace h2curl {

enum class MeshKind { Quad, Tri };

/// F(x) = B x + b from the reference cell onto a mesh cell.
struct AffineMap {
  Eigen::Matrix2d B = Eigen::Matrix2d::Identity();
  Eigen::Vector2d b = Eigen::Vector2d::Zero();
  double det_B = 1.0;

  Point operator()(const Point& xhat) const { return B * xhat + b; }
  Point inverse(const Point& x) const { return B.inverse() * (x - b); }
};

struct CellEdge {
  int edge = -1;
  int sign = 1;  ///< +1 when the local edge runs along the global edge
};

/// Vertices, counterclockwise cells, globally oriented edges (lower vertex
/// index first) and boundary flags. `parent` is filled by refinement:
/// parent[c] is the cell of the previous level containing cell c.
struct Mesh2D {
  MeshKind kind = MeshKind::Quad;
  std::vector<Point> vertices;
  std::vector<std::array<int, 4>> cells;  ///< triangles use the first three entries
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<CellEdge, 4>> cell_edges;
  std::vector<char> boundary_vertex;
  std::vector<char> boundary_edge;
  std::vector<int> parent;

  CellShape shape() const { return kind == MeshKind::Quad ? CellShape::Rectangle : CellShape::Triangle; }
  int vertices_per_cell() const { return kind == MeshKind::Quad ? 4 : 3; }
  std::size_t num_cells() const { return cells.size(); }
  Point cell_vertex(std::size_t cell, int local) const { return vertices[cells[cell][local]]; }
  double max_edge_length() const;
};

/// Builds edges, cell-edge incidences and boundary flags from vertices and cells.
Mesh2D make_mesh(MeshKind kind, std::vector<Point> vertices, std::vector<std::array<int, 4>> cells);

/// N x N squares of side 1/N on (0,1)^2.
Mesh2D uniform_rect_mesh(int N);

/// N x N squares on (0,1)^2, each cut by its lower-left to upper-right diagonal.
Mesh2D uniform_tri_mesh(int N);

/// L-shape (0,1)^2 minus [0.5,1)x(0,0.5], graded towards the reentrant corner
/// (0.5,0.5). Level 1 has six triangles; each further level splits every
/// triangle into four, cutting edges that touch the corner at fraction kappa
/// from the corner and all others at their midpoints.
Mesh2D graded_lshape_mesh(int level, double kappa);

/// One uniform-pattern refinement step of a triangle mesh; edges touching
/// `corner` are split at fraction kappa from it. Coarse vertices keep their
/// indices and cell c's children are 4c..4c+3.
Mesh2D refine_towards(const Mesh2D& coarse, int corner, double kappa);

AffineMap affine_map(const Mesh2D& mesh, std::size_t cell);

struct MeshAudit {
  bool ok = true;
  std::string message;
};

/// Checks orientation, edge sharing, edge direction and V - E + F = 1.
MeshAudit audit_mesh(const Mesh2D& mesh);

/// Throws NonNestedMeshes unless `fine` is a one-level refinement of `coarse`.
void check_nested(const Mesh2D& coarse, const Mesh2D& fine);

/// Plain-text dump: `v x y` and `c i j k [l]` lines.
void write_mesh(std::ostream& out, const Mesh2D& mesh);

}  // namespace h2curl
