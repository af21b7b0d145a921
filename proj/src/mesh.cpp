#include "h2curl/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "h2curl/error.hpp"

namespace h2curl {

double Mesh2D::max_edge_length() const {
  double h = 0.0;
  for (const auto& e : edges) h = std::max(h, (vertices[e[1]] - vertices[e[0]]).norm());
  return h;
}

Mesh2D make_mesh(MeshKind kind, std::vector<Point> vertices, std::vector<std::array<int, 4>> cells) {
  Mesh2D mesh;
  mesh.kind = kind;
  mesh.vertices = std::move(vertices);
  mesh.cells = std::move(cells);
  const auto local_edges = reference_edges(mesh.shape());

  std::map<std::pair<int, int>, int> edge_id;
  std::vector<int> edge_cells;
  mesh.cell_edges.resize(mesh.cells.size());
  for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
    for (std::size_t le = 0; le < local_edges.size(); ++le) {
      const int a = mesh.cells[c][local_edges[le][0]];
      const int b = mesh.cells[c][local_edges[le][1]];
      const auto key = std::minmax(a, b);
      auto [it, inserted] = edge_id.try_emplace({key.first, key.second}, static_cast<int>(mesh.edges.size()));
      if (inserted) {
        mesh.edges.push_back({key.first, key.second});
        edge_cells.push_back(0);
      }
      ++edge_cells[it->second];
      mesh.cell_edges[c][le] = {it->second, a < b ? 1 : -1};
    }
  }
  mesh.boundary_vertex.assign(mesh.vertices.size(), 0);
  mesh.boundary_edge.assign(mesh.edges.size(), 0);
  for (std::size_t e = 0; e < mesh.edges.size(); ++e)
    if (edge_cells[e] == 1) {
      mesh.boundary_edge[e] = 1;
      mesh.boundary_vertex[mesh.edges[e][0]] = 1;
      mesh.boundary_vertex[mesh.edges[e][1]] = 1;
    }
  return mesh;
}

Mesh2D uniform_rect_mesh(int N) {
  if (N < 1) throw ParameterError("uniform_rect_mesh: N must be >= 1");
  std::vector<Point> vertices;
  for (int j = 0; j <= N; ++j)
    for (int i = 0; i <= N; ++i) vertices.emplace_back(static_cast<double>(i) / N, static_cast<double>(j) / N);
  std::vector<std::array<int, 4>> cells;
  const auto id = [N](int i, int j) { return j * (N + 1) + i; };
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
  return make_mesh(MeshKind::Quad, std::move(vertices), std::move(cells));
}

Mesh2D uniform_tri_mesh(int N) {
  if (N < 1) throw ParameterError("uniform_tri_mesh: N must be >= 1");
  std::vector<Point> vertices;
  for (int j = 0; j <= N; ++j)
    for (int i = 0; i <= N; ++i) vertices.emplace_back(static_cast<double>(i) / N, static_cast<double>(j) / N);
  std::vector<std::array<int, 4>> cells;
  const auto id = [N](int i, int j) { return j * (N + 1) + i; };
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), -1});
      cells.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1), -1});
    }
  return make_mesh(MeshKind::Tri, std::move(vertices), std::move(cells));
}

Mesh2D refine_towards(const Mesh2D& coarse, int corner, double kappa) {
  if (coarse.kind != MeshKind::Tri) throw ParameterError("refine_towards: triangle mesh required");
  std::vector<Point> vertices = coarse.vertices;
  std::vector<int> edge_point(coarse.edges.size());
  for (std::size_t e = 0; e < coarse.edges.size(); ++e) {
    const auto [a, b] = coarse.edges[e];
    const Point& pa = coarse.vertices[a];
    const Point& pb = coarse.vertices[b];
    Point p = 0.5 * (pa + pb);
    if (a == corner) p = pa + kappa * (pb - pa);
    else if (b == corner) p = pb + kappa * (pa - pb);
    edge_point[e] = static_cast<int>(vertices.size());
    vertices.push_back(p);
  }
  std::vector<std::array<int, 4>> cells;
  cells.reserve(4 * coarse.cells.size());
  for (std::size_t c = 0; c < coarse.cells.size(); ++c) {
    const auto& v = coarse.cells[c];
    // local edges (0,1), (1,2), (2,0)
    const int m01 = edge_point[coarse.cell_edges[c][0].edge];
    const int m12 = edge_point[coarse.cell_edges[c][1].edge];
    const int m20 = edge_point[coarse.cell_edges[c][2].edge];
    cells.push_back({v[0], m01, m20, -1});
    cells.push_back({m01, v[1], m12, -1});
    cells.push_back({m20, m12, v[2], -1});
    cells.push_back({m01, m12, m20, -1});
  }
  Mesh2D fine = make_mesh(MeshKind::Tri, std::move(vertices), std::move(cells));
  fine.parent.resize(fine.cells.size());
  for (std::size_t c = 0; c < fine.cells.size(); ++c) fine.parent[c] = static_cast<int>(c / 4);
  return fine;
}

Mesh2D graded_lshape_mesh(int level, double kappa) {
  if (!(kappa > 0.0 && kappa <= 0.5)) throw ParameterError("graded_lshape_mesh: kappa must lie in (0, 0.5]");
  if (level < 1) throw ParameterError("graded_lshape_mesh: level must be >= 1");
  std::vector<Point> vertices = {{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}, {0.5, 0.5},
                                 {1.0, 0.5}, {0.0, 1.0}, {0.5, 1.0}, {1.0, 1.0}};
  constexpr int corner = 3;
  // Every square is cut by the diagonal through the corner.
  std::vector<std::array<int, 4>> cells = {
      {0, 1, 3, -1}, {0, 3, 2, -1}, {2, 3, 5, -1}, {3, 6, 5, -1}, {3, 4, 7, -1}, {3, 7, 6, -1},
  };
  Mesh2D mesh = make_mesh(MeshKind::Tri, std::move(vertices), std::move(cells));
  for (int l = 1; l < level; ++l) mesh = refine_towards(mesh, corner, kappa);
  return mesh;
}

AffineMap affine_map(const Mesh2D& mesh, std::size_t cell) {
  AffineMap map;
  const Point v0 = mesh.cell_vertex(cell, 0);
  const Point v1 = mesh.cell_vertex(cell, 1);
  if (mesh.kind == MeshKind::Quad) {
    const Point v3 = mesh.cell_vertex(cell, 3);
    map.B.col(0) = 0.5 * (v1 - v0);
    map.B.col(1) = 0.5 * (v3 - v0);
    map.b = 0.5 * (v1 + v3);
  } else {
    const Point v2 = mesh.cell_vertex(cell, 2);
    map.B.col(0) = v1 - v0;
    map.B.col(1) = v2 - v0;
    map.b = v0;
  }
  map.det_B = map.B.determinant();
  const double scale = map.B.cwiseAbs().maxCoeff();
  if (!(std::abs(map.det_B) > 1e-14 * scale * scale))
    throw SingularMap("cell " + std::to_string(cell) + " is degenerate");
  return map;
}

MeshAudit audit_mesh(const Mesh2D& mesh) {
  std::ostringstream err;
  const int nv = mesh.vertices_per_cell();
  for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
    double area2 = 0.0;
    for (int i = 0; i < nv; ++i) {
      const Point& p = mesh.cell_vertex(c, i);
      const Point& q = mesh.cell_vertex(c, (i + 1) % nv);
      area2 += p.x() * q.y() - q.x() * p.y();
    }
    if (!(area2 > 0.0)) err << "cell " << c << " is not counterclockwise; ";
  }
  std::vector<int> share(mesh.edges.size(), 0);
  for (const auto& ce : mesh.cell_edges)
    for (int i = 0; i < nv; ++i) ++share[ce[i].edge];
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    if (mesh.edges[e][0] >= mesh.edges[e][1]) err << "edge " << e << " not oriented low to high; ";
    const int expected = mesh.boundary_edge[e] ? 1 : 2;
    if (share[e] != expected) err << "edge " << e << " shared by " << share[e] << " cells; ";
  }
  const long euler = static_cast<long>(mesh.vertices.size()) - static_cast<long>(mesh.edges.size()) +
                     static_cast<long>(mesh.cells.size());
  if (euler != 1) err << "V - E + F = " << euler << "; ";
  MeshAudit audit;
  audit.message = err.str();
  audit.ok = audit.message.empty();
  return audit;
}

void check_nested(const Mesh2D& coarse, const Mesh2D& fine) {
  if (coarse.kind != fine.kind || fine.parent.size() != fine.cells.size() ||
      fine.cells.size() != 4 * coarse.cells.size() || fine.vertices.size() < coarse.vertices.size())
    throw NonNestedMeshes("meshes are not related by one refinement step");
  for (std::size_t v = 0; v < coarse.vertices.size(); ++v)
    if ((coarse.vertices[v] - fine.vertices[v]).norm() > 1e-12)
      throw NonNestedMeshes("coarse vertex " + std::to_string(v) + " missing from the fine mesh");
  for (std::size_t c = 0; c < fine.cells.size(); ++c) {
    const int p = fine.parent[c];
    if (p < 0 || static_cast<std::size_t>(p) >= coarse.cells.size())
      throw NonNestedMeshes("invalid parent of cell " + std::to_string(c));
  }
}

void write_mesh(std::ostream& out, const Mesh2D& mesh) {
  out.precision(17);
  for (const auto& v : mesh.vertices) out << "v " << v.x() << ' ' << v.y() << '\n';
  for (const auto& c : mesh.cells) {
    out << 'c';
    for (int i = 0; i < mesh.vertices_per_cell(); ++i) out << ' ' << c[i];
    out << '\n';
  }
}

}  // namespace h2curl
