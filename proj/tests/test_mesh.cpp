#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "h2curl/error.hpp"
#include "h2curl/mesh.hpp"

using namespace h2curl;

TEST_CASE("uniform meshes") {
  for (int N : {1, 3, 5}) {
    const auto q = uniform_rect_mesh(N);
    CHECK(q.vertices.size() == static_cast<std::size_t>((N + 1) * (N + 1)));
    CHECK(q.cells.size() == static_cast<std::size_t>(N * N));
    CHECK(q.edges.size() == static_cast<std::size_t>(2 * N * (N + 1)));
    CHECK(audit_mesh(q).ok);

    const auto t = uniform_tri_mesh(N);
    CHECK(t.vertices.size() == static_cast<std::size_t>((N + 1) * (N + 1)));
    CHECK(t.cells.size() == static_cast<std::size_t>(2 * N * N));
    CHECK(t.edges.size() == static_cast<std::size_t>(3 * N * N + 2 * N));
    CHECK(audit_mesh(t).ok);
    CHECK(t.max_edge_length() == doctest::Approx(std::sqrt(2.0) / N));
  }
}

TEST_CASE("boundary flags on the unit square") {
  const auto t = uniform_tri_mesh(4);
  int n_boundary = 0;
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    const Point a = t.vertices[t.edges[e][0]], b = t.vertices[t.edges[e][1]];
    const Point m = 0.5 * (a + b);
    const bool on = m.x() == 0.0 || m.y() == 0.0 || m.x() == 1.0 || m.y() == 1.0;
    CHECK(static_cast<bool>(t.boundary_edge[e]) == on);
    n_boundary += on;
  }
  CHECK(n_boundary == 16);
}

TEST_CASE("affine maps send reference vertices onto cell vertices") {
  for (const auto& mesh : {uniform_rect_mesh(3), uniform_tri_mesh(3), graded_lshape_mesh(3, 0.245)}) {
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
      const AffineMap F = affine_map(mesh, c);
      CHECK(F.det_B > 0.0);
      const auto ref = reference_vertices(mesh.shape());
      for (int i = 0; i < mesh.vertices_per_cell(); ++i) {
        CHECK((F(ref[i]) - mesh.cell_vertex(c, i)).norm() < 1e-14);
        CHECK((F.inverse(mesh.cell_vertex(c, i)) - ref[i]).norm() < 1e-12);
      }
    }
  }
}

TEST_CASE("degenerate cells are rejected") {
  const auto m = make_mesh(MeshKind::Tri, {{0, 0}, {1, 0}, {2, 0}}, {{0, 1, 2, -1}});
  CHECK_THROWS_AS(affine_map(m, 0), SingularMap);
}

TEST_CASE("graded L-shape") {
  const auto m1 = graded_lshape_mesh(1, 0.5);
  CHECK(m1.cells.size() == 6);
  CHECK(m1.vertices.size() == 8);
  CHECK(audit_mesh(m1).ok);
  double area = 0.0;
  for (std::size_t c = 0; c < m1.num_cells(); ++c) area += 0.5 * affine_map(m1, c).det_B;
  CHECK(area == doctest::Approx(0.75));

  for (double kappa : {0.5, 0.245}) {
    const auto m2 = graded_lshape_mesh(2, kappa);
    const auto m3 = graded_lshape_mesh(3, kappa);
    CHECK(m3.cells.size() == 96);
    CHECK(audit_mesh(m3).ok);
    CHECK_NOTHROW(check_nested(m2, m3));
    CHECK_THROWS_AS(check_nested(m1, m3), NonNestedMeshes);
    for (std::size_t c = 0; c < m3.num_cells(); ++c) CHECK(m3.parent[c] == static_cast<int>(c / 4));
  }

  // edges at the corner (0.5,0.5) are cut at kappa; (0.5,0.5)-(0,0) gets its point at kappa from the corner
  const Point corner(0.5, 0.5);
  const auto g = graded_lshape_mesh(2, 0.245);
  bool found = false;
  for (const auto& v : g.vertices)
    if ((v - (corner + 0.245 * (Point(0.0, 0.0) - corner))).norm() < 1e-14) found = true;
  CHECK(found);
  found = false;
  for (const auto& v : graded_lshape_mesh(2, 0.5).vertices)
    if ((v - Point(0.25, 0.0)).norm() < 1e-14) found = true;
  CHECK(found);
}

TEST_CASE("graded meshes shrink towards the corner") {
  const Point corner(0.5, 0.5);
  const auto smallest_at_corner = [&](const Mesh2D& m) {
    double h = 1.0;
    for (const auto& e : m.edges) {
      const Point a = m.vertices[e[0]], b = m.vertices[e[1]];
      if ((a - corner).norm() < 1e-14 || (b - corner).norm() < 1e-14) h = std::min(h, (a - b).norm());
    }
    return h;
  };
  const auto a = graded_lshape_mesh(4, 0.245);
  const auto b = graded_lshape_mesh(4, 0.5);
  CHECK(smallest_at_corner(a) == doctest::Approx(0.5 * std::pow(0.245, 3)));
  CHECK(smallest_at_corner(b) == doctest::Approx(0.5 * std::pow(0.5, 3)));
}

TEST_CASE("parameter errors") {
  CHECK_THROWS_AS(graded_lshape_mesh(2, 0.7), ParameterError);
  CHECK_THROWS_AS(graded_lshape_mesh(2, 0.0), ParameterError);
  CHECK_THROWS_AS(graded_lshape_mesh(0, 0.3), ParameterError);
  CHECK_THROWS_AS(refine_towards(uniform_rect_mesh(2), 0, 0.3), ParameterError);
}

TEST_CASE("mesh dump") {
  std::ostringstream out;
  write_mesh(out, uniform_tri_mesh(1));
  const std::string s = out.str();
  CHECK(s.find("v 1 1") != std::string::npos);
  CHECK(std::count(s.begin(), s.end(), '\n') == 4 + 2);
}
