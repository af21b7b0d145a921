#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "checks.hpp"
#include "h2curl/error.hpp"
#include "h2curl/fespace.hpp"
#include "h2curl/parallel.hpp"

using namespace h2curl;

TEST_CASE("global DOF counts") {
  // vertices + (k-2) nodes and k moments per edge + interior moments
  const int N = 3;
  const H2CurlSpace R(uniform_rect_mesh(N), 3);
  CHECK(R.size() == static_cast<std::size_t>((N + 1) * (N + 1) + 2 * N * (N + 1) * (1 + 3) + N * N * 4));
  const H2CurlSpace T(uniform_tri_mesh(N), 4);
  CHECK(T.size() == static_cast<std::size_t>((N + 1) * (N + 1) + (3 * N * N + 2 * N) * (2 + 4) + 2 * N * N * 3));
  CHECK(T.count(DofKind::NodeCurl) == static_cast<std::size_t>((N + 1) * (N + 1) + (3 * N * N + 2 * N) * 2));
}

TEST_CASE("conformity of every basis function") {
  CHECK(checks::max_trace_jump(H2CurlSpace(uniform_rect_mesh(2), 3)) < 1e-9);
  CHECK(checks::max_trace_jump(H2CurlSpace(uniform_tri_mesh(2), 4)) < 1e-9);
  CHECK(checks::max_trace_jump(H2CurlSpace(graded_lshape_mesh(2, 0.245), 4)) < 1e-9);
}

TEST_CASE("DOF invariance and commuting interpolation under affine maps") {
  std::mt19937_64 rng(3);
  for (auto [shape, k] : {std::pair{CellShape::Triangle, 4}, {CellShape::Rectangle, 3}}) {
    const auto el = ReferenceElement::build(shape, k);
    for (int trial = 0; trial < 5; ++trial) {
      AffineMap F = checks::random_affine_map(rng);
      if (shape == CellShape::Rectangle) F.B(0, 1) = F.B(1, 0) = 0.0, F.det_B = F.B.determinant();
      const VectorField u = checks::random_trig_field(rng);
      const Eigen::VectorXd phys = physical_dofs(el, F, u);
      const Eigen::VectorXd ref = el.apply_dofs(pull_back(u, F));
      CHECK((phys - ref).cwiseAbs().maxCoeff() < 1e-8 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
      const Eigen::VectorXd c = interpolate_cell(el, F, u);
      const Eigen::VectorXd again = physical_dofs(el, F, checks::pushed_field(el, F, c));
      CHECK((again - phys).cwiseAbs().maxCoeff() < 1e-8 * std::max(1.0, phys.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("pushed curl agrees with finite differences") {
  std::mt19937_64 rng(5);
  const auto el = ReferenceElement::build(CellShape::Triangle, 4);
  const AffineMap F = checks::random_affine_map(rng);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(el.size()));
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (Eigen::Index j = 0; j < c.size(); ++j) c(j) = U(rng);
  const VectorField w = checks::pushed_field(el, F, c);
  for (const Point& xh : {Point(0.2, 0.3), Point(0.6, 0.1), Point(0.1, 0.7)}) CHECK(checks::curl_fd_mismatch(w, F(xh)) < 1e-6);
}

TEST_CASE("interpolation reproduces the local space") {
  const VectorField rot{[](const Point& p) { return Eigen::Vector2d(-p.y(), p.x()); }, [](const Point&) { return 2.0; }};
  for (const auto& mesh : {uniform_rect_mesh(3), uniform_tri_mesh(3)}) {
    const H2CurlSpace V(mesh, mesh.kind == MeshKind::Quad ? 3 : 4);
    const Eigen::VectorXd c = interpolate(V, rot);
    for (std::size_t cell = 0; cell < mesh.num_cells(); ++cell) {
      const FieldValue f = eval_fe(V, c, cell, Point(0.2, 0.1));
      const Point x = V.map(cell)(Point(0.2, 0.1));
      CHECK((f.value - rot.value(x)).norm() < 1e-12);
      CHECK(f.curl == doctest::Approx(2.0).epsilon(1e-12));
      CHECK(f.curlcurl.norm() < 1e-9);
    }
  }
}

TEST_CASE("gradients of discrete potentials are interpolated exactly") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (const auto& mesh : {uniform_rect_mesh(3), uniform_tri_mesh(3), graded_lshape_mesh(2, 0.245)}) {
    const int k = mesh.kind == MeshKind::Quad ? 3 : 4;
    const LagrangeSpace S(mesh, k);
    const H2CurlSpace V(mesh, k);
    Eigen::VectorXd q = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(S.size()));
    for (std::size_t i = 0; i < S.size(); ++i)
      if (!S.boundary_mask()[i]) q(i) = U(rng);
    const auto grad_on = [&](std::size_t cell) {
      const AffineMap F = S.map(cell);
      return VectorField{[&S, &q, cell, F](const Point& x) { return eval_lagrange_gradient(S, q, cell, F.inverse(x)); },
                         [](const Point&) { return 0.0; }};
    };
    const Eigen::VectorXd u = interpolate(V, grad_on);
    double worst = 0.0;
    for (std::size_t cell = 0; cell < mesh.num_cells(); ++cell)
      for (const Point& xh : {Point(0.1, 0.2), Point(0.3, 0.3), Point(0.6, 0.2)}) {
        const FieldValue f = eval_fe(V, u, cell, xh);
        worst = std::max({worst, (f.value - eval_lagrange_gradient(S, q, cell, xh)).norm(), std::abs(f.curl)});
      }
    CHECK(worst < 1e-9);
    for (int b : V.boundary_dofs()) CHECK(std::abs(u(b)) < 1e-9);
  }
}

TEST_CASE("Lagrange spaces") {
  const LagrangeSpace P4(uniform_tri_mesh(1), 4);
  CHECK(P4.local_size() == 15);
  CHECK(P4.size() == 25);
  const LagrangeSpace Q2(uniform_rect_mesh(2), 2);
  CHECK(Q2.size() == 25);
  CHECK(Q2.boundary_dofs().size() == 16);

  const auto w = [](const Point& p) { return 1.0 + p.x() * p.x() * p.y() - 2.0 * p.y() * p.y(); };
  const Eigen::VectorXd c = nodal_interpolate(Q2, w);
  for (std::size_t cell = 0; cell < 4; ++cell)
    CHECK(eval_lagrange(Q2, c, cell, Point(0.3, -0.4)) == doctest::Approx(w(Q2.map(cell)(Point(0.3, -0.4)))));

  const VectorField rot{[](const Point& p) { return Eigen::Vector2d(-p.y(), p.x()); }, [](const Point&) { return 2.0; }};
  const Eigen::VectorXd cc = lagrange_interp_curl(Q2, rot);
  CHECK((cc.array() - 2.0).abs().maxCoeff() < 1e-14);
}

TEST_CASE("spaces on different meshes are rejected") {
  CHECK_NOTHROW(require_same_mesh(uniform_tri_mesh(2), uniform_tri_mesh(2)));
  CHECK_THROWS_AS(require_same_mesh(uniform_tri_mesh(2), uniform_tri_mesh(3)), SpaceMismatch);
}

TEST_CASE("interpolation does not depend on the thread count") {
  std::mt19937_64 rng(1);
  const VectorField u = checks::random_trig_field(rng);
  const H2CurlSpace V(uniform_tri_mesh(6), 4);
  set_thread_count(1);
  const Eigen::VectorXd a = interpolate(V, u);
  set_thread_count(3);
  const Eigen::VectorXd b = interpolate(V, u);
  set_thread_count(1);
  CHECK(a == b);
}
