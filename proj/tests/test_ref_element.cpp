#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "h2curl/appendix.hpp"
#include "h2curl/error.hpp"
#include "h2curl/ref_element.hpp"

using namespace h2curl;

namespace {

const std::filesystem::path data_dir = H2CURL_DATA_DIR;

VectorField rotation() {
  return {[](const Point& p) { return Eigen::Vector2d(-p.y(), p.x()); }, [](const Point&) { return 2.0; }};
}

}  // namespace

TEST_CASE("DOF tallies") {
  for (int k : {3, 4, 5}) {
    const auto el = build_rect_element(k);
    CHECK(el.size() == static_cast<std::size_t>(2 * k * (k + 1)));
    CHECK(el.count(DofKind::NodeCurl) == static_cast<std::size_t>(4 * (k - 1)));
    CHECK(el.count(DofKind::EdgeMoment) == static_cast<std::size_t>(4 * k));
    CHECK(el.count(DofKind::InteriorMoment) == static_cast<std::size_t>((k - 1) * (k - 1) + (k - 2) * (k - 2) - 1));
  }
  for (int k : {4, 5, 6}) {
    const auto el = build_tri_element(k);
    CHECK(el.size() == static_cast<std::size_t>(k * (k + 2)));
    CHECK(el.count(DofKind::NodeCurl) == static_cast<std::size_t>(3 * (k - 1)));
    CHECK(el.count(DofKind::EdgeMoment) == static_cast<std::size_t>(3 * k));
    CHECK(el.count(DofKind::InteriorMoment) == static_cast<std::size_t>((k - 1) * (k - 3)));
  }
  const auto r3 = build_rect_element(3);
  CHECK(r3.count(DofKind::NodeCurl) == 8);
  CHECK(r3.count(DofKind::InteriorMoment) == 4);
  CHECK(build_rect_element(4).size() == 40);
  CHECK(build_tri_element(4).size() == 24);
}

TEST_CASE("low orders are rejected") {
  CHECK_THROWS_AS(build_rect_element(2), OrderTooLow);
  CHECK_THROWS_AS(build_tri_element(3), OrderTooLow);
}

TEST_CASE("DOFs on simple fields") {
  const auto el = build_rect_element(3);
  const auto v = el.apply_dofs(rotation());
  for (std::size_t i = 0; i < el.size(); ++i) {
    const auto& d = el.dofs()[i];
    if (d.kind == DofKind::NodeCurl) CHECK(v(i) == doctest::Approx(2.0));
  }
  // u = (0,1) on the edge x = 1, tangent (0,1), q = 1
  const VectorField up{[](const Point&) { return Eigen::Vector2d(0.0, 1.0); }, [](const Point&) { return 0.0; }};
  bool found = false;
  for (std::size_t i = 0; i < el.size(); ++i) {
    const auto& d = el.dofs()[i];
    if (d.kind != DofKind::EdgeMoment || d.index != 0) continue;
    const auto [a, b] = reference_edges(CellShape::Rectangle)[d.edge];
    const Point s = reference_vertices(CellShape::Rectangle)[a];
    const Point e = reference_vertices(CellShape::Rectangle)[b];
    if (s.x() == 1.0 && e.x() == 1.0) {
      CHECK(el.apply_dof(i, up) == doctest::Approx(2.0));
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("dual basis") {
  for (auto [shape, k] : {std::pair{CellShape::Rectangle, 3}, {CellShape::Rectangle, 4}, {CellShape::Rectangle, 5},
                          {CellShape::Triangle, 4}, {CellShape::Triangle, 5}, {CellShape::Triangle, 6}}) {
    const auto el = ReferenceElement::build(shape, k);
    const auto rep = verify_unisolvence(el);
    CAPTURE(k);
    CHECK(rep.max_offdiag < 1e-9);
    CHECK(std::isfinite(rep.cond));
    // curl companions agree with the dual basis
    for (std::size_t j = 0; j < el.size(); ++j) {
      const Poly2D diff = scalar_curl(el.dual_basis()[j]) - el.dual_curl()[j];
      CHECK(std::abs(diff(0.1, 0.2)) < 1e-8);
    }
  }
}

TEST_CASE("duplicated functionals break unisolvence") {
  auto dofs = ReferenceElement::standard_dofs(CellShape::Rectangle, 3);
  dofs[1] = dofs[0];
  CHECK_THROWS_AS(ReferenceElement::from_dofs(CellShape::Rectangle, 3, EdgeTestBasis::Legendre, dofs),
                  UnisolvenceFailure);
}

TEST_CASE("edge DOFs determine tangential and curl traces") {
  for (auto [shape, k] : {std::pair{CellShape::Rectangle, 3}, {CellShape::Rectangle, 4}, {CellShape::Triangle, 4},
                          {CellShape::Triangle, 5}}) {
    const auto el = ReferenceElement::build(shape, k);
    for (int e = 0; e < static_cast<int>(reference_edges(shape).size()); ++e) {
      CHECK(el.dofs_on_edge(e).size() == static_cast<std::size_t>(2 + (k - 2) + k));
      CHECK(verify_trace_determination(el, e, 10) < 1e-9);
    }
  }
}

TEST_CASE("coefficient file parser") {
  std::istringstream in(
      "# two fields\n"
      "shape tri\norder 4\n"
      "phi 1\n1 0 0 1/2\n2 1 1 -3/4\n"
      "phi 2\n2 0 2 5\n");
  const auto b = load_appendix(in);
  CHECK(b.shape == CellShape::Triangle);
  CHECK(b.order == 4);
  REQUIRE(b.functions.size() == 2);
  CHECK(b.functions[0](Point(0.3, 0.5)).x() == doctest::Approx(0.5));
  CHECK(b.functions[0](Point(0.3, 0.5)).y() == doctest::Approx(-0.75 * 0.15));
  CHECK(b.functions[1](Point(0.3, 0.5)).y() == doctest::Approx(1.25));

  std::istringstream bad("shape hexagon\n");
  CHECK_THROWS(load_appendix(bad));
}

TEST_CASE("rectangle basis file is the dual basis up to ordering") {
  const auto b = load_appendix(data_dir / "appendix_rect_k3.txt");
  REQUIRE(b.functions.size() == 24);
  const auto el = ReferenceElement::build(CellShape::Rectangle, 3, EdgeTestBasis::Monomial);
  const auto m = verify_appendix_basis(el, b.functions);
  CHECK(m.max_error < 1e-12);
  std::vector<int> seen(24, 0);
  for (int r : m.permutation) ++seen.at(r);
  for (int s : seen) CHECK(s == 1);

  // candidate 5 is dual to its matched DOF row only
  const auto v = el.apply_dofs(as_field(b.functions[5]));
  for (int i = 0; i < 24; ++i) CHECK(v(i) == doctest::Approx(i == m.permutation[5] ? 1.0 : 0.0).scale(1.0));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int s = 0; s < 50; ++s) {
    const Point x(U(rng), U(rng));
    for (int j = 0; j < 24; ++j)
      CHECK((el.dual_basis()[m.permutation[j]](x) - b.functions[j](x)).norm() < 1e-6);
  }
}

TEST_CASE("triangle basis file mismatch is reported on the interior rows") {
  const auto b = load_appendix(data_dir / "appendix_tri_k4.txt");
  REQUIRE(b.functions.size() == 24);
  const auto el = ReferenceElement::build(CellShape::Triangle, 4, EdgeTestBasis::Monomial);
  try {
    verify_appendix_basis(el, b.functions);
    FAIL("expected a mismatch");
  } catch (const AppendixMismatch& e) {
    CHECK(e.rows() == std::vector<int>{21, 22, 23});
  }
}
