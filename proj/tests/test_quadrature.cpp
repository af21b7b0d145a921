#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "h2curl/quadrature.hpp"

using namespace h2curl;

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

// int over (-1,1) of x^m
double interval_moment(int m) { return m % 2 ? 0.0 : 2.0 / (m + 1); }

// int over the unit triangle of x^a y^b = a! b! / (a + b + 2)!
double triangle_moment(int a, int b) { return factorial(a) * factorial(b) / factorial(a + b + 2); }

}  // namespace

TEST_CASE("Gauss-Legendre exactness") {
  for (int n = 1; n <= 12; ++n) {
    const auto r = gauss_interval(n);
    REQUIRE(r.points.size() == static_cast<std::size_t>(n));
    CHECK(r.exact_degree == 2 * n - 1);
    for (int m = 0; m <= 2 * n - 1; ++m) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.points[i], m);
      CHECK(s == doctest::Approx(interval_moment(m)).epsilon(1e-13));
    }
    // first degree beyond exactness is missed
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.points[i], 2 * n);
    CHECK(std::abs(s - interval_moment(2 * n)) > 1e-8);
  }
}

TEST_CASE("unit interval rule") {
  const auto r = unit_interval_rule(9);
  CHECK(r.exact_degree >= 9);
  for (int m = 0; m <= 9; ++m) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.points.size(); ++i) s += r.weights[i] * std::pow(r.points[i], m);
    CHECK(s == doctest::Approx(1.0 / (m + 1)).epsilon(1e-13));
  }
}

TEST_CASE("rectangle rule") {
  const auto r = rect_rule(5);
  for (int a = 0; a <= 9; ++a)
    for (int b = 0; b <= 9; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i)
        s += r.weights[i] * std::pow(r.points[i].x(), a) * std::pow(r.points[i].y(), b);
      CHECK(s == doctest::Approx(interval_moment(a) * interval_moment(b)).epsilon(1e-13).scale(1.0));
    }
}

TEST_CASE("triangle rule exactness up to degree 20") {
  for (int d = 0; d <= 20; ++d) {
    const auto r = tri_rule(d);
    CHECK(r.exact_degree >= d);
    for (const auto& p : r.points) {
      CHECK(p.x() > 0.0);
      CHECK(p.y() > 0.0);
      CHECK(p.x() + p.y() < 1.0);
    }
    for (int a = 0; a <= d; ++a)
      for (int b = 0; a + b <= d; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i)
          s += r.weights[i] * std::pow(r.points[i].x(), a) * std::pow(r.points[i].y(), b);
        CHECK(s == doctest::Approx(triangle_moment(a, b)).epsilon(1e-12));
      }
  }
}

TEST_CASE("cell rules match the reference measure") {
  for (auto shape : {CellShape::Rectangle, CellShape::Triangle})
    for (int d : {0, 4, 11}) {
      const auto r = cell_rule(shape, d);
      CHECK(r.exact_degree >= d);
      double area = 0.0;
      for (double w : r.weights) area += w;
      CHECK(area == doctest::Approx(reference_measure(shape)));
    }
}
