#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "h2curl/analysis.hpp"
#include "h2curl/error.hpp"

using namespace h2curl;

namespace {

using Vec = std::function<Eigen::Vector2d(const Point&)>;
using Scal = std::function<double(const Point&)>;

// central-difference curl of a vector function
double fd_curl(const Vec& u, const Point& x, double h) {
  const Eigen::Vector2d ex(h, 0.0), ey(0.0, h);
  return (u(x + ex).y() - u(x - ex).y()) / (2 * h) - (u(x + ey).x() - u(x - ey).x()) / (2 * h);
}

// (ds/dy, -ds/dx)
Eigen::Vector2d fd_vcurl(const Scal& s, const Point& x, double h) {
  const Eigen::Vector2d ex(h, 0.0), ey(0.0, h);
  return {(s(x + ey) - s(x - ey)) / (2 * h), -(s(x + ex) - s(x - ex)) / (2 * h)};
}

const Point samples[] = {Point(0.13, 0.71), Point(0.5, 0.5), Point(0.82, 0.27), Point(0.33, 0.09)};

}  // namespace

TEST_CASE("sin^3 derivatives") {
  const double h = 1e-4;
  for (double t : {0.1, 0.37, 0.8}) {
    CHECK(sin3_derivative(0, t) == doctest::Approx(std::pow(std::sin(std::numbers::pi * t), 3)));
    for (int k = 1; k <= 5; ++k) {
      const double fd = (sin3_derivative(k - 1, t + h) - sin3_derivative(k - 1, t - h)) / (2 * h);
      CHECK(sin3_derivative(k, t) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("manufactured solution against finite differences") {
  const ExactSolution ex = manufactured_example1();
  const double h = 1e-4;
  for (const Point& x : samples) {
    CHECK(ex.curl(x) == doctest::Approx(fd_curl(ex.value, x, h)).epsilon(1e-6));
    const Eigen::Vector2d cc = fd_vcurl(ex.curl, x, h);
    CHECK((ex.curlcurl(x) - cc).norm() < 1e-6 * std::max(1.0, cc.norm()));
    // f = curl curl (curl curl u), via a nested difference of the curl of curlcurl u
    const Scal c3 = [&](const Point& y) { return fd_curl(ex.curlcurl, y, 1e-3); };
    const Eigen::Vector2d f = fd_vcurl(c3, x, 1e-3);
    CHECK((ex.f(x) - f).norm() < 1e-4 * std::max(1.0, f.norm()));
    // the stream-function form is divergence free
    const double div = (ex.value(x + Point(h, 0)).x() - ex.value(x - Point(h, 0)).x()) / (2 * h) +
                       (ex.value(x + Point(0, h)).y() - ex.value(x - Point(0, h)).y()) / (2 * h);
    CHECK(std::abs(div) < 1e-6);
  }
  // u x n = 0 and curl u = 0 on the boundary
  for (double t : {0.2, 0.6}) {
    CHECK(std::abs(ex.value(Point(t, 0.0)).x()) < 1e-12);
    CHECK(std::abs(ex.value(Point(1.0, t)).y()) < 1e-12);
    CHECK(std::abs(ex.curl(Point(0.0, t))) < 1e-12);
  }
}

TEST_CASE("rates") {
  const std::vector<double> hs{0.5, 0.25, 0.125, 0.0625};
  std::vector<double> e;
  for (double h : hs) e.push_back(3.0 * std::pow(h, 2.5));
  for (double r : rates(e, hs)) CHECK(std::abs(r - 2.5) < 1e-12);
  CHECK(std::abs(fit_rate(e, hs) - 2.5) < 1e-12);
  CHECK(successive_orders(std::vector<double>{1.0, 0.25, 0.0625})[0] == doctest::Approx(2.0));

  e[2] = 0.0;
  CHECK_THROWS_AS(rates(e, hs), UndefinedRate);
  CHECK_THROWS_AS(rates(std::vector<double>{1.0}, std::vector<double>{1.0}), ParameterError);
  CHECK_THROWS_AS(rates(std::vector<double>{1.0, 0.5}, std::vector<double>{0.1, 0.2}), ParameterError);
}

TEST_CASE("error norms") {
  const ExactSolution ex = manufactured_example1();
  const H2CurlSpace V(uniform_rect_mesh(8), 3);
  const Eigen::VectorXd u = interpolate(V, ex.field());
  const ErrorReport norms = fe_norms(V, u);
  const ErrorReport err = error_norms(V, u, ex);
  CHECK(err.l2 < 0.05 * norms.l2);
  CHECK(err.curl < 0.05 * norms.curl);
  CHECK(norms.l2 > 0.0);

  // a field measured against itself
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(u.size());
  const ErrorReport full = error_norms(V, zero, ex);
  CHECK(full.l2 == doctest::Approx(norms.l2).epsilon(0.05));
  const H2CurlSpace V1(uniform_rect_mesh(1), 3);
  const VectorField rot{[](const Point& p) { return Eigen::Vector2d(-p.y(), p.x()); }, [](const Point&) { return 2.0; }};
  const Eigen::VectorXd r = interpolate(V1, rot);
  ExactSolution same;
  same.value = rot.value;
  same.curl = rot.curl;
  same.curlcurl = [](const Point&) { return Eigen::Vector2d(0.0, 0.0); };
  same.f = same.curlcurl;
  const ErrorReport self = error_norms(V1, r, same);
  CHECK(self.l2 <= 1e-12 * fe_norms(V1, r).l2);
  CHECK(self.curl <= 1e-12 * fe_norms(V1, r).curl);
}

TEST_CASE("successive differences") {
  const VectorField p{[](const Point& x) { return Eigen::Vector2d(x.x() * x.y() * x.y(), x.x() * x.x() - x.y()); },
                      [](const Point& x) { return 2.0 * x.x() - 2.0 * x.x() * x.y(); }};
  const H2CurlSpace c(graded_lshape_mesh(2, 0.245), 4);
  const H2CurlSpace f(graded_lshape_mesh(3, 0.245), 4);
  const RelativeDiff d = successive_diff(c, interpolate(c, p), f, interpolate(f, p));
  CHECK(d.l2 < 1e-10);
  CHECK(d.curl < 1e-10);
  const H2CurlSpace far(graded_lshape_mesh(4, 0.245), 4);
  CHECK_THROWS_AS(successive_diff(c, interpolate(c, p), far, interpolate(far, p)), NonNestedMeshes);
}

TEST_CASE("DOF count formulas") {
  CHECK(dof_counts(2, 2).M1 == 122);
  CHECK(dof_counts(3, 2).D1 == 7);
  CHECK(dof_counts(3, 3).D2 == 11);
  for (int k = 3; k <= 5; ++k)
    for (int N = 2; N <= 10; ++N) {
      CHECK(dof_counts(k, N).D1_positive());
      if (N >= 3) CHECK(dof_counts(k, N).D2_positive());
    }
  CHECK_THROWS_AS(dof_counts(1, 2), ParameterError);
}
