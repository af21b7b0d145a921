#include "h2curl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "h2curl/error.hpp"

namespace h2curl {

namespace {

// Returns (P_n(x), P_n'(x)) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int m = 2; m <= n; ++m) {
    const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

QuadRule1D gauss_interval(int n) {
  if (n < 1) throw ParameterError("gauss_interval: n must be >= 1");
  QuadRule1D rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  rule.exact_degree = 2 * n - 1;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_with_derivative(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre_with_derivative(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = -x;
    rule.points[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.points[n / 2] = 0.0;
  return rule;
}

QuadRule rect_rule(int n) {
  const auto g = gauss_interval(n);
  QuadRule rule;
  rule.exact_degree = g.exact_degree;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      rule.points.emplace_back(g.points[i], g.points[j]);
      rule.weights.push_back(g.weights[i] * g.weights[j]);
    }
  return rule;
}

QuadRule tri_rule(int degree) {
  if (degree > 20) throw ParameterError("tri_rule: unsupported degree " + std::to_string(degree));
  degree = std::max(degree, 0);
  // x = u (1 - v), y = v on (0,1)^2, Jacobian (1 - v): degree d integrand has
  // degree d in u and d + 1 in v.
  const int n = (degree + 3) / 2;
  const auto g = gauss_interval(n);
  QuadRule rule;
  rule.exact_degree = degree;
  for (int j = 0; j < n; ++j) {
    const double v = 0.5 * (g.points[j] + 1.0);
    const double wv = 0.5 * g.weights[j];
    for (int i = 0; i < n; ++i) {
      const double u = 0.5 * (g.points[i] + 1.0);
      const double wu = 0.5 * g.weights[i];
      rule.points.emplace_back(u * (1.0 - v), v);
      rule.weights.push_back(wu * wv * (1.0 - v));
    }
  }
  return rule;
}

QuadRule cell_rule(CellShape shape, int degree) {
  if (shape == CellShape::Rectangle) return rect_rule(std::max(1, (degree + 2) / 2));
  return tri_rule(degree);
}

QuadRule1D unit_interval_rule(int degree) {
  auto rule = gauss_interval(std::max(1, (degree + 2) / 2));
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    rule.points[i] = 0.5 * (rule.points[i] + 1.0);
    rule.weights[i] *= 0.5;
  }
  return rule;
}

}  // namespace h2curl
