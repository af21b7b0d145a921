#pragma once

#include <vector>

#include "h2curl/cell_shape.hpp"
#include "h2curl/poly2d.hpp"

namespace h2curl {

struct QuadRule1D {
  std::vector<double> points;
  std::vector<double> weights;
  int exact_degree = 0;
};

struct QuadRule {
  std::vector<Point> points;
  std::vector<double> weights;
  int exact_degree = 0;

  std::size_t size() const { return points.size(); }
};

/// Gauss-Legendre rule with n points on (-1,1); exact to degree 2n-1.
QuadRule1D gauss_interval(int n);

/// Tensor Gauss-Legendre rule on (-1,1)^2 with n points per axis.
QuadRule rect_rule(int n);

/// Rule on the reference triangle exact to `degree` (<= 20), built by the
/// collapsed (Duffy) map of a tensor Gauss rule.
QuadRule tri_rule(int degree);

/// Cheapest shipped rule on the reference cell exact to `degree`.
QuadRule cell_rule(CellShape shape, int degree);

/// Gauss rule on [0,1] exact to `degree`.
QuadRule1D unit_interval_rule(int degree);

}  // namespace h2curl
