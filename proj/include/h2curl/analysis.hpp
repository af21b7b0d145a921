#pragma once

#include <functional>
#include <span>
#include <vector>

#include "h2curl/fespace.hpp"

namespace h2curl {

/// Closed-form field with its curl, curl-curl and quad-curl right-hand side.
struct ExactSolution {
  std::function<Eigen::Vector2d(const Point&)> value;
  std::function<double(const Point&)> curl;
  std::function<Eigen::Vector2d(const Point&)> curlcurl;
  std::function<Eigen::Vector2d(const Point&)> f;

  VectorField field() const { return {value, curl}; }
};

/// u = (d psi/dy, -d psi/dx) with psi = sin^3(pi x) sin^3(pi y) on (0,1)^2.
ExactSolution manufactured_example1();

/// k-th derivative of sin^3(pi t).
double sin3_derivative(int k, double t);

struct ErrorReport {
  double l2 = 0.0;
  double curl = 0.0;
  double curlcurl = 0.0;
  double h = 0.0;
  std::size_t n_dofs = 0;
};

/// L2 norms of u - u_h, curl(u - u_h), curlcurl(u - u_h). degree < 0 means 2k + 6.
ErrorReport error_norms(const H2CurlSpace& space, const Eigen::VectorXd& coeffs, const ExactSolution& exact,
                        int degree = -1);

/// L2 norms of u_h, curl u_h and curlcurl u_h.
ErrorReport fe_norms(const H2CurlSpace& space, const Eigen::VectorXd& coeffs, int degree = -1);

double lagrange_l2_norm(const LagrangeSpace& space, const Eigen::VectorXd& coeffs, int degree = -1);

/// L2 norm of w - I_h w for a Lagrange interpolant I_h w.
double lagrange_error(const LagrangeSpace& space, const Eigen::VectorXd& coeffs,
                      const std::function<double(const Point&)>& w, int degree = -1);

/// slope_i = log(e_i / e_{i+1}) / log(h_i / h_{i+1}).
std::vector<double> rates(std::span<const double> errors, std::span<const double> hs);

/// Least-squares slope of log(error) against log(h).
double fit_rate(std::span<const double> errors, std::span<const double> hs);

/// Relative differences ||u_n - u_{n+1}|| / ||u_{n+1}|| (and for curl and
/// curl-curl) with u_n on the parent mesh of u_{n+1}'s mesh.
struct RelativeDiff {
  double l2 = 0.0;
  double curl = 0.0;
  double curlcurl = 0.0;
};

RelativeDiff successive_diff(const H2CurlSpace& coarse, const Eigen::VectorXd& u_coarse, const H2CurlSpace& fine,
                             const Eigen::VectorXd& u_fine, int degree = -1);

/// log2(d_i / d_{i+1}).
std::vector<double> successive_orders(std::span<const double> diffs);

/// Global DOF totals for an order-k (k >= 2) element pair on an N x N mesh:
/// rectangles (M1) and triangles (M2), and the differences D1, D2 to the
/// comparison methods.
struct DofCounts {
  long long M1 = 0;
  long long D1 = 0;
  long long M2 = 0;
  long long D2 = 0;
  bool D1_positive() const { return D1 > 0; }
  bool D2_positive() const { return D2 > 0; }
};

DofCounts dof_counts(int k, int N);

}  // namespace h2curl
