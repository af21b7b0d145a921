#pragma once

// Checks shared by the unit tests and the acceptance run.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "h2curl/fespace.hpp"
#include "h2curl/quadrature.hpp"

namespace h2curl::checks {

/// u = sum of (A sin(a.x + p), B cos(b.x + q)) terms with random parameters.
inline VectorField random_trig_field(std::mt19937_64& rng, int terms = 3, double max_freq = 2.5) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  struct Term {
    double A, B, p, q;
    Eigen::Vector2d a, b;
  };
  std::vector<Term> ts;
  for (int i = 0; i < terms; ++i)
    ts.push_back({U(rng), U(rng), 3.0 * U(rng), 3.0 * U(rng), max_freq * Eigen::Vector2d(U(rng), U(rng)),
                  max_freq * Eigen::Vector2d(U(rng), U(rng))});
  VectorField f;
  f.value = [ts](const Point& x) {
    Eigen::Vector2d v = Eigen::Vector2d::Zero();
    for (const auto& t : ts) v += Eigen::Vector2d(t.A * std::sin(t.a.dot(x) + t.p), t.B * std::cos(t.b.dot(x) + t.q));
    return v;
  };
  f.curl = [ts](const Point& x) {
    double c = 0.0;
    for (const auto& t : ts) c += -t.B * t.b.x() * std::sin(t.b.dot(x) + t.q) - t.A * t.a.y() * std::cos(t.a.dot(x) + t.p);
    return c;
  };
  return f;
}

/// Random affine map with det B in a moderate positive range.
inline AffineMap random_affine_map(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  AffineMap F;
  for (;;) {
    F.B << 1.0 + 0.6 * U(rng), 0.6 * U(rng), 0.6 * U(rng), 1.0 + 0.6 * U(rng);
    F.B *= 0.2 + 0.8 * (0.5 + 0.5 * U(rng));
    F.det_B = F.B.determinant();
    if (F.det_B > 0.05 * F.B.squaredNorm()) break;
  }
  F.b = Eigen::Vector2d(2.0 * U(rng), 2.0 * U(rng));
  return F;
}

/// Sum_j c_j phi^_j pushed to the cell F(K^) as a field of physical coordinates.
inline VectorField pushed_field(const ReferenceElement& el, const AffineMap& F, const Eigen::VectorXd& c) {
  const auto eval = [&el, F, c](const Point& x) {
    const Point xh = F.inverse(x);
    Eigen::Vector2d v = Eigen::Vector2d::Zero(), cc = Eigen::Vector2d::Zero();
    double curl = 0.0;
    for (std::size_t j = 0; j < el.size(); ++j) {
      v += c(j) * el.dual_basis()[j](xh);
      curl += c(j) * el.dual_curl()[j](xh);
      cc += c(j) * el.dual_curlcurl()[j](xh);
    }
    return push_value(F, v, curl, cc);
  };
  return {[eval](const Point& x) { return eval(x).value; }, [eval](const Point& x) { return eval(x).curl; }};
}

/// Largest jump of u.tau and curl u across interior edges over every global
/// basis function, sampled at n points per edge.
inline double max_trace_jump(const H2CurlSpace& V, int n = 20) {
  const Mesh2D& mesh = V.mesh();
  std::vector<std::vector<int>> edge_cells(mesh.edges.size());
  for (std::size_t c = 0; c < mesh.num_cells(); ++c)
    for (int i = 0; i < mesh.vertices_per_cell(); ++i) edge_cells[mesh.cell_edges[c][i].edge].push_back(static_cast<int>(c));
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(V.size()));
  double worst = 0.0;
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    if (mesh.boundary_edge[e]) continue;
    const int c0 = edge_cells[e].at(0), c1 = edge_cells[e].at(1);
    const Point a = mesh.vertices[mesh.edges[e][0]], b = mesh.vertices[mesh.edges[e][1]];
    const Point tau = (b - a).normalized();
    std::vector<int> globals;
    for (int c : {c0, c1})
      for (const auto& d : V.cell_dofs(c)) globals.push_back(d.global);
    std::sort(globals.begin(), globals.end());
    globals.erase(std::unique(globals.begin(), globals.end()), globals.end());
    for (int g : globals) {
      coeffs(g) = 1.0;
      for (int i = 0; i < n; ++i) {
        const Point x = a + (i + 0.5) / n * (b - a);
        const FieldValue u0 = eval_fe(V, coeffs, c0, V.map(c0).inverse(x));
        const FieldValue u1 = eval_fe(V, coeffs, c1, V.map(c1).inverse(x));
        worst = std::max({worst, std::abs((u0.value - u1.value).dot(tau)), std::abs(u0.curl - u1.curl)});
      }
      coeffs(g) = 0.0;
    }
  }
  return worst;
}

/// Relative mismatch between the curl of a field and a central difference of its value.
inline double curl_fd_mismatch(const VectorField& u, const Point& x, double h = 1e-5) {
  const Eigen::Vector2d ex(h, 0.0), ey(0.0, h);
  const double fd = (u.value(x + ex).y() - u.value(x - ex).y()) / (2 * h) - (u.value(x + ey).x() - u.value(x - ey).x()) / (2 * h);
  const double c = u.curl(x);
  return std::abs(fd - c) / std::max(1.0, std::abs(c));
}

/// Curl interpolation comparison on the reference cell: returns
/// (||curl Pi u - I curl u||, ||curl u - I curl u||) with I the nodal
/// interpolant onto the Lagrange element of order k - 1.
inline std::pair<double, double> interpolation_curl_pair(const ReferenceElement& el, const VectorField& u) {
  const LagrangeElement lag(el.shape(), el.order() - 1);
  const Eigen::VectorXd c = el.apply_dofs(u);
  Eigen::VectorXd w(static_cast<Eigen::Index>(lag.size()));
  for (std::size_t i = 0; i < lag.size(); ++i) w(i) = u.curl(lag.nodes()[i]);
  const QuadRule rule = cell_rule(el.shape(), 20);
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Point& x = rule.points[q];
    double pi_curl = 0.0, i_curl = 0.0;
    for (std::size_t j = 0; j < el.size(); ++j) pi_curl += c(j) * el.dual_curl()[j](x);
    for (std::size_t i = 0; i < lag.size(); ++i) i_curl += w(i) * lag.basis()[i](x);
    lhs += rule.weights[q] * (pi_curl - i_curl) * (pi_curl - i_curl);
    rhs += rule.weights[q] * (u.curl(x) - i_curl) * (u.curl(x) - i_curl);
  }
  return {std::sqrt(lhs), std::sqrt(rhs)};
}

}  // namespace h2curl::checks
