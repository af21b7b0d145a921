#include "h2curl/analysis.hpp"

#include <cmath>
#include <numbers>

#include "h2curl/error.hpp"
#include "h2curl/parallel.hpp"

namespace h2curl {

double sin3_derivative(int k, double t) {
  // sin^3(a) = (3 sin a - sin 3a) / 4
  const double pi = std::numbers::pi;
  const double shift = k * pi / 2.0;
  return (3.0 * std::pow(pi, k) * std::sin(pi * t + shift) - std::pow(3.0 * pi, k) * std::sin(3.0 * pi * t + shift)) /
         4.0;
}

ExactSolution manufactured_example1() {
  const auto S = [](int k, double t) { return sin3_derivative(k, t); };
  ExactSolution ex;
  ex.value = [S](const Point& p) -> Eigen::Vector2d {
    return {S(0, p.x()) * S(1, p.y()), -S(1, p.x()) * S(0, p.y())};
  };
  ex.curl = [S](const Point& p) { return -(S(2, p.x()) * S(0, p.y()) + S(0, p.x()) * S(2, p.y())); };
  ex.curlcurl = [S](const Point& p) -> Eigen::Vector2d {
    const double lap_y = S(2, p.x()) * S(1, p.y()) + S(0, p.x()) * S(3, p.y());
    const double lap_x = S(3, p.x()) * S(0, p.y()) + S(1, p.x()) * S(2, p.y());
    return {-lap_y, lap_x};
  };
  ex.f = [S](const Point& p) -> Eigen::Vector2d {
    const double x = p.x(), y = p.y();
    const double bi_y = S(4, x) * S(1, y) + 2.0 * S(2, x) * S(3, y) + S(0, x) * S(5, y);
    const double bi_x = S(5, x) * S(0, y) + 2.0 * S(3, x) * S(2, y) + S(1, x) * S(4, y);
    return {bi_y, -bi_x};
  };
  return ex;
}

namespace {

int default_degree(int k, int degree) { return degree >= 0 ? degree : 2 * k + 6; }

struct Sums {
  double l2 = 0.0, curl = 0.0, curlcurl = 0.0;
};

template <class PointTerm>
Sums integrate_cells(const H2CurlSpace& space, const Eigen::VectorXd& coeffs, int degree, PointTerm term) {
  const Tabulation tab = tabulate(space.element(), cell_rule(space.mesh().shape(), default_degree(space.order(), degree)));
  const std::size_t nc = space.mesh().num_cells();
  std::vector<Sums> per_cell(nc);
  parallel_for(nc, [&](std::size_t c) {
    const auto dofs = space.cell_dofs(c);
    const PushedBasis pb = push_basis(tab, space.map(c), dofs);
    Eigen::VectorXd local(static_cast<Eigen::Index>(dofs.size()));
    for (std::size_t i = 0; i < dofs.size(); ++i) local(i) = coeffs(dofs[i].global);
    const Eigen::VectorXd v1 = pb.v1 * local, v2 = pb.v2 * local, cu = pb.curl * local;
    const Eigen::VectorXd c1 = pb.cc1 * local, c2 = pb.cc2 * local;
    Sums s;
    for (std::size_t q = 0; q < pb.points.size(); ++q) {
      FieldValue fv;
      fv.value = {v1(q), v2(q)};
      fv.curl = cu(q);
      fv.curlcurl = {c1(q), c2(q)};
      const FieldValue d = term(pb.points[q], fv);
      const double w = pb.weights(q);
      s.l2 += w * d.value.squaredNorm();
      s.curl += w * d.curl * d.curl;
      s.curlcurl += w * d.curlcurl.squaredNorm();
    }
    per_cell[c] = s;
  });
  Sums total;
  for (const auto& s : per_cell) {
    total.l2 += s.l2;
    total.curl += s.curl;
    total.curlcurl += s.curlcurl;
  }
  return total;
}

ErrorReport to_report(const Sums& s, const H2CurlSpace& space) {
  ErrorReport r;
  r.l2 = std::sqrt(s.l2);
  r.curl = std::sqrt(s.curl);
  r.curlcurl = std::sqrt(s.curlcurl);
  r.h = space.mesh().max_edge_length();
  r.n_dofs = space.size();
  return r;
}

}  // namespace

ErrorReport error_norms(const H2CurlSpace& space, const Eigen::VectorXd& coeffs, const ExactSolution& exact,
                        int degree) {
  const auto sums = integrate_cells(space, coeffs, degree, [&](const Point& x, const FieldValue& fh) {
    FieldValue d;
    d.value = exact.value(x) - fh.value;
    d.curl = exact.curl(x) - fh.curl;
    d.curlcurl = exact.curlcurl(x) - fh.curlcurl;
    return d;
  });
  return to_report(sums, space);
}

ErrorReport fe_norms(const H2CurlSpace& space, const Eigen::VectorXd& coeffs, int degree) {
  return to_report(integrate_cells(space, coeffs, degree, [](const Point&, const FieldValue& fh) { return fh; }), space);
}

double lagrange_error(const LagrangeSpace& space, const Eigen::VectorXd& coeffs,
                      const std::function<double(const Point&)>& w, int degree) {
  const QuadRule rule = cell_rule(space.mesh().shape(), degree >= 0 ? degree : 2 * space.order() + 6);
  double sum = 0.0;
  for (std::size_t c = 0; c < space.mesh().num_cells(); ++c) {
    const AffineMap& map = space.map(c);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double wh = eval_lagrange(space, coeffs, c, rule.points[q]);
      const double d = (w ? w(map(rule.points[q])) : 0.0) - wh;
      sum += rule.weights[q] * std::abs(map.det_B) * d * d;
    }
  }
  return std::sqrt(sum);
}

double lagrange_l2_norm(const LagrangeSpace& space, const Eigen::VectorXd& coeffs, int degree) {
  return lagrange_error(space, coeffs, nullptr, degree);
}

std::vector<double> rates(std::span<const double> errors, std::span<const double> hs) {
  if (errors.size() != hs.size() || errors.size() < 2)
    throw ParameterError("rates: need at least two (error, h) pairs");
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !(errors[i + 1] > 0.0)) throw UndefinedRate("rates: zero error entry");
    if (!(hs[i] > hs[i + 1])) throw ParameterError("rates: h must be strictly decreasing");
    out.push_back(std::log(errors[i] / errors[i + 1]) / std::log(hs[i] / hs[i + 1]));
  }
  return out;
}

double fit_rate(std::span<const double> errors, std::span<const double> hs) {
  if (errors.size() != hs.size() || errors.size() < 2)
    throw ParameterError("fit_rate: need at least two (error, h) pairs");
  Eigen::MatrixXd X(static_cast<Eigen::Index>(hs.size()), 2);
  Eigen::VectorXd y(static_cast<Eigen::Index>(hs.size()));
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (!(errors[i] > 0.0) || !(hs[i] > 0.0)) throw UndefinedRate("fit_rate: nonpositive entry");
    X(static_cast<Eigen::Index>(i), 0) = 1.0;
    X(static_cast<Eigen::Index>(i), 1) = std::log(hs[i]);
    y(static_cast<Eigen::Index>(i)) = std::log(errors[i]);
  }
  return X.colPivHouseholderQr().solve(y)(1);
}

RelativeDiff successive_diff(const H2CurlSpace& coarse, const Eigen::VectorXd& u_coarse, const H2CurlSpace& fine,
                             const Eigen::VectorXd& u_fine, int degree) {
  check_nested(coarse.mesh(), fine.mesh());
  if (coarse.order() != fine.order()) throw SpaceMismatch("successive_diff: orders differ");
  const auto& parent = fine.mesh().parent;
  Sums diff;
  const Sums norm = integrate_cells(fine, u_fine, degree, [](const Point&, const FieldValue& fh) { return fh; });
  const Tabulation tab = tabulate(fine.element(), cell_rule(fine.mesh().shape(), default_degree(fine.order(), degree)));
  const std::size_t nc = fine.mesh().num_cells();
  std::vector<Sums> per_cell(nc);
  parallel_for(nc, [&](std::size_t c) {
    const auto dofs = fine.cell_dofs(c);
    const PushedBasis pb = push_basis(tab, fine.map(c), dofs);
    Eigen::VectorXd local(static_cast<Eigen::Index>(dofs.size()));
    for (std::size_t i = 0; i < dofs.size(); ++i) local(i) = u_fine(dofs[i].global);
    const Eigen::VectorXd v1 = pb.v1 * local, v2 = pb.v2 * local, cu = pb.curl * local;
    const Eigen::VectorXd c1 = pb.cc1 * local, c2 = pb.cc2 * local;
    const std::size_t pc = static_cast<std::size_t>(parent[c]);
    const AffineMap& cmap = coarse.map(pc);
    Sums s;
    for (std::size_t q = 0; q < pb.points.size(); ++q) {
      const FieldValue fc = eval_fe(coarse, u_coarse, pc, cmap.inverse(pb.points[q]));
      const double w = pb.weights(q);
      s.l2 += w * (fc.value - Eigen::Vector2d(v1(q), v2(q))).squaredNorm();
      s.curl += w * std::pow(fc.curl - cu(q), 2);
      s.curlcurl += w * (fc.curlcurl - Eigen::Vector2d(c1(q), c2(q))).squaredNorm();
    }
    per_cell[c] = s;
  });
  for (const auto& s : per_cell) {
    diff.l2 += s.l2;
    diff.curl += s.curl;
    diff.curlcurl += s.curlcurl;
  }
  const auto rel = [](double d, double n) { return n > 0.0 ? std::sqrt(d / n) : std::sqrt(d); };
  return {rel(diff.l2, norm.l2), rel(diff.curl, norm.curl), rel(diff.curlcurl, norm.curlcurl)};
}

std::vector<double> successive_orders(std::span<const double> diffs) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
    if (!(diffs[i] > 0.0) || !(diffs[i + 1] > 0.0)) throw UndefinedRate("successive_orders: zero difference");
    out.push_back(std::log2(diffs[i] / diffs[i + 1]));
  }
  return out;
}

DofCounts dof_counts(int k, int N) {
  if (k < 2 || N < 1) throw ParameterError("dof_counts: need k >= 2 and N >= 1");
  const long long K = k, n = N;
  DofCounts d;
  d.M1 = 2 * (n + 1) * (n + 1) + 6 * K * (n + 1) * n + (3 * K * K - 2 * K) * n * n;
  d.D1 = 2 * n * n * (K * K - 2 * K - 1) - 4 * n - 1;
  d.M2 = 2 * (n + 1) * (n + 1) + 3 * K * (3 * n * n + 2 * n) + (3 * K * K - 5 * K) * n * n;
  d.D2 = 2 * n * n * (K * K - K - 4) - 8 * n - 1;
  return d;
}

}  // namespace h2curl
