#include "h2curl/ref_element.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "h2curl/error.hpp"

namespace h2curl {

VectorField as_field(const VecPoly2D& u) {
  auto curl = scalar_curl(u);
  return {[u](const Point& p) { return u(p); }, [curl = std::move(curl)](const Point& p) { return curl(p); }};
}

namespace {

int minimum_order(CellShape shape) { return shape == CellShape::Rectangle ? 3 : 4; }

// Monomials about the centroid on the triangle; R_k is translation invariant
// and the centred basis keeps the Vandermonde matrix far better conditioned.
std::vector<VecPoly2D> local_space(CellShape shape, int k) {
  if (shape == CellShape::Rectangle) return monomial_basis(VectorSpace::RectLocal, k);
  auto basis = monomial_basis(VectorSpace::TriLocal, k);
  for (auto& b : basis) {
    b.u1 = substitute_scaled(b.u1, 1.0 / 3.0, 1.0 / 3.0, 3.0);
    b.u2 = substitute_scaled(b.u2, 1.0 / 3.0, 1.0 / 3.0, 3.0);
  }
  return basis;
}

double legendre(int m, double s) {
  double p0 = 1.0, p1 = s;
  if (m == 0) return p0;
  for (int n = 2; n <= m; ++n) {
    const double p2 = ((2.0 * n - 1.0) * s * p1 - (n - 1.0) * p0) / n;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

std::vector<DofFunctional> ReferenceElement::standard_dofs(CellShape shape, int k) {
  if (k < minimum_order(shape))
    throw OrderTooLow(std::string(to_string(shape)) + " element requires k >= " +
                      std::to_string(minimum_order(shape)) + ", got " + std::to_string(k));
  std::vector<DofFunctional> dofs;
  const auto verts = reference_vertices(shape);
  const auto edges = reference_edges(shape);
  for (int v = 0; v < static_cast<int>(verts.size()); ++v) {
    DofFunctional d;
    d.kind = DofKind::NodeCurl;
    d.point = verts[v];
    d.vertex = v;
    dofs.push_back(d);
  }
  // k - 2 interior points of the uniform subdivision of each edge into k - 1 pieces.
  for (int e = 0; e < static_cast<int>(edges.size()); ++e)
    for (int m = 0; m < k - 2; ++m) {
      DofFunctional d;
      d.kind = DofKind::NodeCurl;
      d.point = edge_point(shape, e, static_cast<double>(m + 1) / (k - 1));
      d.edge = e;
      d.index = m;
      dofs.push_back(d);
    }
  for (int e = 0; e < static_cast<int>(edges.size()); ++e)
    for (int m = 0; m < k; ++m) {
      DofFunctional d;
      d.kind = DofKind::EdgeMoment;
      d.edge = e;
      d.index = m;
      d.point = edge_point(shape, e, 0.5);
      dofs.push_back(d);
    }
  const auto tests =
      monomial_basis(shape == CellShape::Rectangle ? VectorSpace::RectInteriorTest : VectorSpace::TriInteriorTest, k);
  // Triangle tests are scaled to unit mean square on the cell; the raw
  // monomials are tiny there and blow up the interior dual functions.
  const QuadRule rule = shape == CellShape::Triangle ? tri_rule(2 * k) : QuadRule{};
  for (int i = 0; i < static_cast<int>(tests.size()); ++i) {
    DofFunctional d;
    d.kind = DofKind::InteriorMoment;
    d.index = i;
    d.test_field = tests[i];
    if (shape == CellShape::Triangle) {
      double ms = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q) ms += rule.weights[q] * tests[i](rule.points[q]).squaredNorm();
      d.test_field *= 1.0 / std::sqrt(ms / reference_measure(shape));
    }
    dofs.push_back(d);
  }
  return dofs;
}

ReferenceElement ReferenceElement::build(CellShape shape, int k, EdgeTestBasis edge_basis) {
  return from_dofs(shape, k, edge_basis, standard_dofs(shape, k));
}

ReferenceElement ReferenceElement::from_dofs(CellShape shape, int k, EdgeTestBasis edge_basis,
                                             std::vector<DofFunctional> dofs) {
  if (k < minimum_order(shape))
    throw OrderTooLow(std::string(to_string(shape)) + " element requires k >= " +
                      std::to_string(minimum_order(shape)));
  ReferenceElement el;
  el.shape_ = shape;
  el.order_ = k;
  el.edge_basis_ = edge_basis;
  el.dofs_ = std::move(dofs);
  el.space_ = local_space(shape, k);
  // Integrands are at most degree 2k+1 for DOFs applied to the local space.
  el.edge_rule_ = unit_interval_rule(2 * k + 2);
  el.cell_rule_ = h2curl::cell_rule(shape, 2 * k + 2);

  const auto n = static_cast<Eigen::Index>(el.space_.size());
  if (static_cast<Eigen::Index>(el.dofs_.size()) != n) {
    std::ostringstream msg;
    msg << "DOF count " << el.dofs_.size() << " differs from space dimension " << n;
    throw UnisolvenceFailure(msg.str());
  }

  const Eigen::MatrixXd V = el.vandermonde();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(V);
  const auto& sigma = svd.singularValues();
  const double smax = sigma(0);
  const double smin = sigma(n - 1);
  if (!(smin > 1e-12 * smax))
    throw UnisolvenceFailure("generalized Vandermonde matrix is singular (sigma_min/sigma_max = " +
                             std::to_string(smin / smax) + ")");
  el.cond_ = smax / smin;

  const auto lu = V.fullPivLu();
  Eigen::MatrixXd C = lu.inverse();
  C += lu.solve(Eigen::MatrixXd::Identity(n, n) - V * C);
  el.dual_.reserve(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    VecPoly2D phi;
    for (Eigen::Index l = 0; l < n; ++l)
      if (C(l, j) != 0.0) phi += C(l, j) * el.space_[l];
    el.dual_.push_back(std::move(phi));
  }
  for (const auto& phi : el.dual_) {
    el.dual_curl_.push_back(scalar_curl(phi));
    el.dual_curlcurl_.push_back(vector_curl(el.dual_curl_.back()));
  }
  return el;
}

double ReferenceElement::edge_test(int m, double t) const {
  const double s = 2.0 * t - 1.0;
  if (edge_basis_ == EdgeTestBasis::Legendre) return legendre(m, s);
  return std::pow(reference_half_extent(shape_) * s, m);
}

double ReferenceElement::apply_dof(std::size_t i, const VectorField& u) const {
  const auto& d = dofs_[i];
  switch (d.kind) {
    case DofKind::NodeCurl:
      return u.curl(d.point);
    case DofKind::EdgeMoment: {
      // tau ds = (end - start) dt
      const Point ev = edge_vector(shape_, d.edge);
      double sum = 0.0;
      for (std::size_t q = 0; q < edge_rule_.points.size(); ++q) {
        const double t = edge_rule_.points[q];
        sum += edge_rule_.weights[q] * u.value(edge_point(shape_, d.edge, t)).dot(ev) * edge_test(d.index, t);
      }
      return sum;
    }
    case DofKind::InteriorMoment: {
      double sum = 0.0;
      for (std::size_t q = 0; q < cell_rule_.size(); ++q) {
        const Point& x = cell_rule_.points[q];
        sum += cell_rule_.weights[q] * u.value(x).dot(d.test_field(x));
      }
      return sum;
    }
  }
  return 0.0;
}

Eigen::VectorXd ReferenceElement::apply_dofs(const VectorField& u) const {
  Eigen::VectorXd out(dofs_.size());
  for (std::size_t i = 0; i < dofs_.size(); ++i) out(i) = apply_dof(i, u);
  return out;
}

Eigen::MatrixXd ReferenceElement::vandermonde() const {
  const auto n = static_cast<Eigen::Index>(space_.size());
  Eigen::MatrixXd V(static_cast<Eigen::Index>(dofs_.size()), n);
  for (Eigen::Index j = 0; j < n; ++j) V.col(j) = apply_dofs(as_field(space_[j]));
  return V;
}

std::vector<int> ReferenceElement::dofs_on_edge(int edge) const {
  const auto& e = reference_edges(shape_)[edge];
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(dofs_.size()); ++i) {
    const auto& d = dofs_[i];
    const bool on_vertex = d.kind == DofKind::NodeCurl && (d.vertex == e[0] || d.vertex == e[1]);
    const bool on_edge = d.kind != DofKind::InteriorMoment && d.edge == edge;
    if (on_vertex || on_edge) out.push_back(i);
  }
  return out;
}

std::size_t ReferenceElement::count(DofKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(dofs_.begin(), dofs_.end(), [kind](const auto& d) { return d.kind == kind; }));
}

ReferenceElement build_rect_element(int k, EdgeTestBasis edge_basis) {
  return ReferenceElement::build(CellShape::Rectangle, k, edge_basis);
}

ReferenceElement build_tri_element(int k, EdgeTestBasis edge_basis) {
  return ReferenceElement::build(CellShape::Triangle, k, edge_basis);
}

UnisolvenceReport verify_unisolvence(const ReferenceElement& el) {
  const Eigen::MatrixXd V = el.vandermonde();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(V);
  const auto& sigma = svd.singularValues();
  const double smin = sigma(sigma.size() - 1);
  if (!(smin > 1e-12 * sigma(0))) throw UnisolvenceFailure("generalized Vandermonde matrix is rank deficient");
  UnisolvenceReport report;
  report.cond = sigma(0) / smin;
  const auto n = static_cast<Eigen::Index>(el.size());
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::VectorXd col = el.apply_dofs(as_field(el.dual_basis()[j]));
    for (Eigen::Index i = 0; i < n; ++i)
      report.max_offdiag = std::max(report.max_offdiag, std::abs(col(i) - (i == j ? 1.0 : 0.0)));
  }
  return report;
}

double verify_trace_determination(const ReferenceElement& el, int edge, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const auto on_edge = el.dofs_on_edge(edge);
  const Point ev = edge_vector(el.shape(), edge);
  const Point tau = ev.normalized();
  constexpr int kSamples = 20;
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    VecPoly2D u;
    for (std::size_t j = 0; j < el.size(); ++j) {
      const double c = coef(rng);
      if (std::find(on_edge.begin(), on_edge.end(), static_cast<int>(j)) != on_edge.end()) continue;
      u += c * el.dual_basis()[j];
    }
    const Poly2D curl = scalar_curl(u);
    for (int s = 0; s < kSamples; ++s) {
      const Point p = edge_point(el.shape(), edge, static_cast<double>(s) / (kSamples - 1));
      worst = std::max({worst, std::abs(u(p).dot(tau)), std::abs(curl(p))});
    }
  }
  return worst;
}

AppendixComparison compare_with_basis(const ReferenceElement& el, std::span<const VecPoly2D> candidates, double tol) {
  const auto n = static_cast<Eigen::Index>(el.size());
  if (static_cast<Eigen::Index>(candidates.size()) != n)
    throw ParameterError("candidate basis has " + std::to_string(candidates.size()) + " members, element has " +
                         std::to_string(n) + " DOFs");
  AppendixComparison cmp;
  cmp.dof_matrix.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) cmp.dof_matrix.col(j) = el.apply_dofs(as_field(candidates[j]));

  // Each DOF row should be a unit vector; rows that are, claim their column.
  cmp.permutation.assign(n, -1);
  std::vector<int> claims(n, 0);
  std::vector<Eigen::Index> pick(n, 0);
  std::vector<double> row_defect(n, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    cmp.dof_matrix.row(i).cwiseAbs().maxCoeff(&pick[i]);
    Eigen::RowVectorXd unit = Eigen::RowVectorXd::Zero(n);
    unit(pick[i]) = 1.0;
    row_defect[i] = (cmp.dof_matrix.row(i) - unit).cwiseAbs().maxCoeff();
    cmp.max_error = std::max(cmp.max_error, row_defect[i]);
    if (row_defect[i] <= tol) ++claims[pick[i]];
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (row_defect[i] > tol || claims[pick[i]] != 1) {
      cmp.offending_rows.push_back(static_cast<int>(i));
      continue;
    }
    cmp.permutation[pick[i]] = static_cast<int>(i);
  }
  cmp.matches = cmp.offending_rows.empty();
  return cmp;
}

AppendixMatch verify_appendix_basis(const ReferenceElement& el, std::span<const VecPoly2D> candidates, double tol) {
  auto cmp = compare_with_basis(el, candidates, tol);
  if (!cmp.matches) {
    std::ostringstream msg;
    msg << "basis is not dual to the " << to_string(el.shape()) << " k=" << el.order()
        << " DOFs up to a permutation; offending DOF rows:";
    for (int r : cmp.offending_rows) msg << ' ' << r;
    msg << " (max deviation " << cmp.max_error << ")";
    throw AppendixMismatch(msg.str(), cmp.offending_rows, cmp.max_error);
  }
  return {cmp.permutation, cmp.max_error};
}

}  // namespace h2curl
