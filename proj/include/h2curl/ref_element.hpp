#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "h2curl/cell_shape.hpp"
#include "h2curl/poly2d.hpp"
#include "h2curl/quadrature.hpp"

namespace h2curl {

enum class DofKind { NodeCurl, EdgeMoment, InteriorMoment };

/// Basis of P_{k-1}(e) used as edge test polynomials, in the edge parameter
/// s = 2t - 1 where t in [0,1] runs from the edge's start vertex.
///   Legendre: P_m(s).
///   Monomial: (h s)^m with h = reference_half_extent(shape).
enum class EdgeTestBasis { Legendre, Monomial };

/// One degree of freedom of the element.
///   NodeCurl:       curl(u)(point)
///   EdgeMoment:     int_e u.tau q_index ds
///   InteriorMoment: int_K u.test_field dx
struct DofFunctional {
  DofKind kind = DofKind::NodeCurl;
  Point point = Point::Zero();
  int vertex = -1;  ///< NodeCurl located at a vertex
  int edge = -1;    ///< edge of an edge NodeCurl or an EdgeMoment
  int index = 0;    ///< edge-node ordinal, test polynomial degree or interior test index
  VecPoly2D test_field;
};

/// Vector field with point-evaluable value and scalar curl.
struct VectorField {
  std::function<Eigen::Vector2d(const Point&)> value;
  std::function<double(const Point&)> curl;
};

VectorField as_field(const VecPoly2D& u);

/// The H^2(curl)-conforming reference element: cell, local space and DOFs,
/// plus the dual (nodal) basis obtained by inverting the generalized
/// Vandermonde matrix V_ij = l_i(m_j) over the monomial basis of the space.
class ReferenceElement {
 public:
  /// Element with the standard DOF set for `shape` and order `k`.
  static ReferenceElement build(CellShape shape, int k, EdgeTestBasis edge_basis = EdgeTestBasis::Legendre);

  /// Element with an explicit DOF list. Throws UnisolvenceFailure when the
  /// DOFs do not determine the local space.
  static ReferenceElement from_dofs(CellShape shape, int k, EdgeTestBasis edge_basis,
                                    std::vector<DofFunctional> dofs);

  /// Standard DOF list without building the dual basis.
  static std::vector<DofFunctional> standard_dofs(CellShape shape, int k);

  CellShape shape() const { return shape_; }
  int order() const { return order_; }
  EdgeTestBasis edge_basis() const { return edge_basis_; }
  std::size_t size() const { return dofs_.size(); }

  std::span<const DofFunctional> dofs() const { return dofs_; }
  std::span<const VecPoly2D> dual_basis() const { return dual_; }
  std::span<const Poly2D> dual_curl() const { return dual_curl_; }
  std::span<const VecPoly2D> dual_curlcurl() const { return dual_curlcurl_; }
  std::span<const VecPoly2D> space_basis() const { return space_; }
  double vandermonde_cond() const { return cond_; }

  /// Edge test polynomial of degree m at fraction t along the edge.
  double edge_test(int m, double t) const;

  double apply_dof(std::size_t i, const VectorField& u) const;
  Eigen::VectorXd apply_dofs(const VectorField& u) const;

  /// Generalized Vandermonde matrix over the monomial basis of the space.
  Eigen::MatrixXd vandermonde() const;

  /// NodeCurl DOFs on the closed edge (end vertices included) and the edge's moments.
  std::vector<int> dofs_on_edge(int edge) const;

  std::size_t count(DofKind kind) const;

  const QuadRule1D& edge_rule() const { return edge_rule_; }
  const QuadRule& cell_rule() const { return cell_rule_; }

 private:
  ReferenceElement() = default;

  CellShape shape_ = CellShape::Rectangle;
  int order_ = 0;
  EdgeTestBasis edge_basis_ = EdgeTestBasis::Legendre;
  std::vector<DofFunctional> dofs_;
  std::vector<VecPoly2D> space_;
  std::vector<VecPoly2D> dual_;
  std::vector<Poly2D> dual_curl_;
  std::vector<VecPoly2D> dual_curlcurl_;
  double cond_ = 0.0;
  QuadRule1D edge_rule_;
  QuadRule cell_rule_;
};

ReferenceElement build_rect_element(int k, EdgeTestBasis edge_basis = EdgeTestBasis::Legendre);
ReferenceElement build_tri_element(int k, EdgeTestBasis edge_basis = EdgeTestBasis::Legendre);

struct UnisolvenceReport {
  double cond = 0.0;
  double max_offdiag = 0.0;  ///< max_ij |l_i(phi_j) - delta_ij|
};

UnisolvenceReport verify_unisolvence(const ReferenceElement& el);

/// Random members of the local space whose DOFs attached to `edge` vanish
/// must have zero tangential trace and zero curl on that edge. Returns the
/// largest sampled |u.tau| or |curl u| over 20 edge points per trial.
double verify_trace_determination(const ReferenceElement& el, int edge, int trials,
                                  std::uint64_t seed = 20240607);

/// M_ij = l_i(candidate_j) compared against the nearest permutation matrix.
struct AppendixComparison {
  Eigen::MatrixXd dof_matrix;
  std::vector<int> permutation;  ///< permutation[j] = DOF row matched by candidate j, -1 if none
  std::vector<int> offending_rows;
  double max_error = 0.0;
  bool matches = false;
};

AppendixComparison compare_with_basis(const ReferenceElement& el, std::span<const VecPoly2D> candidates,
                                      double tol = 1e-6);

struct AppendixMatch {
  std::vector<int> permutation;
  double max_error = 0.0;
};

/// Throws AppendixMismatch when M is not within `tol` of a permutation matrix.
AppendixMatch verify_appendix_basis(const ReferenceElement& el, std::span<const VecPoly2D> candidates,
                                    double tol = 1e-6);

}  // namespace h2curl
