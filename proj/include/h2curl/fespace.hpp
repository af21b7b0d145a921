#pragma once

#include <functional>
#include <span>
#include <vector>

#include "h2curl/mesh.hpp"
#include "h2curl/quadrature.hpp"
#include "h2curl/ref_element.hpp"

namespace h2curl {

/// Local basis function i of a cell equals scale * (pushed reference dual
/// function i) and carries global DOF `global`.
struct DofRef {
  int global = -1;
  double scale = 1.0;
};

/// Value, curl and curl-curl of a vector field at one point.
struct FieldValue {
  Eigen::Vector2d value = Eigen::Vector2d::Zero();
  double curl = 0.0;
  Eigen::Vector2d curlcurl = Eigen::Vector2d::Zero();
};

/// Global H^2(curl) space on a mesh.
///
/// Numbering: NodeCurl DOFs at vertices (vertex order), NodeCurl DOFs on edges
/// (edge order, then from the low to the high vertex), k tangential moments per
/// edge in global edge orientation, then interior moments cell by cell.
/// Global NodeCurl values are curl(u)(p); the det(B_K) factor of the cell DOF
/// sits in the scale. Reversed edges flip the sign of odd moments, including
/// the tangent flip.
class H2CurlSpace {
 public:
  H2CurlSpace(Mesh2D mesh, int k, EdgeTestBasis edge_basis = EdgeTestBasis::Legendre);

  const Mesh2D& mesh() const { return mesh_; }
  const ReferenceElement& element() const { return element_; }
  int order() const { return element_.order(); }
  std::size_t size() const { return n_global_; }
  std::size_t local_size() const { return element_.size(); }

  std::span<const DofRef> cell_dofs(std::size_t cell) const {
    return {dofs_.data() + cell * local_size(), local_size()};
  }
  /// True when this cell is the first to reference the local DOF's global index.
  bool owns(std::size_t cell, std::size_t local) const { return owner_[cell * local_size() + local] != 0; }

  const AffineMap& map(std::size_t cell) const { return maps_[cell]; }
  const std::vector<int>& boundary_dofs() const { return boundary_; }
  const std::vector<char>& boundary_mask() const { return boundary_mask_; }
  std::size_t count(DofKind kind) const;

 private:
  Mesh2D mesh_;
  ReferenceElement element_;
  std::size_t n_global_ = 0;
  std::vector<DofRef> dofs_;
  std::vector<char> owner_;
  std::vector<AffineMap> maps_;
  std::vector<int> boundary_;
  std::vector<char> boundary_mask_;
};

/// Nodal Lagrange element Q_p (rectangle) or P_p (triangle) on equispaced
/// nodes: vertices, p - 1 nodes per edge from its start vertex, then interior
/// nodes row by row.
class LagrangeElement {
 public:
  LagrangeElement(CellShape shape, int p);

  CellShape shape() const { return shape_; }
  int order() const { return order_; }
  std::size_t size() const { return nodes_.size(); }
  std::span<const Point> nodes() const { return nodes_; }
  std::span<const Poly2D> basis() const { return basis_; }
  std::span<const VecPoly2D> gradients() const { return grad_; }
  std::size_t vertex_nodes() const { return static_cast<std::size_t>(vertex_count(shape_)); }
  std::size_t edge_nodes_per_edge() const { return static_cast<std::size_t>(order_ - 1); }

 private:
  CellShape shape_;
  int order_;
  std::vector<Point> nodes_;
  std::vector<Poly2D> basis_;
  std::vector<VecPoly2D> grad_;
};

/// Continuous Lagrange space of order p; boundary DOFs are the boundary nodes.
class LagrangeSpace {
 public:
  LagrangeSpace(Mesh2D mesh, int p);

  const Mesh2D& mesh() const { return mesh_; }
  const LagrangeElement& element() const { return element_; }
  int order() const { return element_.order(); }
  std::size_t size() const { return n_global_; }
  std::size_t local_size() const { return element_.size(); }
  std::span<const int> cell_dofs(std::size_t cell) const { return {dofs_.data() + cell * local_size(), local_size()}; }
  const AffineMap& map(std::size_t cell) const { return maps_[cell]; }
  const std::vector<int>& boundary_dofs() const { return boundary_; }
  const std::vector<char>& boundary_mask() const { return boundary_mask_; }
  /// Physical coordinates of every global node.
  const std::vector<Point>& node_points() const { return points_; }

 private:
  Mesh2D mesh_;
  LagrangeElement element_;
  std::size_t n_global_ = 0;
  std::vector<int> dofs_;
  std::vector<AffineMap> maps_;
  std::vector<int> boundary_;
  std::vector<char> boundary_mask_;
  std::vector<Point> points_;
};

void require_same_mesh(const Mesh2D& a, const Mesh2D& b);

/// Reference dual-basis values at the points of a rule; column j is basis j.
struct Tabulation {
  QuadRule rule;
  Eigen::MatrixXd v1, v2, curl, cc1, cc2;
};

Tabulation tabulate(const ReferenceElement& el, const QuadRule& rule);

/// Physical basis data on one cell at the mapped rule points:
///   u = B^-T u^, curl u = curl^ u^ / det B, curlcurl u = B curlcurl^ u^ / det(B)^2.
/// `dofs` (optional) multiplies each column by its scale.
struct PushedBasis {
  std::vector<Point> points;
  Eigen::VectorXd weights;  ///< reference weights times |det B|
  Eigen::MatrixXd v1, v2, curl, cc1, cc2;
};

PushedBasis push_basis(const Tabulation& tab, const AffineMap& map, std::span<const DofRef> dofs = {});

/// u^(x^) = B^T u(F(x^)), curl^ u^ = det B curl u(F(x^)).
VectorField pull_back(const VectorField& u, const AffineMap& map);

/// Cell DOFs evaluated directly on the physical cell K = F(K^):
/// det B curl u(F p^); int_e u.tau q ds along F(e^); int_K u.(B q^/det B)(F^-1 x) dx.
/// Edge moments are scaled like the reference ones (edge vector times dt).
Eigen::VectorXd physical_dofs(const ReferenceElement& el, const AffineMap& map, const VectorField& u);

/// Coefficients of the local interpolant in the reference dual basis.
Eigen::VectorXd interpolate_cell(const ReferenceElement& el, const AffineMap& map, const VectorField& u);

/// Global interpolant Pi_h u.
Eigen::VectorXd interpolate(const H2CurlSpace& space, const VectorField& u);

/// Interpolant of a piecewise field given cell by cell (tangentially continuous
/// fields only; shared DOFs are taken from the first cell that sees them).
Eigen::VectorXd interpolate(const H2CurlSpace& space, const std::function<VectorField(std::size_t)>& on_cell);

/// Pushes a reference field value triple through the covariant rules.
FieldValue push_value(const AffineMap& map, const Eigen::Vector2d& v, double curl, const Eigen::Vector2d& cc);

FieldValue eval_fe(const H2CurlSpace& space, const Eigen::VectorXd& coeffs, std::size_t cell, const Point& xhat);

/// The FE function restricted to one cell as a field of physical coordinates.
VectorField fe_field(const H2CurlSpace& space, const Eigen::VectorXd& coeffs, std::size_t cell);

/// Nodal interpolant of a scalar field.
Eigen::VectorXd nodal_interpolate(const LagrangeSpace& space, const std::function<double(const Point&)>& w);

double eval_lagrange(const LagrangeSpace& space, const Eigen::VectorXd& coeffs, std::size_t cell, const Point& xhat);
Eigen::Vector2d eval_lagrange_gradient(const LagrangeSpace& space, const Eigen::VectorXd& coeffs, std::size_t cell,
                                       const Point& xhat);

/// Lagrange interpolant of curl u of order k - 1 on the element's node points
/// (plus interior nodes). The space must have order k - 1.
Eigen::VectorXd lagrange_interp_curl(const LagrangeSpace& space, const VectorField& u);

}  // namespace h2curl
