#include "h2curl/fespace.hpp"

#include <cmath>
#include <string>

#include "h2curl/error.hpp"
#include "h2curl/parallel.hpp"

namespace h2curl {

namespace {

std::vector<AffineMap> all_maps(const Mesh2D& mesh) {
  std::vector<AffineMap> maps(mesh.num_cells());
  for (std::size_t c = 0; c < maps.size(); ++c) maps[c] = affine_map(mesh, c);
  return maps;
}

}  // namespace

H2CurlSpace::H2CurlSpace(Mesh2D mesh, int k, EdgeTestBasis edge_basis)
    : mesh_(std::move(mesh)), element_(ReferenceElement::build(mesh_.shape(), k, edge_basis)) {
  const std::size_t nv = mesh_.vertices.size();
  const std::size_t ne = mesh_.edges.size();
  const std::size_t nc = mesh_.num_cells();
  const std::size_t node_per_edge = static_cast<std::size_t>(k - 2);
  const std::size_t moments = static_cast<std::size_t>(k);
  const std::size_t n_int = element_.count(DofKind::InteriorMoment);
  const std::size_t edge_node_base = nv;
  const std::size_t moment_base = edge_node_base + ne * node_per_edge;
  const std::size_t interior_base = moment_base + ne * moments;
  n_global_ = interior_base + nc * n_int;

  maps_ = all_maps(mesh_);
  const std::size_t nloc = element_.size();
  dofs_.resize(nc * nloc);
  owner_.assign(nc * nloc, 0);
  std::vector<char> seen(n_global_, 0);
  for (std::size_t c = 0; c < nc; ++c) {
    const double det = maps_[c].det_B;
    for (std::size_t i = 0; i < nloc; ++i) {
      const auto& d = element_.dofs()[i];
      DofRef ref;
      switch (d.kind) {
        case DofKind::NodeCurl:
          ref.scale = det;
          if (d.vertex >= 0) {
            ref.global = mesh_.cells[c][d.vertex];
          } else {
            const auto ce = mesh_.cell_edges[c][d.edge];
            const int g = ce.sign > 0 ? d.index : k - 3 - d.index;
            ref.global = static_cast<int>(edge_node_base + ce.edge * node_per_edge + g);
          }
          break;
        case DofKind::EdgeMoment: {
          const auto ce = mesh_.cell_edges[c][d.edge];
          ref.global = static_cast<int>(moment_base + ce.edge * moments + d.index);
          ref.scale = (ce.sign < 0 && d.index % 2 == 0) ? -1.0 : 1.0;
          break;
        }
        case DofKind::InteriorMoment:
          ref.global = static_cast<int>(interior_base + c * n_int + d.index);
          break;
      }
      dofs_[c * nloc + i] = ref;
      if (!seen[ref.global]) {
        seen[ref.global] = 1;
        owner_[c * nloc + i] = 1;
      }
    }
  }

  boundary_mask_.assign(n_global_, 0);
  for (std::size_t v = 0; v < nv; ++v)
    if (mesh_.boundary_vertex[v]) boundary_mask_[v] = 1;
  for (std::size_t e = 0; e < ne; ++e) {
    if (!mesh_.boundary_edge[e]) continue;
    for (std::size_t m = 0; m < node_per_edge; ++m) boundary_mask_[edge_node_base + e * node_per_edge + m] = 1;
    for (std::size_t m = 0; m < moments; ++m) boundary_mask_[moment_base + e * moments + m] = 1;
  }
  for (std::size_t g = 0; g < n_global_; ++g)
    if (boundary_mask_[g]) boundary_.push_back(static_cast<int>(g));
}

std::size_t H2CurlSpace::count(DofKind kind) const {
  const int k = order();
  switch (kind) {
    case DofKind::NodeCurl:
      return mesh_.vertices.size() + mesh_.edges.size() * static_cast<std::size_t>(k - 2);
    case DofKind::EdgeMoment:
      return mesh_.edges.size() * static_cast<std::size_t>(k);
    case DofKind::InteriorMoment:
      return mesh_.num_cells() * element_.count(DofKind::InteriorMoment);
  }
  return 0;
}

LagrangeElement::LagrangeElement(CellShape shape, int p) : shape_(shape), order_(p) {
  if (p < 1) throw ParameterError("Lagrange element order must be >= 1");
  for (const auto& v : reference_vertices(shape)) nodes_.push_back(v);
  for (int e = 0; e < static_cast<int>(reference_edges(shape).size()); ++e)
    for (int m = 1; m < p; ++m) nodes_.push_back(edge_point(shape, e, static_cast<double>(m) / p));
  if (shape == CellShape::Rectangle) {
    for (int j = 1; j < p; ++j)
      for (int i = 1; i < p; ++i) nodes_.emplace_back(-1.0 + 2.0 * i / p, -1.0 + 2.0 * j / p);
  } else {
    for (int j = 1; j < p; ++j)
      for (int i = 1; i + j < p; ++i) nodes_.emplace_back(static_cast<double>(i) / p, static_cast<double>(j) / p);
  }
  const auto monomials = shape == CellShape::Rectangle ? q_basis(p, p) : p_basis(p);
  const auto n = static_cast<Eigen::Index>(monomials.size());
  Eigen::MatrixXd V(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) V(i, j) = monomials[j](nodes_[i]);
  const Eigen::MatrixXd C = V.fullPivLu().inverse();
  for (Eigen::Index i = 0; i < n; ++i) {
    Poly2D phi;
    for (Eigen::Index j = 0; j < n; ++j) phi += C(j, i) * monomials[j];
    grad_.push_back(gradient(phi));
    basis_.push_back(std::move(phi));
  }
}

LagrangeSpace::LagrangeSpace(Mesh2D mesh, int p) : mesh_(std::move(mesh)), element_(mesh_.shape(), p) {
  const std::size_t nv = mesh_.vertices.size();
  const std::size_t ne = mesh_.edges.size();
  const std::size_t nc = mesh_.num_cells();
  const std::size_t per_edge = element_.edge_nodes_per_edge();
  const std::size_t n_edges_local = reference_edges(mesh_.shape()).size();
  const std::size_t nloc = element_.size();
  const std::size_t n_int = nloc - element_.vertex_nodes() - n_edges_local * per_edge;
  const std::size_t interior_base = nv + ne * per_edge;
  n_global_ = interior_base + nc * n_int;

  maps_ = all_maps(mesh_);
  dofs_.resize(nc * nloc);
  points_.assign(n_global_, Point::Zero());
  for (std::size_t c = 0; c < nc; ++c) {
    std::size_t i = 0;
    for (; i < element_.vertex_nodes(); ++i) dofs_[c * nloc + i] = mesh_.cells[c][i];
    for (std::size_t e = 0; e < n_edges_local; ++e) {
      const auto ce = mesh_.cell_edges[c][e];
      for (std::size_t m = 0; m < per_edge; ++m, ++i) {
        const std::size_t g = ce.sign > 0 ? m : per_edge - 1 - m;
        dofs_[c * nloc + i] = static_cast<int>(nv + ce.edge * per_edge + g);
      }
    }
    for (std::size_t j = 0; i < nloc; ++i, ++j) dofs_[c * nloc + i] = static_cast<int>(interior_base + c * n_int + j);
    for (std::size_t l = 0; l < nloc; ++l) points_[dofs_[c * nloc + l]] = maps_[c](element_.nodes()[l]);
  }
  boundary_mask_.assign(n_global_, 0);
  for (std::size_t v = 0; v < nv; ++v)
    if (mesh_.boundary_vertex[v]) boundary_mask_[v] = 1;
  for (std::size_t e = 0; e < ne; ++e)
    if (mesh_.boundary_edge[e])
      for (std::size_t m = 0; m < per_edge; ++m) boundary_mask_[nv + e * per_edge + m] = 1;
  for (std::size_t g = 0; g < n_global_; ++g)
    if (boundary_mask_[g]) boundary_.push_back(static_cast<int>(g));
}

void require_same_mesh(const Mesh2D& a, const Mesh2D& b) {
  if (a.kind != b.kind || a.vertices.size() != b.vertices.size() || a.cells != b.cells)
    throw SpaceMismatch("spaces are defined on different meshes");
}

Tabulation tabulate(const ReferenceElement& el, const QuadRule& rule) {
  Tabulation tab;
  tab.rule = rule;
  const auto nq = static_cast<Eigen::Index>(rule.size());
  const auto n = static_cast<Eigen::Index>(el.size());
  tab.v1.resize(nq, n);
  tab.v2.resize(nq, n);
  tab.curl.resize(nq, n);
  tab.cc1.resize(nq, n);
  tab.cc2.resize(nq, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index q = 0; q < nq; ++q) {
      const Point& x = rule.points[q];
      tab.v1(q, j) = el.dual_basis()[j].u1(x);
      tab.v2(q, j) = el.dual_basis()[j].u2(x);
      tab.curl(q, j) = el.dual_curl()[j](x);
      tab.cc1(q, j) = el.dual_curlcurl()[j].u1(x);
      tab.cc2(q, j) = el.dual_curlcurl()[j].u2(x);
    }
  return tab;
}

PushedBasis push_basis(const Tabulation& tab, const AffineMap& map, std::span<const DofRef> dofs) {
  if (!(map.det_B != 0.0)) throw SingularMap("push_basis: singular map");
  const Eigen::Matrix2d Bit = map.B.inverse().transpose();
  const double det = map.det_B;
  PushedBasis out;
  out.points.reserve(tab.rule.size());
  for (const auto& x : tab.rule.points) out.points.push_back(map(x));
  out.weights = Eigen::Map<const Eigen::VectorXd>(tab.rule.weights.data(), tab.rule.weights.size()) * std::abs(det);
  out.v1 = Bit(0, 0) * tab.v1 + Bit(0, 1) * tab.v2;
  out.v2 = Bit(1, 0) * tab.v1 + Bit(1, 1) * tab.v2;
  out.curl = tab.curl / det;
  const double inv_det2 = 1.0 / (det * det);
  out.cc1 = (map.B(0, 0) * inv_det2) * tab.cc1 + (map.B(0, 1) * inv_det2) * tab.cc2;
  out.cc2 = (map.B(1, 0) * inv_det2) * tab.cc1 + (map.B(1, 1) * inv_det2) * tab.cc2;
  if (!dofs.empty()) {
    for (std::size_t j = 0; j < dofs.size(); ++j) {
      const double s = dofs[j].scale;
      out.v1.col(j) *= s;
      out.v2.col(j) *= s;
      out.curl.col(j) *= s;
      out.cc1.col(j) *= s;
      out.cc2.col(j) *= s;
    }
  }
  return out;
}

VectorField pull_back(const VectorField& u, const AffineMap& map) {
  return {[u, map](const Point& xhat) -> Eigen::Vector2d { return map.B.transpose() * u.value(map(xhat)); },
          [u, map](const Point& xhat) { return map.det_B * u.curl(map(xhat)); }};
}

Eigen::VectorXd physical_dofs(const ReferenceElement& el, const AffineMap& map, const VectorField& u) {
  const CellShape shape = el.shape();
  Eigen::VectorXd out(el.size());
  for (std::size_t i = 0; i < el.size(); ++i) {
    const auto& d = el.dofs()[i];
    double value = 0.0;
    switch (d.kind) {
      case DofKind::NodeCurl:
        value = map.det_B * u.curl(map(d.point));
        break;
      case DofKind::EdgeMoment: {
        const auto& e = reference_edges(shape)[d.edge];
        const Point a = map(reference_vertices(shape)[e[0]]);
        const Point b = map(reference_vertices(shape)[e[1]]);
        const auto& rule = el.edge_rule();
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
          const double t = rule.points[q];
          value += rule.weights[q] * u.value((1.0 - t) * a + t * b).dot(b - a) * el.edge_test(d.index, t);
        }
        break;
      }
      case DofKind::InteriorMoment: {
        const auto& rule = el.cell_rule();
        const double jac = std::abs(map.det_B);
        for (std::size_t q = 0; q < rule.size(); ++q) {
          const Point& xhat = rule.points[q];
          const Eigen::Vector2d test = map.B * d.test_field(xhat) / map.det_B;
          value += rule.weights[q] * jac * u.value(map(xhat)).dot(test);
        }
        break;
      }
    }
    out(static_cast<Eigen::Index>(i)) = value;
  }
  return out;
}

Eigen::VectorXd interpolate_cell(const ReferenceElement& el, const AffineMap& map, const VectorField& u) {
  return el.apply_dofs(pull_back(u, map));
}

Eigen::VectorXd interpolate(const H2CurlSpace& space, const VectorField& u) {
  return interpolate(space, [&u](std::size_t) { return u; });
}

Eigen::VectorXd interpolate(const H2CurlSpace& space, const std::function<VectorField(std::size_t)>& on_cell) {
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.size()));
  parallel_for(space.mesh().num_cells(), [&](std::size_t c) {
    const Eigen::VectorXd local = interpolate_cell(space.element(), space.map(c), on_cell(c));
    const auto dofs = space.cell_dofs(c);
    for (std::size_t i = 0; i < dofs.size(); ++i)
      if (space.owns(c, i)) coeffs(dofs[i].global) = local(static_cast<Eigen::Index>(i)) / dofs[i].scale;
  });
  return coeffs;
}

FieldValue push_value(const AffineMap& map, const Eigen::Vector2d& v, double curl, const Eigen::Vector2d& cc) {
  FieldValue out;
  out.value = map.B.transpose().partialPivLu().solve(v);
  out.curl = curl / map.det_B;
  out.curlcurl = map.B * cc / (map.det_B * map.det_B);
  return out;
}

FieldValue eval_fe(const H2CurlSpace& space, const Eigen::VectorXd& coeffs, std::size_t cell, const Point& xhat) {
  const auto& el = space.element();
  const auto dofs = space.cell_dofs(cell);
  Eigen::Vector2d v = Eigen::Vector2d::Zero();
  Eigen::Vector2d cc = Eigen::Vector2d::Zero();
  double curl = 0.0;
  for (std::size_t i = 0; i < dofs.size(); ++i) {
    const double c = coeffs(dofs[i].global) * dofs[i].scale;
    if (c == 0.0) continue;
    v += c * el.dual_basis()[i](xhat);
    curl += c * el.dual_curl()[i](xhat);
    cc += c * el.dual_curlcurl()[i](xhat);
  }
  return push_value(space.map(cell), v, curl, cc);
}

VectorField fe_field(const H2CurlSpace& space, const Eigen::VectorXd& coeffs, std::size_t cell) {
  const AffineMap map = space.map(cell);
  return {[&space, &coeffs, cell, map](const Point& x) { return eval_fe(space, coeffs, cell, map.inverse(x)).value; },
          [&space, &coeffs, cell, map](const Point& x) { return eval_fe(space, coeffs, cell, map.inverse(x)).curl; }};
}

Eigen::VectorXd nodal_interpolate(const LagrangeSpace& space, const std::function<double(const Point&)>& w) {
  Eigen::VectorXd coeffs(static_cast<Eigen::Index>(space.size()));
  const auto& pts = space.node_points();
  for (std::size_t g = 0; g < pts.size(); ++g) coeffs(static_cast<Eigen::Index>(g)) = w(pts[g]);
  return coeffs;
}

double eval_lagrange(const LagrangeSpace& space, const Eigen::VectorXd& coeffs, std::size_t cell, const Point& xhat) {
  const auto dofs = space.cell_dofs(cell);
  double s = 0.0;
  for (std::size_t i = 0; i < dofs.size(); ++i) s += coeffs(dofs[i]) * space.element().basis()[i](xhat);
  return s;
}

Eigen::Vector2d eval_lagrange_gradient(const LagrangeSpace& space, const Eigen::VectorXd& coeffs, std::size_t cell,
                                       const Point& xhat) {
  const auto dofs = space.cell_dofs(cell);
  Eigen::Vector2d g = Eigen::Vector2d::Zero();
  for (std::size_t i = 0; i < dofs.size(); ++i) g += coeffs(dofs[i]) * space.element().gradients()[i](xhat);
  return space.map(cell).B.transpose().partialPivLu().solve(g);
}

Eigen::VectorXd lagrange_interp_curl(const LagrangeSpace& space, const VectorField& u) {
  return nodal_interpolate(space, u.curl);
}

}  // namespace h2curl
