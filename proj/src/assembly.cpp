#include "h2curl/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/SparseLU>

#include "h2curl/error.hpp"
#include "h2curl/parallel.hpp"

namespace h2curl {

namespace {

struct LagrangeTabulation {
  Eigen::MatrixXd gx, gy;  // reference gradients, rows = points
};

LagrangeTabulation tabulate_gradients(const LagrangeElement& el, const QuadRule& rule) {
  const auto nq = static_cast<Eigen::Index>(rule.size());
  const auto n = static_cast<Eigen::Index>(el.size());
  LagrangeTabulation tab{Eigen::MatrixXd(nq, n), Eigen::MatrixXd(nq, n)};
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index q = 0; q < nq; ++q) {
      tab.gx(q, j) = el.gradients()[j].u1(rule.points[q]);
      tab.gy(q, j) = el.gradients()[j].u2(rule.points[q]);
    }
  return tab;
}

std::vector<int> free_indices(const std::vector<char>& mask) {
  std::vector<int> out;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (!mask[i]) out.push_back(static_cast<int>(i));
  return out;
}

SparseMatrix restrict_to(const SparseMatrix& M, const std::vector<int>& rows, const std::vector<int>& cols,
                         Eigen::Index n_cols_full) {
  std::vector<int> col_map(static_cast<std::size_t>(n_cols_full), -1);
  for (std::size_t j = 0; j < cols.size(); ++j) col_map[cols[j]] = static_cast<int>(j);
  std::vector<Eigen::Triplet<double>> trips;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (SparseMatrix::InnerIterator it(M, rows[i]); it; ++it)
      if (const int j = col_map[it.col()]; j >= 0) trips.emplace_back(static_cast<int>(i), j, it.value());
  SparseMatrix R(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  R.setFromTriplets(trips.begin(), trips.end());
  return R;
}

}  // namespace

SaddleSystem assemble(const H2CurlSpace& V, const LagrangeSpace& S, const VectorFunction& f,
                      const AssemblyOptions& options) {
  require_same_mesh(V.mesh(), S.mesh());
  const int k = V.order();
  const CellShape shape = V.mesh().shape();
  const Tabulation tab_a = tabulate(V.element(), cell_rule(shape, options.matrix_degree >= 0 ? options.matrix_degree
                                                                                             : 2 * k + 2));
  const Tabulation tab_f = tabulate(V.element(), cell_rule(shape, options.load_degree >= 0 ? options.load_degree
                                                                                           : 2 * k + 6));
  const LagrangeTabulation tab_s = tabulate_gradients(S.element(), tab_a.rule);

  const std::size_t nc = V.mesh().num_cells();
  std::vector<Eigen::MatrixXd> Ak(nc), Bk(nc);
  std::vector<Eigen::VectorXd> Fk(nc);
  parallel_for(nc, [&](std::size_t c) {
    const AffineMap& map = V.map(c);
    const auto dofs = V.cell_dofs(c);
    const PushedBasis pa = push_basis(tab_a, map, dofs);
    const auto& w = pa.weights;
    Ak[c] = pa.cc1.transpose() * w.asDiagonal() * pa.cc1 + pa.cc2.transpose() * w.asDiagonal() * pa.cc2;

    const Eigen::Matrix2d Bit = map.B.inverse().transpose();
    const Eigen::MatrixXd gx = Bit(0, 0) * tab_s.gx + Bit(0, 1) * tab_s.gy;
    const Eigen::MatrixXd gy = Bit(1, 0) * tab_s.gx + Bit(1, 1) * tab_s.gy;
    Bk[c] = gx.transpose() * w.asDiagonal() * pa.v1 + gy.transpose() * w.asDiagonal() * pa.v2;

    const PushedBasis pf = push_basis(tab_f, map, dofs);
    Eigen::VectorXd f1(pf.points.size()), f2(pf.points.size());
    for (std::size_t q = 0; q < pf.points.size(); ++q) {
      const Eigen::Vector2d fq = f(pf.points[q]);
      f1(q) = fq.x() * pf.weights(q);
      f2(q) = fq.y() * pf.weights(q);
    }
    Fk[c] = pf.v1.transpose() * f1 + pf.v2.transpose() * f2;
  });

  // Sequential scatter in cell order.
  SaddleSystem sys;
  const auto nV = static_cast<Eigen::Index>(V.size());
  const auto nS = static_cast<Eigen::Index>(S.size());
  std::vector<Eigen::Triplet<double>> ta, tb;
  sys.rhs = Eigen::VectorXd::Zero(nV);
  for (std::size_t c = 0; c < nc; ++c) {
    const auto vd = V.cell_dofs(c);
    const auto sd = S.cell_dofs(c);
    for (std::size_t i = 0; i < vd.size(); ++i) {
      sys.rhs(vd[i].global) += Fk[c](i);
      for (std::size_t j = 0; j < vd.size(); ++j) ta.emplace_back(vd[i].global, vd[j].global, Ak[c](i, j));
    }
    for (std::size_t m = 0; m < sd.size(); ++m)
      for (std::size_t j = 0; j < vd.size(); ++j) tb.emplace_back(sd[m], vd[j].global, Bk[c](m, j));
  }
  sys.A.resize(nV, nV);
  sys.A.setFromTriplets(ta.begin(), ta.end());
  sys.B.resize(nS, nV);
  sys.B.setFromTriplets(tb.begin(), tb.end());

  sys.free_u = free_indices(V.boundary_mask());
  sys.free_p = free_indices(S.boundary_mask());
  sys.A_free = restrict_to(sys.A, sys.free_u, sys.free_u, nV);
  sys.B_free = restrict_to(sys.B, sys.free_p, sys.free_u, nV);
  sys.rhs_free.resize(static_cast<Eigen::Index>(sys.free_u.size()));
  for (std::size_t i = 0; i < sys.free_u.size(); ++i) sys.rhs_free(i) = sys.rhs(sys.free_u[i]);
  return sys;
}

Eigen::SparseMatrix<double> block_matrix(const SaddleSystem& sys) {
  const auto nu = sys.A_free.rows();
  const auto np = sys.B_free.rows();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(sys.A_free.nonZeros() + 2 * sys.B_free.nonZeros()));
  for (Eigen::Index i = 0; i < nu; ++i)
    for (SparseMatrix::InnerIterator it(sys.A_free, i); it; ++it) trips.emplace_back(i, it.col(), it.value());
  for (Eigen::Index i = 0; i < np; ++i)
    for (SparseMatrix::InnerIterator it(sys.B_free, i); it; ++it) {
      trips.emplace_back(nu + i, it.col(), it.value());
      trips.emplace_back(it.col(), nu + i, it.value());
    }
  Eigen::SparseMatrix<double> K(nu + np, nu + np);
  K.setFromTriplets(trips.begin(), trips.end());
  K.makeCompressed();
  return K;
}

SaddleSolution solve(const SaddleSystem& sys) {
  const auto nu = sys.A_free.rows();
  const auto np = sys.B_free.rows();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(nu + np);
  b.head(nu) = sys.rhs_free;

  SaddleSolution sol;
  sol.u = Eigen::VectorXd::Zero(sys.A.rows());
  sol.p = Eigen::VectorXd::Zero(sys.B.rows());
  if (b.norm() == 0.0) return sol;

  // Symmetric equilibration D K D (D from row max norms); graded meshes spread
  // the entries over many orders of magnitude.
  Eigen::SparseMatrix<double> K = block_matrix(sys);
  Eigen::VectorXd d = Eigen::VectorXd::Zero(K.rows());
  for (Eigen::Index j = 0; j < K.outerSize(); ++j)
    for (Eigen::SparseMatrix<double>::InnerIterator it(K, j); it; ++it)
      d(it.row()) = std::max(d(it.row()), std::abs(it.value()));
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!(d(i) > 0.0)) throw SingularSystem("saddle system has an empty row");
    d(i) = 1.0 / std::sqrt(d(i));
  }
  K = d.asDiagonal() * K * d.asDiagonal();
  const Eigen::VectorXd bs = d.cwiseProduct(b);

  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(K);
  lu.factorize(K);
  if (lu.info() != Eigen::Success) throw SingularSystem("sparse LU failed: " + lu.lastErrorMessage());
  Eigen::VectorXd y = lu.solve(bs);
  if (lu.info() != Eigen::Success) throw SingularSystem("sparse LU solve failed");
  // normwise backward error ||r|| / (||K|| ||y|| + ||b||), infinity norms
  Eigen::VectorXd row_sum = Eigen::VectorXd::Zero(K.rows());
  for (Eigen::Index j = 0; j < K.outerSize(); ++j)
    for (Eigen::SparseMatrix<double>::InnerIterator it(K, j); it; ++it) row_sum(it.row()) += std::abs(it.value());
  const double K_norm = row_sum.maxCoeff();
  const auto backward_error = [&](const Eigen::VectorXd& r) {
    return r.lpNorm<Eigen::Infinity>() / (K_norm * y.lpNorm<Eigen::Infinity>() + bs.lpNorm<Eigen::Infinity>());
  };
  Eigen::VectorXd r = bs - K * y;
  sol.residual = backward_error(r);
  for (int it = 0; it < 2 && sol.residual >= 1e-15; ++it) {
    y += lu.solve(r);
    r = bs - K * y;
    sol.residual = backward_error(r);
  }
  if (!(sol.residual < 1e-10)) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "saddle system backward error %.3e exceeds 1e-10", sol.residual);
    throw SingularSystem(msg);
  }
  const Eigen::VectorXd x = d.cwiseProduct(y);
  for (Eigen::Index i = 0; i < nu; ++i) sol.u(sys.free_u[i]) = x(i);
  for (Eigen::Index i = 0; i < np; ++i) sol.p(sys.free_p[i]) = x(nu + i);
  return sol;
}

void write_coo(std::ostream& out, const SparseMatrix& M) {
  out.precision(17);
  for (Eigen::Index i = 0; i < M.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(M, i); it; ++it) out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
}

}  // namespace h2curl
