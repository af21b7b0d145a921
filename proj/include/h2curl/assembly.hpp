#pragma once

#include <functional>
#include <ostream>
#include <vector>

#include <Eigen/Sparse>

#include "h2curl/fespace.hpp"

namespace h2curl {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using VectorFunction = std::function<Eigen::Vector2d(const Point&)>;

/// Blocks of the mixed curl-curl system
///   a(u,v) = (curl curl u, curl curl v),  b(v,p) = (v, grad p),  rhs = (f, v)
/// on all global DOFs, plus the blocks restricted to the free DOFs.
struct SaddleSystem {
  SparseMatrix A;  ///< V x V
  SparseMatrix B;  ///< S x V
  Eigen::VectorXd rhs;
  std::vector<int> free_u;  ///< reduced index -> global V index
  std::vector<int> free_p;  ///< reduced index -> global S index
  SparseMatrix A_free;
  SparseMatrix B_free;
  Eigen::VectorXd rhs_free;
};

struct AssemblyOptions {
  int matrix_degree = -1;  ///< default 2k + 2
  int load_degree = -1;    ///< default 2k + 6
};

SaddleSystem assemble(const H2CurlSpace& V, const LagrangeSpace& S, const VectorFunction& f,
                      const AssemblyOptions& options = {});

struct SaddleSolution {
  Eigen::VectorXd u;  ///< global V coefficients, zero on boundary DOFs
  Eigen::VectorXd p;  ///< global S coefficients
  double residual = 0.0;  ///< normwise backward error of the equilibrated reduced system
};

/// Sparse LU of the symmetrically equilibrated [[A, B^T], [B, 0]] on the free
/// DOFs. Throws SingularSystem when the factorization fails or the backward
/// error exceeds 1e-10.
SaddleSolution solve(const SaddleSystem& sys);

/// Reduced block matrix [[A, B^T], [B, 0]].
Eigen::SparseMatrix<double> block_matrix(const SaddleSystem& sys);

/// `i j value` lines, zero based.
void write_coo(std::ostream& out, const SparseMatrix& M);

}  // namespace h2curl
