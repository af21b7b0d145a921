#pragma once

#include <optional>
#include <string>
#include <vector>

#include <array>
#include <span>

#include "h2curl/cell_shape.hpp"
#include "h2curl/poly2d.hpp"

namespace h2curl {

/// Directory holding the shipped basis coefficient files.
std::string default_data_dir();

enum class Command { VerifyElement, InterpStudy, SolveExample1, SolveLshape, DofTable };

struct RunConfig {
  Command command = Command::VerifyElement;
  CellShape shape = CellShape::Rectangle;
  int k = 3;                   ///< element order (definition convention)
  std::vector<int> sizes;      ///< N per mesh (h = 1/N) or levels for the L-shape
  std::vector<int> table_ks;   ///< dof-table orders (table convention, k >= 2)
  double kappa = 0.245;
  int threads = 1;
  /// Expected rates/orders of the last row, checked with `tolerance`.
  std::vector<double> expect;
  double tolerance = 0.2;
  std::string data_dir = default_data_dir();
};

/// Throws ParameterError on invalid ranges.
void validate(const RunConfig& config);

struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const Table& table);
std::string to_markdown(const Table& table);

struct RunResult {
  Table table;
  bool passed = true;
  std::vector<std::string> messages;
};

RunResult run(const RunConfig& config);

struct ConvergenceRow {
  int N = 0;
  double h = 0.0;
  std::size_t n_dofs = 0;
  double l2 = 0.0, curl = 0.0, curlcurl = 0.0;
  std::optional<double> l2_rate, curl_rate, curlcurl_rate;
  double p_ratio = 0.0;     ///< ||p_h|| / ||u_h|| (solver runs)
  double constraint = 0.0;  ///< ||B u|| / (||B||_F ||u||) on free DOFs (solver runs)
  double residual = 0.0;
};

/// Example-1 field interpolated on N x N meshes, h = 1/N.
std::vector<ConvergenceRow> interpolation_study(CellShape shape, int k, const std::vector<int>& sizes);

/// Example-1 quad-curl problem solved on N x N meshes.
std::vector<ConvergenceRow> example1_study(CellShape shape, int k, const std::vector<int>& sizes);

struct ElementReport {
  CellShape shape = CellShape::Rectangle;
  int k = 0;
  std::size_t n_dofs = 0, n_node = 0, n_edge = 0, n_interior = 0;
  double cond = 0.0;
  double max_offdiag = 0.0;
  double trace_residual = 0.0;
  /// Comparison with the shipped basis file, when one exists for (shape, k).
  bool has_appendix = false;
  bool appendix_match = false;
  double appendix_error = 0.0;
  std::vector<int> appendix_permutation;
  std::vector<int> appendix_offending_rows;
  /// Triangle only: row-normalized comparison on (-1,-1), (1,-1), (-1,1).
  bool alt_checked = false;
  bool alt_match = false;
  std::vector<int> alt_offending_rows;
};

ElementReport verify_element(CellShape shape, int k, const std::string& data_dir = default_data_dir());

/// True when every row of M has a single entry above tol * (row max) and
/// these entries sit in distinct columns. Rows failing the test are listed.
bool is_scaled_permutation(const Eigen::MatrixXd& M, double tol, std::vector<int>* offending = nullptr);

/// Native DOFs of the order-k triangle element on an arbitrary triangle
/// (curl at nodes, int u.(b - a) (2t - 1)^m dt on edges, interior moments
/// against the interior test fields in the triangle's own coordinates)
/// applied to each candidate.
Eigen::MatrixXd triangle_dof_matrix(const std::array<Point, 3>& vertices, int k,
                                    std::span<const VecPoly2D> candidates);

struct LshapeRow {
  int level = 0;
  std::size_t n_cells = 0;
  std::size_t n_dofs = 0;
  double l2 = 0.0, curl = 0.0, curlcurl = 0.0;  ///< relative differences to level + 1
  std::optional<double> l2_order, curl_order, curlcurl_order;
};

/// Solves with f = (1,1) on graded L-shape meshes at each level and level + 1.
std::vector<LshapeRow> lshape_study(int k, const std::vector<int>& levels, double kappa);

}  // namespace h2curl
