#include "h2curl/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <algorithm>
#include <filesystem>
#include <map>
#include <memory>
#include <sstream>

#include "h2curl/analysis.hpp"
#include "h2curl/appendix.hpp"
#include "h2curl/assembly.hpp"
#include "h2curl/error.hpp"
#include "h2curl/parallel.hpp"

#ifndef H2CURL_DATA_DIR
#define H2CURL_DATA_DIR "data"
#endif

namespace h2curl {

std::string default_data_dir() { return H2CURL_DATA_DIR; }

namespace {

constexpr const char* kSchema = "h2curl-csv v1";

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

std::string fixed4(const std::optional<double>& v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

std::string join(const std::vector<int>& v, char sep = ' ') {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

int min_order(CellShape shape) { return shape == CellShape::Rectangle ? 3 : 4; }

Mesh2D square_mesh(CellShape shape, int N) {
  return shape == CellShape::Rectangle ? uniform_rect_mesh(N) : uniform_tri_mesh(N);
}

template <class Row>
void fill_rates(std::vector<Row>& rows) {
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double h[2] = {rows[i].h, rows[i + 1].h};
    const double e0[2] = {rows[i].l2, rows[i + 1].l2};
    const double e1[2] = {rows[i].curl, rows[i + 1].curl};
    const double e2[2] = {rows[i].curlcurl, rows[i + 1].curlcurl};
    rows[i + 1].l2_rate = rates(e0, h)[0];
    rows[i + 1].curl_rate = rates(e1, h)[0];
    rows[i + 1].curlcurl_rate = rates(e2, h)[0];
  }
}

void check_expected(const std::vector<std::optional<double>>& observed, const RunConfig& config, RunResult& result) {
  if (config.expect.empty()) return;
  static const char* names[] = {"l2", "curl", "curlcurl"};
  for (std::size_t i = 0; i < config.expect.size() && i < observed.size(); ++i) {
    if (!observed[i]) {
      result.passed = false;
      result.messages.push_back(std::string(names[i]) + ": no rate available");
      continue;
    }
    const double d = std::abs(*observed[i] - config.expect[i]);
    if (d > config.tolerance) {
      result.passed = false;
      result.messages.push_back(std::string(names[i]) + " rate " + fixed4(observed[i]) + " differs from " +
                                fixed4(config.expect[i]) + " by more than " + fixed4(config.tolerance));
    }
  }
}

std::string header_line(const RunConfig& c, const char* command) {
  std::ostringstream os;
  os << kSchema << " command=" << command << " shape=" << to_string(c.shape) << " k_def=" << c.k
     << " k_table=" << c.k - 1;
  return os.str();
}

}  // namespace

void validate(const RunConfig& c) {
  if (c.threads < 1) throw ParameterError("--threads must be >= 1");
  if (c.command == Command::DofTable) {
    if (c.table_ks.empty() || c.sizes.empty()) throw ParameterError("dof-table needs --k and --n");
    for (int k : c.table_ks)
      if (k < 2) throw ParameterError("dof-table orders use the table convention and must be >= 2");
    for (int n : c.sizes)
      if (n < 1) throw ParameterError("mesh sizes must be >= 1");
    return;
  }
  const CellShape shape = c.command == Command::SolveLshape ? CellShape::Triangle : c.shape;
  if (c.k < min_order(shape))
    throw ParameterError(std::string(to_string(shape)) + " elements need k >= " + std::to_string(min_order(shape)));
  if (c.command == Command::VerifyElement) return;
  if (c.sizes.empty()) throw ParameterError("no mesh sizes given");
  for (std::size_t i = 0; i < c.sizes.size(); ++i) {
    if (c.sizes[i] < 1) throw ParameterError("mesh sizes and levels must be >= 1");
    if (i && c.sizes[i] <= c.sizes[i - 1]) throw ParameterError("mesh sizes must be strictly increasing");
  }
  if (c.command == Command::SolveLshape && !(c.kappa > 0.0 && c.kappa <= 0.5))
    throw ParameterError("--kappa must lie in (0, 0.5]");
  if (c.expect.size() > 3) throw ParameterError("at most three expected rates");
}

std::string to_csv(const Table& t) {
  std::string out;
  for (const auto& c : t.comments) out += "# " + c + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
    out += "\n";
  }
  return out;
}

std::string to_markdown(const Table& t) {
  std::string out;
  for (const auto& c : t.comments) out += c + "\n\n";
  out += "|";
  for (const auto& c : t.columns) out += " " + c + " |";
  out += "\n|";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += " --- |";
  out += "\n";
  for (const auto& r : t.rows) {
    out += "|";
    for (const auto& v : r) out += " " + v + " |";
    out += "\n";
  }
  return out;
}

bool is_scaled_permutation(const Eigen::MatrixXd& M, double tol, std::vector<int>* offending) {
  const auto n = M.rows();
  std::vector<int> claimed(static_cast<std::size_t>(M.cols()), 0);
  std::vector<int> bad;
  std::vector<Eigen::Index> pick(static_cast<std::size_t>(n), -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index j = 0;
    const double top = M.row(i).cwiseAbs().maxCoeff(&j);
    int big = 0;
    for (Eigen::Index l = 0; l < M.cols(); ++l)
      if (std::abs(M(i, l)) > tol * top) ++big;
    if (!(top > 0.0) || big != 1) bad.push_back(static_cast<int>(i));
    pick[i] = j;
    ++claimed[j];
  }
  for (Eigen::Index i = 0; i < n; ++i)
    if (claimed[pick[i]] != 1 && std::find(bad.begin(), bad.end(), i) == bad.end()) bad.push_back(static_cast<int>(i));
  std::sort(bad.begin(), bad.end());
  if (offending) *offending = bad;
  return bad.empty();
}

Eigen::MatrixXd triangle_dof_matrix(const std::array<Point, 3>& v, int k, std::span<const VecPoly2D> candidates) {
  const std::array<std::array<int, 2>, 3> edges = {{{0, 1}, {1, 2}, {2, 0}}};
  const auto tests = monomial_basis(VectorSpace::TriInteriorTest, k);
  const auto line = unit_interval_rule(2 * k + 2);
  const auto cell = tri_rule(2 * k + 2);
  Eigen::Matrix2d B;
  B.col(0) = v[1] - v[0];
  B.col(1) = v[2] - v[0];
  const double jac = std::abs(B.determinant());
  const auto n_rows = static_cast<Eigen::Index>(3 * (k - 1) + 3 * k + tests.size());
  Eigen::MatrixXd M(n_rows, static_cast<Eigen::Index>(candidates.size()));
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    const auto& u = candidates[j];
    const Poly2D curl = scalar_curl(u);
    Eigen::Index r = 0;
    for (const auto& p : v) M(r++, j) = curl(p);
    for (const auto& e : edges)
      for (int m = 0; m < k - 2; ++m) {
        const double t = static_cast<double>(m + 1) / (k - 1);
        M(r++, j) = curl((1.0 - t) * v[e[0]] + t * v[e[1]]);
      }
    for (const auto& e : edges) {
      const Point d = v[e[1]] - v[e[0]];
      for (int m = 0; m < k; ++m) {
        double s = 0.0;
        for (std::size_t q = 0; q < line.points.size(); ++q) {
          const double t = line.points[q];
          s += line.weights[q] * u((1.0 - t) * v[e[0]] + t * v[e[1]]).dot(d) * std::pow(2.0 * t - 1.0, m);
        }
        M(r++, j) = s;
      }
    }
    for (const auto& q : tests) {
      double s = 0.0;
      for (std::size_t i = 0; i < cell.size(); ++i) {
        const Point x = v[0] + B * cell.points[i];
        s += cell.weights[i] * jac * u(x).dot(q(x));
      }
      M(r++, j) = s;
    }
  }
  return M;
}

ElementReport verify_element(CellShape shape, int k, const std::string& data_dir) {
  ElementReport rep;
  rep.shape = shape;
  rep.k = k;
  const auto el = ReferenceElement::build(shape, k);
  rep.n_dofs = el.size();
  rep.n_node = el.count(DofKind::NodeCurl);
  rep.n_edge = el.count(DofKind::EdgeMoment);
  rep.n_interior = el.count(DofKind::InteriorMoment);
  const auto uni = verify_unisolvence(el);
  rep.cond = uni.cond;
  rep.max_offdiag = uni.max_offdiag;
  for (int e = 0; e < static_cast<int>(reference_edges(shape).size()); ++e)
    rep.trace_residual = std::max(rep.trace_residual, verify_trace_determination(el, e, 50));

  const std::string file = shape == CellShape::Rectangle ? "appendix_rect_k3.txt" : "appendix_tri_k4.txt";
  const auto path = std::filesystem::path(data_dir) / file;
  if (k != min_order(shape) || !std::filesystem::exists(path)) return rep;
  const auto basis = load_appendix(path);
  rep.has_appendix = true;
  const auto mono = ReferenceElement::build(shape, k, EdgeTestBasis::Monomial);
  const auto cmp = compare_with_basis(mono, basis.functions);
  rep.appendix_match = cmp.matches;
  rep.appendix_error = cmp.max_error;
  rep.appendix_permutation = cmp.permutation;
  rep.appendix_offending_rows = cmp.offending_rows;
  if (shape == CellShape::Triangle && !cmp.matches) {
    rep.alt_checked = true;
    const Eigen::MatrixXd M = triangle_dof_matrix({Point(-1, -1), Point(1, -1), Point(-1, 1)}, k, basis.functions);
    rep.alt_match = is_scaled_permutation(M, 1e-6, &rep.alt_offending_rows);
  }
  return rep;
}

std::vector<ConvergenceRow> interpolation_study(CellShape shape, int k, const std::vector<int>& sizes) {
  const ExactSolution ex = manufactured_example1();
  std::vector<ConvergenceRow> rows;
  for (int N : sizes) {
    const H2CurlSpace V(square_mesh(shape, N), k);
    const Eigen::VectorXd u = interpolate(V, ex.field());
    const ErrorReport err = error_norms(V, u, ex);
    ConvergenceRow row;
    row.N = N;
    row.h = 1.0 / N;
    row.n_dofs = V.size();
    row.l2 = err.l2;
    row.curl = err.curl;
    row.curlcurl = err.curlcurl;
    rows.push_back(row);
  }
  fill_rates(rows);
  return rows;
}

namespace {

double constraint_defect(const SaddleSystem& sys, const Eigen::VectorXd& u) {
  Eigen::VectorXd uf(static_cast<Eigen::Index>(sys.free_u.size()));
  for (std::size_t i = 0; i < sys.free_u.size(); ++i) uf(i) = u(sys.free_u[i]);
  const double scale = sys.B_free.norm() * uf.norm();
  return scale > 0.0 ? (sys.B_free * uf).norm() / scale : 0.0;
}

}  // namespace

std::vector<ConvergenceRow> example1_study(CellShape shape, int k, const std::vector<int>& sizes) {
  const ExactSolution ex = manufactured_example1();
  std::vector<ConvergenceRow> rows;
  for (int N : sizes) {
    Mesh2D mesh = square_mesh(shape, N);
    const LagrangeSpace S(mesh, k);
    const H2CurlSpace V(std::move(mesh), k);
    const SaddleSystem sys = assemble(V, S, ex.f);
    const SaddleSolution sol = solve(sys);
    const ErrorReport err = error_norms(V, sol.u, ex);
    ConvergenceRow row;
    row.N = N;
    row.h = 1.0 / N;
    row.n_dofs = V.size() + S.size();
    row.l2 = err.l2;
    row.curl = err.curl;
    row.curlcurl = err.curlcurl;
    const double u_norm = fe_norms(V, sol.u).l2;
    row.p_ratio = u_norm > 0.0 ? lagrange_l2_norm(S, sol.p) / u_norm : 0.0;
    row.constraint = constraint_defect(sys, sol.u);
    row.residual = sol.residual;
    rows.push_back(row);
  }
  fill_rates(rows);
  return rows;
}

std::vector<LshapeRow> lshape_study(int k, const std::vector<int>& levels, double kappa) {
  const VectorFunction f = [](const Point&) { return Eigen::Vector2d(1.0, 1.0); };
  struct Solved {
    std::unique_ptr<H2CurlSpace> V;
    Eigen::VectorXd u;
    std::size_t n_dofs = 0;
  };
  std::map<int, Solved> solved;
  const auto get = [&](int level) -> const Solved& {
    auto it = solved.find(level);
    if (it != solved.end()) return it->second;
    Mesh2D mesh = graded_lshape_mesh(level, kappa);
    const LagrangeSpace S(mesh, k);
    Solved s;
    s.V = std::make_unique<H2CurlSpace>(std::move(mesh), k);
    s.u = solve(assemble(*s.V, S, f)).u;
    s.n_dofs = s.V->size() + S.size();
    return solved.emplace(level, std::move(s)).first->second;
  };
  std::vector<LshapeRow> rows;
  for (int level : levels) {
    const Solved& coarse = get(level);
    const Solved& fine = get(level + 1);
    const RelativeDiff d = successive_diff(*coarse.V, coarse.u, *fine.V, fine.u);
    LshapeRow row;
    row.level = level;
    row.n_cells = coarse.V->mesh().num_cells();
    row.n_dofs = coarse.n_dofs;
    row.l2 = d.l2;
    row.curl = d.curl;
    row.curlcurl = d.curlcurl;
    rows.push_back(row);
    solved.erase(level);
  }
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    if (rows[i + 1].level != rows[i].level + 1) continue;
    rows[i].l2_order = std::log2(rows[i].l2 / rows[i + 1].l2);
    rows[i].curl_order = std::log2(rows[i].curl / rows[i + 1].curl);
    rows[i].curlcurl_order = std::log2(rows[i].curlcurl / rows[i + 1].curlcurl);
  }
  return rows;
}

RunResult run(const RunConfig& c) {
  validate(c);
  set_thread_count(c.threads);
  RunResult result;
  Table& t = result.table;
  switch (c.command) {
    case Command::VerifyElement: {
      const ElementReport r = verify_element(c.shape, c.k, c.data_dir);
      t.comments.push_back(header_line(c, "verify-element"));
      t.columns = {"shape", "k_def", "k_table", "n_dofs", "n_node", "n_edge", "n_interior", "vandermonde_cond",
                   "max_duality_defect", "max_trace_residual", "appendix", "appendix_detail"};
      std::string status = "n/a", detail;
      if (r.has_appendix) {
        status = r.appendix_match ? "match" : "mismatch";
        detail = r.appendix_match ? "permutation " + join(r.appendix_permutation)
                                  : "rows " + join(r.appendix_offending_rows);
        if (r.alt_checked)
          detail += r.alt_match ? "; (-1,-1)(1,-1)(-1,1): scaled match"
                                : "; (-1,-1)(1,-1)(-1,1): mismatch rows " + join(r.alt_offending_rows);
      }
      t.rows.push_back({to_string(r.shape), std::to_string(r.k), std::to_string(r.k - 1), std::to_string(r.n_dofs),
                        std::to_string(r.n_node), std::to_string(r.n_edge), std::to_string(r.n_interior),
                        num(r.cond), num(r.max_offdiag), num(r.trace_residual), status, detail});
      if (!(r.max_offdiag < 1e-9)) {
        result.passed = false;
        result.messages.push_back("duality defect " + num(r.max_offdiag) + " >= 1e-9");
      }
      if (!(r.trace_residual < 1e-9)) {
        result.passed = false;
        result.messages.push_back("trace residual " + num(r.trace_residual) + " >= 1e-9");
      }
      if (r.has_appendix && r.shape == CellShape::Rectangle && !r.appendix_match) {
        result.passed = false;
        result.messages.push_back("rectangle basis file does not match the DOFs");
      }
      if (r.has_appendix && r.shape == CellShape::Triangle && !r.appendix_match)
        result.messages.push_back("triangle basis file does not match the DOFs (rows " +
                                  join(r.appendix_offending_rows) + ")");
      break;
    }
    case Command::InterpStudy:
    case Command::SolveExample1: {
      const bool solve_run = c.command == Command::SolveExample1;
      const auto rows =
          solve_run ? example1_study(c.shape, c.k, c.sizes) : interpolation_study(c.shape, c.k, c.sizes);
      t.comments.push_back(header_line(c, solve_run ? "solve-example1" : "interp-study"));
      t.columns = {"N", "h", "n_dofs", "l2_err", "l2_rate", "curl_err", "curl_rate", "curlcurl_err", "curlcurl_rate"};
      if (solve_run) t.columns.insert(t.columns.end(), {"p_ratio", "constraint_defect"});
      for (const auto& r : rows) {
        std::vector<std::string> line = {std::to_string(r.N), num(r.h), std::to_string(r.n_dofs), num(r.l2),
                                         fixed4(r.l2_rate), num(r.curl), fixed4(r.curl_rate), num(r.curlcurl),
                                         fixed4(r.curlcurl_rate)};
        if (solve_run) line.insert(line.end(), {num(r.p_ratio), num(r.constraint)});
        t.rows.push_back(std::move(line));
      }
      check_expected({rows.back().l2_rate, rows.back().curl_rate, rows.back().curlcurl_rate}, c, result);
      break;
    }
    case Command::SolveLshape: {
      RunConfig tri = c;
      tri.shape = CellShape::Triangle;
      const auto rows = lshape_study(c.k, c.sizes, c.kappa);
      t.comments.push_back(header_line(tri, "solve-lshape") + " kappa=" + fixed4(c.kappa));
      t.columns = {"level", "n_cells", "n_dofs", "l2_diff", "l2_order", "curl_diff", "curl_order", "curlcurl_diff",
                   "curlcurl_order"};
      for (const auto& r : rows)
        t.rows.push_back({std::to_string(r.level), std::to_string(r.n_cells), std::to_string(r.n_dofs), num(r.l2),
                          fixed4(r.l2_order), num(r.curl), fixed4(r.curl_order), num(r.curlcurl),
                          fixed4(r.curlcurl_order)});
      // the last row has no order; check the last available one
      const LshapeRow& last = rows.size() > 1 ? rows[rows.size() - 2] : rows.back();
      check_expected({last.l2_order, last.curl_order, last.curlcurl_order}, c, result);
      break;
    }
    case Command::DofTable: {
      t.comments.push_back(std::string(kSchema) + " command=dof-table (k is the table order; elements use k_def = k + 1)");
      t.columns = {"k_table", "k_def", "N", "M1", "D1", "D1_positive", "M2", "D2", "D2_positive", "built_rect",
                   "built_tri"};
      for (int k : c.table_ks)
        for (int N : c.sizes) {
          const DofCounts d = dof_counts(k, N);
          const auto built = [&](CellShape shape) {
            Mesh2D mesh = square_mesh(shape, N);
            const LagrangeSpace S(mesh, k + 1);
            const H2CurlSpace V(std::move(mesh), k + 1);
            return static_cast<long long>(V.size() + S.size());
          };
          const long long br = built(CellShape::Rectangle);
          // triangle elements start at k_def = 4
          const bool tri_exists = k + 1 >= min_order(CellShape::Triangle);
          const long long bt = tri_exists ? built(CellShape::Triangle) : d.M2;
          if (br != d.M1 || bt != d.M2) {
            result.passed = false;
            result.messages.push_back("built DOF totals differ from the formulas at k=" + std::to_string(k) +
                                      ", N=" + std::to_string(N));
          }
          t.rows.push_back({std::to_string(k), std::to_string(k + 1), std::to_string(N), std::to_string(d.M1),
                            std::to_string(d.D1), d.D1_positive() ? "yes" : "no", std::to_string(d.M2),
                            std::to_string(d.D2), d.D2_positive() ? "yes" : "no", std::to_string(br),
                            tri_exists ? std::to_string(bt) : "n/a"});
        }
      break;
    }
  }
  return result;
}

}  // namespace h2curl
