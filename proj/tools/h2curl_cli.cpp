// Experiment driver. Writes CSV to stdout or --output; --markdown renders a table.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "h2curl/error.hpp"
#include "h2curl/experiments.hpp"
#include "h2curl/parallel.hpp"

namespace {

// "2..5" or "16,24,32"
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    for (int i = lo; i <= hi; ++i) out.push_back(i);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"H2(curl) finite elements: element checks and convergence studies"};
  app.require_subcommand(1);

  std::string shape = "rect", sizes, ks, expect, output;
  int k = 0;
  double kappa = 0.245, tol = 0.2;
  bool markdown = false;
  int threads = 0;
  std::string data_dir = h2curl::default_data_dir();

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--output,-o", output, "write the table here instead of stdout");
    sub->add_flag("--markdown", markdown, "render a markdown table instead of CSV");
    sub->add_option("--threads", threads, "worker threads (default $H2CURL_THREADS or 1)");
  };
  const auto shaped = [&](CLI::App* sub) {
    sub->add_option("--shape", shape, "rect or tri")->check(CLI::IsMember({"rect", "tri"}));
    sub->add_option("--k", k, "element order (k >= 3 rect, k >= 4 tri)");
  };

  auto* verify = app.add_subcommand("verify-element", "duality, trace and basis-file checks for one element");
  shaped(verify);
  verify->add_option("--data-dir", data_dir, "directory with the basis coefficient files");
  common(verify);

  auto* interp = app.add_subcommand("interp-study", "interpolation errors of the Example-1 field");
  shaped(interp);
  interp->add_option("--n", sizes, "mesh sizes N (h = 1/N), e.g. 4,8,16,32")->required();
  interp->add_option("--expect", expect, "expected last-row rates l2,curl,curlcurl");
  interp->add_option("--tol", tol, "rate tolerance");
  common(interp);

  auto* solve = app.add_subcommand("solve-example1", "quad-curl problem with the manufactured solution");
  shaped(solve);
  solve->add_option("--n", sizes, "mesh sizes N (h = 1/N)")->required();
  solve->add_option("--expect", expect, "expected last-row rates l2,curl,curlcurl");
  solve->add_option("--tol", tol, "rate tolerance");
  common(solve);

  auto* lshape = app.add_subcommand("solve-lshape", "successive differences on graded L-shape meshes (triangles)");
  lshape->add_option("--k", k, "element order (>= 4)");
  lshape->add_option("--levels", sizes, "refinement levels, e.g. 1..4")->required();
  lshape->add_option("--kappa", kappa, "grading parameter in (0, 0.5]");
  lshape->add_option("--expect", expect, "expected orders l2,curl,curlcurl of the last row with an order");
  lshape->add_option("--tol", tol, "order tolerance");
  common(lshape);

  auto* dofs = app.add_subcommand("dof-table", "DOF-count formulas against the built spaces");
  dofs->add_option("--k", ks, "table orders (k >= 2), e.g. 2..5")->required();
  dofs->add_option("--n", sizes, "mesh sizes N")->required();
  common(dofs);

  CLI11_PARSE(app, argc, argv);

  h2curl::RunConfig config;
  config.shape = shape == "tri" ? h2curl::CellShape::Triangle : h2curl::CellShape::Rectangle;
  config.kappa = kappa;
  config.tolerance = tol;
  config.data_dir = data_dir;
  config.threads = threads > 0 ? threads : h2curl::thread_count_from_env();
  try {
    if (!sizes.empty()) config.sizes = parse_int_list(sizes);
    if (!expect.empty()) config.expect = parse_double_list(expect);
    if (verify->parsed()) config.command = h2curl::Command::VerifyElement;
    if (interp->parsed()) config.command = h2curl::Command::InterpStudy;
    if (solve->parsed()) config.command = h2curl::Command::SolveExample1;
    if (lshape->parsed()) {
      config.command = h2curl::Command::SolveLshape;
      config.shape = h2curl::CellShape::Triangle;
    }
    if (dofs->parsed()) {
      config.command = h2curl::Command::DofTable;
      config.table_ks = parse_int_list(ks);
    }
    config.k = k > 0 ? k : (config.shape == h2curl::CellShape::Triangle ? 4 : 3);
  } catch (const std::exception& e) {
    std::cerr << "error: bad list argument: " << e.what() << "\n";
    return 2;
  }

  h2curl::RunResult result;
  try {
    result = h2curl::run(config);
  } catch (const h2curl::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const h2curl::OrderTooLow& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return 1;
  }

  const std::string text = markdown ? h2curl::to_markdown(result.table) : h2curl::to_csv(result.table);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "error: cannot write " << output << "\n";
      return 2;
    }
    out << text;
  }
  for (const auto& m : result.messages) std::cerr << (result.passed ? "note: " : "check failed: ") << m << "\n";
  return result.passed ? 0 : 1;
}
