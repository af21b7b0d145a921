#include "h2curl/appendix.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "h2curl/error.hpp"

namespace h2curl {

namespace {

double parse_rational(const std::string& s, int line) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return std::stod(s);
    return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
  } catch (const std::exception&) {
    throw ParameterError("appendix line " + std::to_string(line) + ": bad coefficient '" + s + "'");
  }
}

}  // namespace

AppendixBasis load_appendix(std::istream& in) {
  AppendixBasis out;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "shape") {
      std::string s;
      ls >> s;
      if (s == "rect") out.shape = CellShape::Rectangle;
      else if (s == "tri") out.shape = CellShape::Triangle;
      else throw ParameterError("appendix line " + std::to_string(line) + ": unknown shape " + s);
    } else if (head == "order") {
      ls >> out.order;
    } else if (head == "phi") {
      int index = 0;
      ls >> index;
      if (index != static_cast<int>(out.functions.size()) + 1)
        throw ParameterError("appendix line " + std::to_string(line) + ": functions must be numbered 1, 2, ...");
      out.functions.emplace_back();
    } else {
      int comp = std::stoi(head);
      int i = -1, j = -1;
      std::string coef;
      if (!(ls >> i >> j >> coef) || i < 0 || j < 0 || (comp != 1 && comp != 2) || out.functions.empty())
        throw ParameterError("appendix line " + std::to_string(line) + ": malformed term");
      auto term = Poly2D::monomial(i, j, parse_rational(coef, line));
      (comp == 1 ? out.functions.back().u1 : out.functions.back().u2) += term;
    }
  }
  return out;
}

AppendixBasis load_appendix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path.string());
  return load_appendix(in);
}

}  // namespace h2curl
