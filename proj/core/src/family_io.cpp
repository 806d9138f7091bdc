#include "gaplab/family_io.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gaplab {

namespace {

using nlohmann::json;

Complex parse_coefficient(const json& node, const std::string& where) {
  if (node.is_number()) return Complex(node.get<double>(), 0.0);
  if (node.is_array() && node.size() == 2 && node[0].is_number() && node[1].is_number())
    return Complex(node[0].get<double>(), node[1].get<double>());
  throw ParseError(where + ": expected a number or an [re, im] pair");
}

std::vector<Complex> parse_poly(const json& node, const std::string& where) {
  if (!node.is_array() || node.empty())
    throw ParseError(where + ": expected a nonempty coefficient list");
  std::vector<Complex> coeffs;
  coeffs.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i)
    coeffs.push_back(parse_coefficient(node[i], where + "[" + std::to_string(i) + "]"));
  return coeffs;
}

RationalEntry parse_entry(const json& node, const std::string& where) {
  RationalEntry entry;
  if (node.is_number() || (node.is_array() && node.size() == 2 && node[0].is_number())) {
    entry.num = {parse_coefficient(node, where)};
    return entry;
  }
  if (!node.is_object()) throw ParseError(where + ": expected an entry object");
  if (!node.contains("num")) throw ParseError(where + ": missing \"num\"");
  entry.num = parse_poly(node["num"], where + ".num");
  if (node.contains("den")) {
    entry.den = parse_poly(node["den"], where + ".den");
    bool all_zero = true;
    for (const Complex& c : entry.den)
      if (c != Complex(0.0, 0.0)) all_zero = false;
    if (all_zero) throw ParseError(where + ".den: identically zero denominator");
  }
  return entry;
}

RationalMatrixFamily parse_grid(const json& node, Index rows, Index cols,
                                const std::string& name) {
  if (!node.is_array() || static_cast<Index>(node.size()) != rows) {
    std::ostringstream os;
    os << name << ": expected " << rows << " rows";
    throw ParseError(os.str());
  }
  std::vector<RationalEntry> entries;
  entries.reserve(static_cast<std::size_t>(rows * cols));
  for (Index i = 0; i < rows; ++i) {
    const json& row = node[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      std::ostringstream os;
      os << name << "[" << i << "]: expected " << cols << " entries";
      throw ParseError(os.str());
    }
    for (Index j = 0; j < cols; ++j) {
      std::ostringstream os;
      os << name << "[" << i << "][" << j << "]";
      entries.push_back(parse_entry(row[static_cast<std::size_t>(j)], os.str()));
    }
  }
  return RationalMatrixFamily(rows, cols, std::move(entries));
}

Index parse_dim(const json& root, const char* key) {
  if (!root.contains(key) || !root[key].is_number_integer() || root[key].get<Index>() < 0)
    throw ParseError(std::string(key) + ": expected a nonnegative integer");
  return root[key].get<Index>();
}

}  // namespace

FamilyFile parse_family_file(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("family file: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("family file: top level must be an object");

  FamilyFile file;
  file.format_version = root.value("format_version", "");
  if (file.format_version != "1")
    throw ParseError("format_version: expected \"1\"");
  if (!root.contains("kind") || !root["kind"].is_string())
    throw ParseError("kind: expected \"matrix\" or \"graph\"");
  file.kind = root["kind"].get<std::string>();
  file.n1 = parse_dim(root, "n1");
  file.n2 = parse_dim(root, "n2");

  if (file.kind == "matrix") {
    if (!root.contains("entries")) throw ParseError("entries: missing for kind \"matrix\"");
    file.matrix = parse_grid(root["entries"], file.n2, file.n1, "entries");
  } else if (file.kind == "graph") {
    file.k = parse_dim(root, "k");
    if (!root.contains("W") || !root.contains("V"))
      throw ParseError("W/V: missing for kind \"graph\"");
    file.w = parse_grid(root["W"], file.n1, file.k, "W");
    file.v = parse_grid(root["V"], file.n2, file.k, "V");
  } else {
    throw ParseError("kind: expected \"matrix\" or \"graph\", got \"" + file.kind + "\"");
  }
  return file;
}

FamilyFile load_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open family file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_family_file(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

OperatorFamily FamilyFile::to_operator_family(Tolerances tol) const {
  if (kind == "matrix") return OperatorFamily::from_rational(*matrix, tol);
  return OperatorFamily::from_resolution(*w, *v, tol);
}

Tolerances load_tolerances_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open tolerance config: " + path);
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    throw ParseError(path + ": invalid JSON: " + e.what());
  }
  Tolerances tol;
  if (root.contains("rank_tol")) tol.rank_tol = root["rank_tol"].get<double>();
  if (root.contains("cond_max")) tol.cond_max = root["cond_max"].get<double>();
  if (root.contains("cr_tol")) tol.cr_tol = root["cr_tol"].get<double>();
  if (root.contains("gap_tol")) tol.gap_tol = root["gap_tol"].get<double>();
  if (root.contains("fd_steps")) tol.fd_steps = root["fd_steps"].get<std::vector<double>>();
  try {
    tol.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(path + ": " + e.what());
  }
  return tol;
}

Tolerances tolerances_from_env() {
  const char* path = std::getenv("GAPLAB_TOLERANCES");
  if (path == nullptr || *path == '\0') return Tolerances{};
  return load_tolerances_file(path);
}

}  // namespace gaplab
