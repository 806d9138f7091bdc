#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

gaplab::Complex parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw gaplab::ParseError("--at: expected \"re,im\"");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw gaplab::ParseError("--at: cannot parse \"" + text + "\"");
  }
}

gaplab::cli::GridSpec parse_grid(const std::string& text) {
  gaplab::cli::GridSpec grid;
  std::istringstream is(text);
  std::string token;
  std::vector<std::string> parts;
  while (std::getline(is, token, ',')) parts.push_back(token);
  if (parts.size() != 5)
    throw gaplab::ParseError("--grid: expected \"re0,re1,im0,im1,steps\"");
  try {
    grid.re0 = std::stod(parts[0]);
    grid.re1 = std::stod(parts[1]);
    grid.im0 = std::stod(parts[2]);
    grid.im1 = std::stod(parts[3]);
    grid.steps = std::stoi(parts[4]);
  } catch (const std::exception&) {
    throw gaplab::ParseError("--grid: cannot parse \"" + text + "\"");
  }
  return grid;
}

gaplab::cli::CheckTarget resolve_target(const std::string& file, const std::string& builtin,
                                        const std::string& matrix_spec,
                                        const gaplab::Tolerances& tol) {
  if (!builtin.empty()) return gaplab::cli::builtin_target(builtin, matrix_spec, tol);
  if (!file.empty()) return gaplab::cli::file_target(file, tol);
  throw gaplab::ParseError("need a family file or --builtin");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gaplab - gap metric, graph operators, and holomorphy probes"};
  app.require_subcommand(1);

  std::string file_a, file_b, relative_file, builtin, matrix_spec, mode = "relchar";
  std::string at_text = "0,0", grid_text, out_path, suite = "all";
  std::uint64_t seed = 12345;

  auto* cmd_gap = app.add_subcommand("gap", "gap between two families at a point");
  cmd_gap->add_option("fileA", file_a)->required();
  cmd_gap->add_option("fileB", file_b)->required();
  cmd_gap->add_option("--at", at_text, "evaluation point re,im");

  auto* cmd_charmat = app.add_subcommand("charmat", "characteristic matrix at a point");
  cmd_charmat->add_option("file", file_a)->required();
  cmd_charmat->add_option("--relative", relative_file, "second family for the relative matrix");
  cmd_charmat->add_option("--at", at_text, "evaluation point re,im");

  auto* cmd_check = app.add_subcommand("holo-check", "complex differentiability at a point");
  cmd_check->add_option("file", file_a);
  cmd_check->add_option("--builtin", builtin,
                        "conjugate | resolvent | kernel-line | kernel-line-orthogonal");
  cmd_check->add_option("--matrix", matrix_spec, "matrix for --builtin resolvent");
  cmd_check->add_option("--at", at_text, "probe point re,im")->required();
  cmd_check->add_option("--mode", mode, "relchar | resolution | subspace");

  auto* cmd_scan = app.add_subcommand("holo-scan", "grid scan with CSV output");
  cmd_scan->add_option("file", file_a);
  cmd_scan->add_option("--builtin", builtin);
  cmd_scan->add_option("--matrix", matrix_spec);
  cmd_scan->add_option("--grid", grid_text, "re0,re1,im0,im1,steps")->required();
  cmd_scan->add_option("--out", out_path, "CSV output path")->required();
  cmd_scan->add_option("--mode", mode, "relchar | resolution | subspace");

  auto* cmd_verify = app.add_subcommand("verify", "run the built-in property suites");
  cmd_verify->add_option("--suite", suite, "all | grassmann | graphop | holomorphy");
  cmd_verify->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const gaplab::Tolerances tol = gaplab::tolerances_from_env();
    if (cmd_gap->parsed())
      return gaplab::cli::run_gap(file_a, file_b, parse_point(at_text), tol, std::cout);
    if (cmd_charmat->parsed()) {
      std::optional<std::string> rel;
      if (!relative_file.empty()) rel = relative_file;
      return gaplab::cli::run_charmat(file_a, rel, parse_point(at_text), tol, std::cout);
    }
    if (cmd_check->parsed()) {
      auto target = resolve_target(file_a, builtin, matrix_spec, tol);
      return gaplab::cli::run_holo_check(target, parse_point(at_text), mode, tol, std::cout);
    }
    if (cmd_scan->parsed()) {
      auto target = resolve_target(file_a, builtin, matrix_spec, tol);
      return gaplab::cli::run_holo_scan(target, parse_grid(grid_text), mode, out_path, tol,
                                        std::cout);
    }
    if (cmd_verify->parsed()) return gaplab::cli::run_verify(suite, seed, std::cout);
  } catch (const gaplab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
  return 2;
}
