#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <iostream>

#include "qelie/commands.hpp"
#include "qelie/error.hpp"

namespace fs = std::filesystem;

namespace {

using Runner = std::function<qelie::CommandResult(const std::string&)>;

int emit(const qelie::CommandResult& r, bool json) {
  if (json) std::cout << r.json.dump(2) << "\n";
  else std::cout << r.text;
  return r.exit_code;
}

int run_paths(const std::string& path, bool all, bool json, const Runner& run) {
  if (!all) return emit(run(path), json);
  if (!fs::is_directory(path)) throw qelie::Error(qelie::Errc::FileNotFound, "'" + path + "' is not a directory");
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(path))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  int code = 0;
  nlohmann::ordered_json batch = nlohmann::ordered_json::array();
  for (const auto& f : files) {
    qelie::CommandResult r;
    try {
      r = run(f);
    } catch (const std::exception& e) {
      r.exit_code = qelie::exit_code_for(e);
      r.text = std::string("error: ") + e.what() + "\n";
      r.json = {{"error", e.what()}};
    }
    code = std::max(code, r.exit_code);
    if (json) batch.push_back({{"file", f}, {"exit_code", r.exit_code}, {"report", r.json}});
    else std::cout << "== " << f << " ==\n" << r.text;
  }
  if (json) std::cout << batch.dump(2) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-Einstein metrics on Lie groups: structure checks, Ricci curvature, solver, catalog, lattices"};
  app.require_subcommand(1);
  app.fallthrough();

  qelie::CommandOptions opts;
  opts.tol = qelie::default_tolerance();
  bool json = false, all = false;
  std::string path;
  app.add_option("--tol", opts.tol, "tolerance (default 1e-9, or QELIE_TOL)")->check(CLI::PositiveNumber);
  app.add_flag("--json", json, "print the machine-readable JSON report instead of text");
  app.add_flag("--all", all, "treat <path> as a directory and process every *.json file in it");

  auto* check = app.add_subcommand("check", "Jacobi, unimodularity, series, center, nilradical");
  check->add_option("path", path, "algebra file")->required();
  auto* ricci = app.add_subcommand("ricci", "Ricci curvature");
  ricci->add_option("path", path, "algebra file")->required();
  ricci->add_option("--formula", opts.formula, "oracle | nilpotent | solvable | standard");
  auto* qe = app.add_subcommand("qe", "totally left-invariant quasi-Einstein solutions");
  qe->add_option("path", path, "algebra file")->required();
  qe->add_option("--m", opts.m, "nonzero parameter m");
  auto* catalog = app.add_subcommand("catalog", "emit catalog algebras");
  catalog->add_option("--family", opts.family, "heisenberg | n6a | n7a | extension | almost-abelian | tables")->required();
  catalog->add_option("--params", opts.params, "key=value list, e.g. s=2,c=1 or t=1 0;0 1");
  catalog->add_option("--emit", opts.emit, "output file (directory for tables)");
  auto* lattice = app.add_subcommand("lattice", "rationality and lattice obstructions");
  lattice->add_option("path", path, "algebra file")->required();
  lattice->add_option("--bound", opts.bound, "brute-force search bound");
  lattice->add_option("--denominator-bound", opts.denominator_bound, "denominator bound for float constants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return run_paths(path, all, json, [&](const std::string& p) { return qelie::cmd_check(p, opts); });
    if (*ricci) return run_paths(path, all, json, [&](const std::string& p) { return qelie::cmd_ricci(p, opts); });
    if (*qe) return run_paths(path, all, json, [&](const std::string& p) { return qelie::cmd_qe(p, opts); });
    if (*lattice) return run_paths(path, all, json, [&](const std::string& p) { return qelie::cmd_lattice(p, opts); });
    if (*catalog) return emit(qelie::cmd_catalog(opts), json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qelie::exit_code_for(e);
  }
  return 2;
}
