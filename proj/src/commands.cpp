#include "qelie/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "qelie/algebra.hpp"
#include "qelie/catalog.hpp"
#include "qelie/curvature.hpp"
#include "qelie/document.hpp"
#include "qelie/error.hpp"
#include "qelie/lattice.hpp"
#include "qelie/qe.hpp"

namespace qelie {

namespace {

using ojson = nlohmann::ordered_json;

ojson num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round15(v);
}

ojson vec_json(const Vector& v) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

ojson mat_json(const Matrix& M) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) a.push_back(vec_json(M.row(i).transpose()));
  return a;
}

std::string vec_str(const Vector& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_number(v(i));
  return s + "]";
}

template <class T>
std::string list_str(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

ojson check_json(const Check& c) {
  return ojson{{"name", c.name},         {"passed", c.passed},     {"residual", num(c.residual)},
               {"tolerance", num(c.tolerance)}, {"quantity", c.quantity}, {"citation", c.citation}};
}

ojson verdict_json(const VerdictReport& r) {
  ojson checks = ojson::array();
  for (const auto& c : r.checks) checks.push_back(check_json(c));
  return ojson{{"title", r.title}, {"all_passed", r.all_passed()}, {"checks", checks}, {"notes", r.notes}};
}

void verdict_text(std::ostream& o, const VerdictReport& r) {
  o << r.title << ": " << (r.all_passed() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : r.checks)
    o << "  " << (c.passed ? "pass" : "FAIL") << " " << c.name << "  residual " << format_number(c.residual)
      << " (tol " << format_number(c.tolerance) << ")  " << c.quantity << "  [" << c.citation << "]\n";
  for (const auto& n : r.notes) o << "  note: " << n << "\n";
}

std::string header(const AlgebraDocument& doc) {
  return "algebra: " + doc.name + " (dim " + std::to_string(doc.basis.size()) + ", " +
         (doc.algebra.is_exact() ? "exact" : "float") + ")\n";
}

std::map<std::string, std::string> parse_params(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(Errc::BadFlags, "parameter '" + item + "' is not key=value");
    auto key = item.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    out[key] = item.substr(eq + 1);
  }
  return out;
}

CoefficientMatrix parse_matrix(const std::string& text) {
  CoefficientMatrix M;
  std::stringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::stringstream cells(row);
    std::string cell;
    std::vector<Coefficient> r;
    while (cells >> cell) r.push_back(Coefficient::parse(cell));
    M.push_back(std::move(r));
  }
  return M;
}

SignFlags parse_signs(const std::string& text) {
  if (text.size() != 4) throw Error(Errc::BadFlags, "signs must be four characters of + or -");
  SignFlags s{};
  for (int i = 0; i < 4; ++i) {
    if (text[i] != '+' && text[i] != '-') throw Error(Errc::BadFlags, "signs must be four characters of + or -");
    s[i] = text[i] == '+' ? 1 : -1;
  }
  return s;
}

class Params {
 public:
  Params(std::map<std::string, std::string> p, std::vector<std::string> allowed) : p_(std::move(p)) {
    for (const auto& [k, v] : p_)
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
        throw Error(Errc::BadFlags, "unknown parameter '" + k + "'");
  }
  Coefficient coeff(const std::string& k, const Coefficient& dflt) const {
    auto it = p_.find(k);
    return it == p_.end() ? dflt : Coefficient::parse(it->second);
  }
  int integer(const std::string& k, int dflt) const {
    auto it = p_.find(k);
    if (it == p_.end()) return dflt;
    const Coefficient c = Coefficient::parse(it->second);
    if (!c.is_exact() || c.exact().get_den() != 1) throw Error(Errc::BadFlags, "'" + k + "' must be an integer");
    return static_cast<int>(c.exact().get_num().get_si());
  }
  std::optional<std::string> text(const std::string& k) const {
    auto it = p_.find(k);
    if (it == p_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::map<std::string, std::string> p_;
};

CatalogEntry build_family(const std::string& family, const std::string& params) {
  const auto raw = parse_params(params);
  if (family == "heisenberg") {
    Params p(raw, {"s", "c"});
    return make_heisenberg(p.integer("s", 1), p.coeff("c", 1));
  }
  if (family == "n6a" || family == "n7a") {
    Params p(raw, {"a", "c", "signs"});
    const SignFlags signs = p.text("signs") ? parse_signs(*p.text("signs")) : kPlusSigns;
    return family == "n6a" ? make_n6a(p.coeff("a", 1), p.coeff("c", 2), signs)
                           : make_n7a(p.coeff("a", 1), p.coeff("c", 2), signs);
  }
  if (family == "extension") {
    Params p(raw, {"s", "c", "t"});
    const int s = p.integer("s", 1);
    const auto t = p.text("t") ? parse_matrix(*p.text("t")) : CoefficientMatrix{std::vector<Coefficient>(s, Coefficient(1))};
    return make_heisenberg_extension(s, p.coeff("c", 1), t);
  }
  if (family == "almost-abelian") {
    Params p(raw, {"A"});
    if (!p.text("A")) throw Error(Errc::BadFlags, "almost-abelian needs A=<rows>");
    return make_almost_abelian(parse_matrix(*p.text("A")));
  }
  throw Error(Errc::BadFlags, "unknown family '" + family +
                                  "' (heisenberg, n6a, n7a, extension, almost-abelian, tables)");
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::FileNotFound, "cannot write '" + path.string() + "'");
  out << content;
}

}  // namespace

double default_tolerance() {
  if (const char* env = std::getenv("QELIE_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && std::isfinite(v) && v > 0) return v;
  }
  return kDefaultTol;
}

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->code()) {
      case Errc::ParseError:
      case Errc::ValidationError:
      case Errc::FileNotFound:
      case Errc::BadFlags:
      case Errc::BadParams:
        return 2;
      default:
        return 1;
    }
  }
  return 1;
}

CommandResult cmd_check(const std::string& path, const CommandOptions& opts) {
  const auto doc = load_algebra(path);
  const auto& L = doc.algebra;
  const double tol = opts.tol;
  CommandResult r;
  std::ostringstream o;
  o << header(doc);

  const double jac = jacobi_residual(L);
  const bool jac_ok = L.is_exact() ? jac == 0.0 : jac <= tol;
  o << "jacobi: " << (jac_ok ? "pass" : "FAIL") << " (residual " << format_number(jac) << ")\n";
  const bool uni = is_unimodular(L, tol);
  o << "unimodular: " << yes_no(uni) << " (max |tr ad| " << format_number(max_ad_trace(L)) << ")\n";
  const auto lcs = series(L, SeriesKind::LowerCentral, tol);
  const auto der = series(L, SeriesKind::Derived, tol);
  o << "lower central series: " << list_str(lcs.dims()) << " -> " << to_string(lcs.verdict);
  if (lcs.verdict != SeriesVerdict::Neither) o << (lcs.verdict == SeriesVerdict::Nilpotent ? " step " : " length ") << lcs.length;
  o << "\n";
  o << "derived series: " << list_str(der.dims()) << " -> " << to_string(der.verdict);
  if (der.verdict == SeriesVerdict::Solvable) o << " length " << der.length;
  o << "\n";
  const Subspace cen = center(L, tol);
  o << "center: dim " << cen.dim() << "\n";

  ojson nil_json = nullptr;
  if (der.verdict == SeriesVerdict::Solvable) {
    try {
      const Subspace nil = nilradical_solvable(L, tol);
      o << "nilradical: dim " << nil.dim() << "\n";
      nil_json = ojson{{"dim", nil.dim()}, {"basis", mat_json(nil.basis().transpose())}};
    } catch (const Error& e) {
      o << "nilradical: " << e.what() << "\n";
      nil_json = ojson{{"error", e.what()}};
    }
  } else {
    o << "nilradical: not applicable (not solvable)\n";
  }

  r.text = o.str();
  r.json = ojson{{"command", "check"},
                 {"algebra", doc.name},
                 {"dim", L.dim()},
                 {"exact", L.is_exact()},
                 {"jacobi", {{"passed", jac_ok}, {"residual", num(jac)}}},
                 {"unimodular", {{"value", uni}, {"max_trace", num(max_ad_trace(L))}}},
                 {"lower_central", {{"dims", lcs.dims()}, {"verdict", to_string(lcs.verdict)}, {"length", lcs.length}}},
                 {"derived", {{"dims", der.dims()}, {"verdict", to_string(der.verdict)}, {"length", der.length}}},
                 {"center", {{"dim", cen.dim()}, {"basis", mat_json(cen.basis().transpose())}}},
                 {"nilradical", nil_json}};
  r.exit_code = jac_ok ? 0 : 1;
  return r;
}

CommandResult cmd_ricci(const std::string& path, const CommandOptions& opts) {
  const auto& f = opts.formula;
  if (f != "oracle" && f != "nilpotent" && f != "solvable" && f != "standard")
    throw Error(Errc::BadFlags, "--formula must be oracle, nilpotent, solvable or standard");
  const auto doc = load_algebra(path);
  const auto& L = doc.algebra;
  const double tol = opts.tol;
  const CurvatureReport oracle = ricci_oracle(L, tol);
  CurvatureReport rep = oracle;
  if (f == "nilpotent") rep = ricci_nilpotent(L, tol);
  if (f == "solvable") rep = ricci_unimodular_solvable(L, tol);
  if (f == "standard") {
    const auto split = nilradical_split(L, tol);
    rep = ricci_standard_split(L, split.a, split.n, tol);
  }
  const double scale = std::max(1.0, oracle.ricci.size() ? oracle.ricci.cwiseAbs().maxCoeff() : 0.0);
  const double disagreement = rep.ricci.size() ? (rep.ricci - oracle.ricci).cwiseAbs().maxCoeff() : 0.0;
  const bool agree = disagreement <= tol * scale;

  CommandResult r;
  std::ostringstream o;
  o << header(doc);
  o << "formula: " << to_string(rep.provenance) << "\n";
  o << "ricci:\n";
  for (Eigen::Index i = 0; i < rep.ricci.rows(); ++i)
    o << "  " << doc.basis[i] << ": " << vec_str(rep.ricci.row(i).transpose()) << "\n";
  o << "eigenvalues: " << vec_str(rep.eigenvalues) << "\n";
  o << "scalar: " << format_number(rep.scalar) << "\n";
  o << "flat: " << yes_no(rep.flat) << "\n";
  o << "oracle disagreement: " << format_number(disagreement) << (agree ? "" : " (exceeds tolerance)") << "\n";
  r.text = o.str();
  r.json = ojson{{"command", "ricci"},         {"algebra", doc.name},
                 {"formula", to_string(rep.provenance)}, {"ricci", mat_json(rep.ricci)},
                 {"eigenvalues", vec_json(rep.eigenvalues)}, {"eigenvectors", mat_json(rep.eigenvectors)},
                 {"scalar", num(rep.scalar)},    {"flat", rep.flat},
                 {"oracle_disagreement", num(disagreement)}, {"agrees", agree}};
  r.exit_code = agree ? 0 : 1;
  return r;
}

CommandResult cmd_qe(const std::string& path, const CommandOptions& opts) {
  if (opts.m == 0.0 || !std::isfinite(opts.m)) throw Error(Errc::BadFlags, "--m must be a nonzero number");
  const auto doc = load_algebra(path);
  const auto& L = doc.algebra;
  const double tol = opts.tol;
  CommandResult r;
  std::ostringstream o;
  o << header(doc) << "m: " << format_number(opts.m) << "\n";
  std::vector<std::string> notes;
  if (!is_unimodular(L, tol)) notes.push_back("algebra is not unimodular; Killing reduction not guaranteed");
  const bool flat = curvature_tensor_norm(L) <= tol;
  if (flat) notes.push_back("metric is flat");

  const auto sols = qe_solve(L, opts.m, tol);
  ojson sj = ojson::array();
  o << "solutions: " << sols.size() << "\n";
  for (const auto& s : sols) {
    o << "  lambda " << format_number(s.lambda) << "  X " << vec_str(s.X) << "  residual " << format_number(s.residual)
      << "  killing " << yes_no(s.X_killing) << "  central " << yes_no(s.X_central) << "  einstein "
      << yes_no(s.einstein) << "\n";
    sj.push_back(ojson{{"lambda", num(s.lambda)}, {"m", num(s.m)}, {"X", vec_json(s.X)}, {"residual", num(s.residual)},
                       {"X_killing", s.X_killing}, {"X_central", s.X_central}, {"einstein", s.einstein}});
  }

  std::vector<VerdictReport> verdicts;
  const auto sol = first_nontrivial(sols);
  const bool nilpotent = is_nilpotent(L, tol);
  if (sol && nilpotent) {
    verdicts.push_back(verify_two_eigenvalue_structure(L, *sol, tol));
    if (auto basis = find_kirillov_basis(L, tol)) verdicts.push_back(verify_nilpotent_structure_theorem(L, *basis, tol));
    else notes.push_back("no (x, y, z, W) partition found in the declared basis; structure theorem not checked");
  }
  if (!nilpotent && !flat && is_solvable(L, tol) && is_unimodular(L, tol)) {
    try {
      const auto split = nilradical_split(L, tol);
      verdicts.push_back(verify_solvable_conditions(L, split.a, split.n, opts.m, tol));
    } catch (const Error& e) {
      notes.push_back(std::string("solvable structure theorem not applicable: ") + e.what());
    }
  }
  for (const auto& v : verdicts) verdict_text(o, v);
  for (const auto& n : notes) o << "note: " << n << "\n";

  ojson vj = ojson::array();
  for (const auto& v : verdicts) vj.push_back(verdict_json(v));
  r.text = o.str();
  r.json = ojson{{"command", "qe"}, {"algebra", doc.name}, {"m", num(opts.m)}, {"flat", flat},
                 {"solutions", sj}, {"verdicts", vj}, {"notes", notes}};
  r.exit_code = (!sols.empty() || flat) ? 0 : 1;
  return r;
}

CommandResult cmd_catalog(const CommandOptions& opts) {
  if (opts.family.empty()) throw Error(Errc::BadFlags, "--family is required");
  CommandResult r;
  std::ostringstream o;
  if (opts.family == "tables") {
    if (!opts.params.empty()) throw Error(Errc::BadFlags, "--family=tables takes no --params");
    const auto rows = tables_report(opts.tol);
    ojson rj = ojson::array();
    bool all_ok = true;
    for (const auto& row : rows) {
      const auto doc = document_from_entry(row.entry);
      std::string file;
      if (!opts.emit.empty()) {
        const auto p = std::filesystem::path(opts.emit) / ("table" + std::to_string(row.table) + "_" + row.entry.name + ".json");
        write_file(p, emit_algebra(doc));
        file = p.string();
      }
      all_ok = all_ok && row.expected_lambda_ok;
      o << "table " << row.table << "  " << row.entry.name << "  expected lambda "
        << format_number(*row.entry.expected.lambda) << "  qe lambda "
        << (row.qe_lambda ? format_number(*row.qe_lambda) : std::string("none")) << "  "
        << (row.expected_lambda_ok ? "ok" : "MISMATCH") << (file.empty() ? "" : "  -> " + file) << "\n";
      ojson item{{"table", row.table},
                 {"name", row.entry.name},
                 {"family", row.entry.family},
                 {"params", row.entry.params},
                 {"expected_lambda", num(*row.entry.expected.lambda)},
                 {"qe_lambda", row.qe_lambda ? num(*row.qe_lambda) : ojson(nullptr)},
                 {"qe", row.qe_lambda.has_value()},
                 {"ok", row.expected_lambda_ok}};
      if (!file.empty()) item["file"] = file;
      rj.push_back(item);
    }
    r.text = o.str();
    r.json = ojson{{"command", "catalog"}, {"family", "tables"}, {"rows", rj}, {"all_ok", all_ok}};
    r.exit_code = all_ok ? 0 : 1;
    return r;
  }
  const auto entry = build_family(opts.family, opts.params);
  const auto doc = document_from_entry(entry);
  const std::string text = emit_algebra(doc);
  r.json = ojson{{"command", "catalog"}, {"family", opts.family}, {"name", entry.name},
                 {"document", ojson::parse(text)}};
  if (!opts.emit.empty()) {
    write_file(opts.emit, text);
    r.text = "wrote " + opts.emit + "\n";
    r.json["file"] = opts.emit;
  } else {
    r.text = text;
  }
  return r;
}

CommandResult cmd_lattice(const std::string& path, const CommandOptions& opts) {
  if (opts.bound < 1) throw Error(Errc::BadFlags, "--bound must be positive");
  if (opts.denominator_bound < 1) throw Error(Errc::BadFlags, "--denominator-bound must be positive");
  const auto doc = load_algebra(path);
  RationalityReport rep = rational_structure_check(doc.algebra, opts.denominator_bound);
  std::vector<std::string> notes;
  if (!rep.all_rational && doc.family && (doc.family->name == "n6a" || doc.family->name == "n7a")) {
    const auto& p = doc.family->params;
    if (p.count("a") && p.count("c")) {
      try {
        const Coefficient a = Coefficient::parse(p.at("a")), c = Coefficient::parse(p.at("c"));
        auto details = rep.details;
        rep = doc.family->name == "n6a" ? n6a_lattice_obstruction(a, c, opts.bound)
                                        : n7a_lattice_obstruction(a, c, opts.bound);
        rep.details.insert(rep.details.begin(), details.begin(), details.end());
      } catch (const Error& e) {
        notes.push_back(std::string("family reduction not applicable: ") + e.what());
      }
    }
  }
  if (rep.verdict == LatticeVerdict::Unknown)
    notes.push_back("declared basis is not rational and no certificate covers this algebra");

  CommandResult r;
  std::ostringstream o;
  o << header(doc);
  o << "verdict: " << to_string(rep.verdict) << "\n";
  o << "all rational: " << yes_no(rep.all_rational) << "\n";
  for (const auto& d : rep.details) o << "  " << d << "\n";
  ojson ob = nullptr;
  if (rep.obstruction) {
    const auto& x = *rep.obstruction;
    o << "obstruction: " << x.equation[0] << " x^2 + " << x.equation[1] << " y^2 = " << x.equation[2] << " z^2, "
      << x.verdict << " (bound " << x.bound << ", found " << x.solutions_found << ")\n";
    o << "  reduction: " << x.reduction << "\n";
    ob = ojson{{"equation", x.equation}, {"verdict", x.verdict}, {"bound", x.bound},
               {"solutions_found", x.solutions_found}, {"reduction", x.reduction}};
    if (x.certificate) {
      const auto& c = *x.certificate;
      o << "  mod-3 certificate: squares mod 3 {" << list_str(c.square_residues) << "}, (x, z) mod 3 forced to (0, 0), "
        << "valuation parities x^2 even, 3y^2 odd, 2z^2 even, " << (c.valid ? "valid" : "INVALID") << "\n";
      ojson xz = ojson::array();
      for (const auto& p : c.admissible_xz) xz.push_back({p[0], p[1]});
      ob["certificate"] = ojson{{"square_residues", c.square_residues},
                                {"admissible_xz", xz},
                                {"admissible_y_after_division", c.admissible_y_after_division},
                                {"valuation_odd", {c.valuation_odd[0], c.valuation_odd[1], c.valuation_odd[2]}},
                                {"valid", c.valid}};
    }
  }
  for (const auto& n : notes) o << "note: " << n << "\n";
  r.text = o.str();
  r.json = ojson{{"command", "lattice"},
                 {"algebra", doc.name},
                 {"verdict", to_string(rep.verdict)},
                 {"all_rational", rep.all_rational},
                 {"witness_basis", rep.witness_basis ? mat_json(*rep.witness_basis) : ojson(nullptr)},
                 {"details", rep.details},
                 {"obstruction", ob},
                 {"notes", notes}};
  r.exit_code = 0;
  return r;
}

}  // namespace qelie
