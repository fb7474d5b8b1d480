#include "qelie/document.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "qelie/error.hpp"

namespace qelie {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& what) { throw Error(Errc::ValidationError, what); }

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line, col = 1;
    else ++col;
  }
  return {line, col};
}

Coefficient coefficient_from(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return Coefficient::parse(v.get<std::string>());
    if (v.is_number_integer()) return Coefficient(mpq_class(v.dump()));
    if (v.is_number_float()) return Coefficient(v.get<double>());
  } catch (const Error& e) {
    invalid(where + ": " + e.what());
  }
  invalid(where + ": coefficient must be a string or number");
}

std::string param_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  invalid("family params must be strings or numbers");
}

}  // namespace

AlgebraDocument parse_algebra(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte);
    throw Error(Errc::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                                      std::string(e.what()));
  }
  if (!j.is_object()) invalid("document must be a JSON object");
  static const std::set<std::string> known{"name", "dim", "basis", "brackets", "metric", "family"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) invalid("unknown field '" + it.key() + "'");

  AlgebraDocument doc;
  if (!j.contains("name") || !j["name"].is_string()) invalid("'name' must be a string");
  doc.name = j["name"].get<std::string>();
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long long>() < 0)
    invalid("'dim' must be a non-negative integer");
  const auto n = static_cast<std::size_t>(j["dim"].get<long long>());
  if (!j.contains("basis") || !j["basis"].is_array()) invalid("'basis' must be an array of labels");
  std::map<std::string, std::size_t> index;
  for (const auto& l : j["basis"]) {
    if (!l.is_string() || l.get<std::string>().empty()) invalid("basis labels must be non-empty strings");
    const auto s = l.get<std::string>();
    if (index.count(s)) invalid("duplicate basis label '" + s + "'");
    index[s] = doc.basis.size();
    doc.basis.push_back(s);
  }
  if (doc.basis.size() != n) invalid("'dim' is " + std::to_string(n) + " but basis has " +
                                     std::to_string(doc.basis.size()) + " labels");
  auto label = [&](const json& v, const std::string& where) {
    if (!v.is_string() || !index.count(v.get<std::string>()))
      invalid(where + ": '" + (v.is_string() ? v.get<std::string>() : v.dump()) + "' is not a declared label");
    return index.at(v.get<std::string>());
  };

  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Coefficient> brackets;
  if (j.contains("brackets")) {
    if (!j["brackets"].is_array()) invalid("'brackets' must be an array");
    std::size_t pos = 0;
    for (const auto& b : j["brackets"]) {
      const std::string where = "bracket " + std::to_string(pos++);
      if (!b.is_array() || b.size() != 4) invalid(where + ": expected [i, j, k, coeff]");
      std::size_t i = label(b[0], where), jj = label(b[1], where), k = label(b[2], where);
      Coefficient v = coefficient_from(b[3], where);
      if (v.to_double() == 0.0) continue;
      if (i == jj) invalid(where + ": [e, e] must vanish");
      if (i > jj) {
        std::swap(i, jj);
        v = v.is_exact() ? Coefficient(mpq_class(-v.exact())) : Coefficient(-v.to_double());
      }
      auto key = std::make_tuple(i, jj, k);
      auto it = brackets.find(key);
      if (it != brackets.end()) {
        if (it->second.to_double() != v.to_double())
          invalid(where + ": conflicts with an earlier entry for [" + doc.basis[i] + "," + doc.basis[jj] + "]");
        continue;
      }
      brackets.emplace(key, v);
    }
  }

  Matrix G = Matrix::Identity(n, n);
  std::set<std::pair<std::size_t, std::size_t>> metric_seen;
  if (j.contains("metric")) {
    if (!j["metric"].is_array()) invalid("'metric' must be an array");
    std::size_t pos = 0;
    for (const auto& m : j["metric"]) {
      const std::string where = "metric entry " + std::to_string(pos++);
      if (!m.is_array() || m.size() != 3) invalid(where + ": expected [i, j, value]");
      std::size_t a = label(m[0], where), b = label(m[1], where);
      if (a > b) std::swap(a, b);
      const double v = coefficient_from(m[2], where).to_double();
      if (metric_seen.count({a, b}) && G(a, b) != v) invalid(where + ": conflicting metric value");
      metric_seen.insert({a, b});
      G(a, b) = G(b, a) = v;
    }
  }

  if (j.contains("family")) {
    const auto& f = j["family"];
    if (!f.is_object() || !f.contains("name") || !f["name"].is_string())
      invalid("'family' must be an object with a string 'name'");
    FamilyTag tag{f["name"].get<std::string>(), {}};
    if (f.contains("params")) {
      if (!f["params"].is_object()) invalid("family 'params' must be an object");
      for (auto it = f["params"].begin(); it != f["params"].end(); ++it) tag.params[it.key()] = param_text(it.value());
    }
    doc.family = std::move(tag);
  }

  bool exact = true;
  for (const auto& [key, v] : brackets) {
    exact = exact && v.is_exact();
    doc.brackets.push_back({doc.basis[std::get<0>(key)], doc.basis[std::get<1>(key)], doc.basis[std::get<2>(key)], v});
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      if (G(a, b) != (a == b ? 1.0 : 0.0)) doc.metric.push_back({doc.basis[a], doc.basis[b], G(a, b)});

  try {
    if (exact) {
      ExactStructureTensor st(n);
      for (const auto& [key, v] : brackets) st.set_bracket(std::get<0>(key), std::get<1>(key), std::get<2>(key), v.exact());
      doc.algebra = MetricLieAlgebra::from_exact(doc.basis, st, G);
    } else {
      StructureTensor st(n);
      for (const auto& [key, v] : brackets)
        st.set_bracket(std::get<0>(key), std::get<1>(key), std::get<2>(key), v.to_double());
      doc.algebra = MetricLieAlgebra(doc.basis, st, G);
    }
  } catch (const Error& e) {
    invalid(std::string("metric must be symmetric positive definite: ") + e.what());
  }
  return doc;
}

AlgebraDocument load_algebra(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw Error(Errc::FileNotFound, "cannot open '" + path + "'");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::FileNotFound, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_algebra(ss.str());
}

AlgebraDocument document_from_algebra(const std::string& name, const MetricLieAlgebra& L,
                                      std::optional<FamilyTag> family) {
  AlgebraDocument doc;
  doc.name = name;
  doc.basis = L.labels();
  doc.family = std::move(family);
  const std::size_t n = L.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (const auto& ex = L.exact()) {
          if ((*ex)(i, j, k) != 0) doc.brackets.push_back({doc.basis[i], doc.basis[j], doc.basis[k], Coefficient((*ex)(i, j, k))});
        } else {
          const double v = round15(L.tensor()(i, j, k));
          if (v != 0.0) doc.brackets.push_back({doc.basis[i], doc.basis[j], doc.basis[k], Coefficient(v)});
        }
      }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      const double v = round15(L.gram()(a, b));
      if (v != (a == b ? 1.0 : 0.0)) doc.metric.push_back({doc.basis[a], doc.basis[b], v});
    }
  doc.algebra = L;
  return doc;
}

AlgebraDocument document_from_entry(const CatalogEntry& entry) {
  return document_from_algebra(entry.name, entry.algebra, FamilyTag{entry.family, entry.params});
}

std::string emit_algebra(const AlgebraDocument& doc) {
  std::ostringstream o;
  o << "{\n";
  o << "  \"name\": " << json(doc.name).dump() << ",\n";
  o << "  \"dim\": " << doc.basis.size() << ",\n";
  o << "  \"basis\": " << json(doc.basis).dump() << ",\n";
  o << "  \"brackets\": [";
  for (std::size_t i = 0; i < doc.brackets.size(); ++i) {
    const auto& b = doc.brackets[i];
    o << (i ? ",\n    " : "\n    ") << json::array({b.i, b.j, b.k, b.coeff.str()}).dump();
  }
  o << (doc.brackets.empty() ? "]" : "\n  ]");
  if (!doc.metric.empty()) {
    o << ",\n  \"metric\": [";
    for (std::size_t i = 0; i < doc.metric.size(); ++i) {
      const auto& m = doc.metric[i];
      o << (i ? ",\n    " : "\n    ") << json::array({m.i, m.j, round15(m.value)}).dump();
    }
    o << "\n  ]";
  }
  if (doc.family) {
    json params = json::object();
    for (const auto& [k, v] : doc.family->params) params[k] = v;
    o << ",\n  \"family\": " << json{{"name", doc.family->name}, {"params", params}}.dump();
  }
  o << "\n}\n";
  return o.str();
}

bool structurally_equal(const MetricLieAlgebra& a, const MetricLieAlgebra& b, double tol) {
  if (a.dim() != b.dim() || a.labels() != b.labels() || a.is_exact() != b.is_exact()) return false;
  if (a.is_exact()) {
    if (a.exact()->data() != b.exact()->data()) return false;
  } else {
    const auto& x = a.tensor().data();
    const auto& y = b.tensor().data();
    for (std::size_t i = 0; i < x.size(); ++i)
      if (std::abs(x[i] - y[i]) > tol) return false;
  }
  return a.dim() == 0 || (a.gram() - b.gram()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace qelie
