#pragma once

// JSON input and output documents for the command line tool.  See
// schema/input.schema.json for the input grammar.
//
// Integers may be JSON numbers or decimal strings; on output, values whose
// magnitude exceeds 2^53 are written as strings.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>

#include <json.hpp>

#include "homcalc/catalog.hpp"
#include "homcalc/error.hpp"
#include "homcalc/extcplx.hpp"
#include "homcalc/fgab.hpp"
#include "homcalc/homotopy.hpp"
#include "homcalc/rootdata.hpp"
#include "homcalc/space.hpp"

namespace homcalc::doc {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::ParseError, (path.empty() ? std::string("/") : path) + ": " + what);
}

inline const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

inline std::string sub(const std::string& path, const std::string& key) { return path + "/" + key; }
inline std::string sub(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

}  // namespace detail

inline Integer parse_integer(const json& j, const std::string& path) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<unsigned long long>()) : Integer(j.get<long long>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) detail::fail(path, "expected a decimal integer string");
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') detail::fail(path, "expected a decimal integer string");
    return Integer(s[0] == '+' ? s.substr(1) : s);
  }
  detail::fail(path, "expected an integer");
}

inline long long parse_small(const json& j, const std::string& path) {
  if (!j.is_number_integer()) detail::fail(path, "expected an integer");
  return j.get<long long>();
}

inline std::size_t parse_count(const json& j, const std::string& path) {
  long long v = parse_small(j, path);
  if (v < 0) detail::fail(path, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

/// Row-major list of rows.  A matrix with no rows or no columns may be given
/// as [] (or as a list of empty rows).
inline IntMatrix parse_matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& path) {
  if (!j.is_array()) detail::fail(path, "expected an array of rows");
  if (j.empty() && (rows == 0 || cols == 0)) return IntMatrix(rows, cols);
  if (j.size() != rows)
    detail::fail(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    const std::string rp = detail::sub(path, i);
    if (!row.is_array()) detail::fail(rp, "expected an array");
    if (row.size() != cols)
      detail::fail(rp, "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = parse_integer(row[c], detail::sub(rp, c));
  }
  return m;
}

/// {"generators": n, "relations": [[...], ...]}; each relation is a vector of
/// length n.
inline FgAbGroup parse_fgab(const json& j, const std::string& path) {
  std::size_t n = parse_count(detail::field(j, "generators", path), detail::sub(path, "generators"));
  IntMatrix rel(n, 0);
  if (j.contains("relations")) {
    const json& r = j["relations"];
    if (!r.is_array()) detail::fail(detail::sub(path, "relations"), "expected an array");
    rel = parse_matrix(r, r.size(), n, detail::sub(path, "relations")).transpose();
  }
  return FgAbGroup(std::move(rel));
}

inline std::vector<Vec> parse_vectors(const json& j, std::size_t len, const std::string& path) {
  if (!j.is_array()) detail::fail(path, "expected an array");
  IntMatrix m = parse_matrix(j, j.size(), len, path);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.emplace_back(m.row(i).begin(), m.row(i).end());
  return out;
}

inline GroupDescriptor parse_group(const json& j, const std::string& path) {
  if (!j.is_object()) detail::fail(path, "expected a group object");
  if (j.contains("catalog")) {
    const std::string cp = detail::sub(path, "catalog");
    if (!j["catalog"].is_string()) detail::fail(cp, "expected a string");
    const std::string name = j["catalog"].get<std::string>();
    if (name == "Product") {
      const json& f = detail::field(j, "factors", path);
      const std::string fp = detail::sub(path, "factors");
      if (!f.is_array() || f.size() != 2) detail::fail(fp, "expected two factors");
      return catalog::product(parse_group(f[0], detail::sub(fp, 0)), parse_group(f[1], detail::sub(fp, 1)));
    }
    const auto& fams = catalog::families();
    if (std::none_of(fams.begin(), fams.end(), [&](const catalog::FamilyInfo& f) { return f.name == name; }))
      detail::fail(cp, "unknown catalog group '" + name + "'");
    long long n = 0;
    if (name != "Trivial") n = parse_small(detail::field(j, "n", path), detail::sub(path, "n"));
    try {
      return catalog::make_group(name, n);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::UnknownName) detail::fail(cp, e.detail());
      throw;
    }
  }
  if (j.contains("root_datum")) {
    const json& rd = j["root_datum"];
    const std::string rp = detail::sub(path, "root_datum");
    RootDatum d;
    d.rank = parse_count(detail::field(rd, "rank", rp), detail::sub(rp, "rank"));
    d.roots = parse_vectors(detail::field(rd, "roots", rp), d.rank, detail::sub(rp, "roots"));
    d.coroots = parse_vectors(detail::field(rd, "coroots", rp), d.rank, detail::sub(rp, "coroots"));
    auto report = validate_root_datum(d);
    if (!report) throw Error(ErrorKind::InvalidRootDatum, rp + ": " + report.diagnostic);
    return d;
  }
  if (j.contains("multiplicative"))
    return MultiplicativeGroup{parse_fgab(j["multiplicative"], detail::sub(path, "multiplicative"))};
  detail::fail(path, "expected one of 'catalog', 'root_datum', 'multiplicative'");
}

inline SpaceDescriptor parse_catalog_embedding(const json& j, const std::string& path) {
  const std::string kind_path = detail::sub(path, "kind");
  const json& kind_json = detail::field(j, "kind", path);
  if (!kind_json.is_string()) detail::fail(kind_path, "expected a string");
  const std::string kind = kind_json.get<std::string>();
  auto num = [&](const char* key) { return parse_small(detail::field(j, key, path), detail::sub(path, key)); };
  auto group = [&] { return parse_group(detail::field(j, "group", path), detail::sub(path, "group")); };
  auto reductive = [&] {
    GroupDescriptor g = group();
    if (!g.is_reductive()) detail::fail(detail::sub(path, "group"), "expected a reductive group");
    return g;
  };

  if (kind == "maximal_torus") return catalog::maximal_torus(reductive());
  if (kind == "block") return catalog::block(num("m"), num("n"));
  if (kind == "center_mu") return catalog::center_mu(num("n"));
  if (kind == "det_kernel") return catalog::det_kernel(num("n"));
  if (kind == "diagonal_torus_in") return catalog::diagonal_torus_in(reductive());
  if (kind == "trivial") return catalog::point_stabilizer(reductive());
  if (kind == "subtorus") {
    const json& m = detail::field(j, "matrix", path);
    const std::string mp = detail::sub(path, "matrix");
    if (!m.is_array() || m.empty()) detail::fail(mp, "expected a nonempty array of rows");
    if (!m[0].is_array()) detail::fail(detail::sub(mp, 0), "expected an array");
    return catalog::subtorus(parse_matrix(m, m.size(), m[0].size(), mp));
  }
  detail::fail(kind_path, "unknown catalog embedding '" + kind + "'");
}

/// {"g": ..., "h": ..., "embedding": ..., "flags": {...}}.  With a
/// catalog_embedding, g and h come from the catalog and must be omitted.
inline SpaceDescriptor parse_space(const json& j) {
  if (!j.is_object()) detail::fail("", "expected a document object");
  const json& emb = detail::field(j, "embedding", "");
  if (!emb.is_object()) detail::fail("/embedding", "expected an object");

  std::optional<SpaceDescriptor> s;
  if (emb.contains("catalog_embedding")) {
    if (j.contains("g") || j.contains("h"))
      detail::fail("/embedding/catalog_embedding", "g and h must be omitted with a catalog embedding");
    s = parse_catalog_embedding(emb["catalog_embedding"], "/embedding/catalog_embedding");
  } else {
    GroupDescriptor g = parse_group(detail::field(j, "g", ""), "/g");
    GroupDescriptor h = parse_group(detail::field(j, "h", ""), "/h");
    if (!g.is_reductive()) detail::fail("/g", "G must be a connected reductive group");
    EmbeddingDescriptor e;
    const std::size_t grank = g.datum().rank;
    if (emb.contains("cochar_matrix")) {
      if (!h.is_reductive()) detail::fail("/embedding/cochar_matrix", "cochar_matrix requires reductive H");
      e.cochar_matrix = parse_matrix(emb["cochar_matrix"], grank, h.datum().rank, "/embedding/cochar_matrix");
    } else if (emb.contains("char_map")) {
      if (!h.is_multiplicative()) detail::fail("/embedding/char_map", "char_map requires multiplicative H");
      e.char_map = parse_matrix(emb["char_map"], h.multiplicative().characters.generators(), grank,
                                "/embedding/char_map");
    } else {
      detail::fail("/embedding", "expected 'cochar_matrix', 'char_map' or 'catalog_embedding'");
    }
    s.emplace(SpaceDescriptor{std::move(g), std::move(h), std::move(e)});
  }

  if (j.contains("flags")) {
    const json& f = j["flags"];
    if (!f.is_object()) detail::fail("/flags", "expected an object");
    for (auto [key, slot] : {std::pair{"h_connected", &s->e.h_connected},
                             std::pair{"h_ker_char_connected", &s->e.h_ker_char_connected}}) {
      if (!f.contains(key)) continue;
      if (!f[key].is_boolean()) detail::fail(std::string("/flags/") + key, "expected a boolean");
      *slot = f[key].get<bool>();
    }
  }
  auto located = [](const char* path, auto&& check) {
    try {
      check();
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(path) + ": " + e.detail());
    }
  };
  located("/flags", [&] { hypothesis_flags(*s); });
  located("/embedding", [&] { validate_space(*s); });
  return std::move(*s);
}

/// {"a0": group, "a1": group, "alpha": rows}.
inline TwoTermComplex parse_complex(const json& j) {
  if (!j.is_object()) detail::fail("", "expected a document object");
  FgAbGroup a0 = parse_fgab(detail::field(j, "a0", ""), "/a0");
  FgAbGroup a1 = parse_fgab(detail::field(j, "a1", ""), "/a1");
  IntMatrix alpha = parse_matrix(detail::field(j, "alpha", ""), a1.generators(), a0.generators(), "/alpha");
  FgAbMap f(std::move(a0), std::move(a1), std::move(alpha));
  if (!check_map(f)) detail::fail("/alpha", "alpha does not send relations of a0 into relations of a1");
  return TwoTermComplex(std::move(f));
}

inline bool is_complex_document(const json& j) { return j.is_object() && j.contains("a0") && j.contains("alpha"); }

// Output.

inline json integer_to_json(const Integer& v) {
  static const Integer limit = Integer(1) << 53;
  if (abs(v) <= limit) return json(static_cast<long long>(v));
  return json(v.str());
}

inline json group_to_json(const InvariantFactors& f) {
  json t = json::array();
  for (const auto& d : f.torsion) t.push_back(integer_to_json(d));
  return json{{"rank", f.rank}, {"torsion", std::move(t)}, {"pretty", f.pretty()}};
}

inline InvariantFactors group_from_json(const json& j, const std::string& path = "") {
  InvariantFactors f;
  f.rank = parse_count(detail::field(j, "rank", path), detail::sub(path, "rank"));
  const json& t = detail::field(j, "torsion", path);
  if (!t.is_array()) detail::fail(detail::sub(path, "torsion"), "expected an array");
  for (std::size_t i = 0; i < t.size(); ++i) {
    Integer d = parse_integer(t[i], detail::sub(detail::sub(path, "torsion"), i));
    if (d < 2 || (!f.torsion.empty() && d % f.torsion.back() != 0))
      detail::fail(detail::sub(path, "torsion"), "torsion factors must be >= 2 and form a divisibility chain");
    f.torsion.push_back(std::move(d));
  }
  return f;
}

inline json gates_to_json(const std::vector<GateCheck>& gates) {
  json out = json::array();
  for (const auto& g : gates) out.push_back(json{{"name", g.name}, {"passed", g.passed}, {"detail", g.detail}});
  return out;
}

inline json result_to_json(const HomotopyResult& r) {
  json j = group_to_json(r.group);
  j["method"] = std::string(to_string(r.method));
  j["gates"] = gates_to_json(r.gates);
  return j;
}

inline json error_to_json(const std::string& method, ErrorKind kind, const std::string& message) {
  json j{{"kind", std::string(to_string(kind))}, {"message", message}};
  if (!method.empty()) j["method"] = method;
  return j;
}

}  // namespace homcalc::doc
