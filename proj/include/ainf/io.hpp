#pragma once

#include "ainf/ainfty.hpp"
#include "ainf/defrep.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// JSON documents for algebras, dg algebras, morphisms, groups and representations. Keys are
// emitted sorted and scalars as exact strings, so serialize∘parse is idempotent byte for byte.
namespace ainf::io {

using json = nlohmann::json;

// Malformed input: bad JSON, a schema violation, or an unknown reference. `where` is a JSON
// pointer into the document, or "line L, column C" for syntax errors.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Characteristic of a field descriptor: "Q" is 0, "F<p>" is p.
struct FieldSpec {
  std::uint32_t characteristic = 2;

  bool rational() const { return characteristic == 0; }
  std::string name() const { return rational() ? "Q" : "F" + std::to_string(characteristic); }
};

inline FieldSpec parse_field(const std::string& s, const std::string& where = "/field") {
  if (s == "Q") return {0};
  if (s.size() >= 2 && s[0] == 'F' && s.find_first_not_of("0123456789", 1) == std::string::npos && s.size() < 11) {
    const unsigned long p = std::stoul(s.substr(1));
    if (p < (1UL << 31) && PrimeField::is_prime(static_cast<std::uint32_t>(p))) return {static_cast<std::uint32_t>(p)};
  }
  throw ParseError(where, "field must be \"Q\" or \"F<p>\" for a prime p, got \"" + s + "\"");
}

inline json read_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    // Drop nlohmann's "[json.exception...] parse error at line L, column C: " prefix.
    std::string why = e.what();
    if (const auto at = why.find("column "); at != std::string::npos)
      if (const auto colon = why.find(": ", at); colon != std::string::npos) why = why.substr(colon + 2);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col), why);
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return read_text(ss.str());
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

namespace detail {

inline std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
inline std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

inline const char* type_name(const json& j) { return j.type_name(); }

inline const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path.empty() ? "/" : path, std::string("expected an object, got ") + type_name(j));
  return j;
}

inline const json& require_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, std::string("expected an array, got ") + type_name(j));
  return j;
}

inline const json& member(const json& obj, const std::string& key, const std::string& path) {
  require_object(obj, path);
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(child(path, key), "missing required member");
  return *it;
}

// Member or a default when absent; returned by value so that defaults can be temporaries.
inline json optional_member(const json& obj, const std::string& key, json fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : *it;
}

inline std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, std::string("expected a string, got ") + type_name(j));
  return j.get<std::string>();
}

inline int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, std::string("expected an integer, got ") + type_name(j));
  const auto v = j.get<long long>();
  if (v < -(1LL << 30) || v > (1LL << 30)) throw ParseError(path, "integer out of range");
  return static_cast<int>(v);
}

// Rejects members outside `allowed` so that typos do not pass silently.
inline void only_members(const json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw ParseError(child(path, k), "unknown member");
  }
}

template <class F>
F as_scalar(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "scalars are written as strings of exact integers or fractions");
  const std::string s = j.get<std::string>();
  if (s.empty() || s.find_first_not_of("+-0123456789/") != std::string::npos)
    throw ParseError(path, "malformed scalar \"" + s + "\"");
  try {
    return FieldTraits<F>::parse(s);
  } catch (const std::exception&) {
    throw ParseError(path, "malformed scalar \"" + s + "\"");
  }
}

inline std::string kind_of(const json& doc, const std::string& fallback) {
  if (doc.is_object() && doc.contains("kind")) return as_string(doc.at("kind"), "/kind");
  return fallback;
}

inline void require_kind(const json& doc, std::initializer_list<const char*> kinds, const std::string& fallback,
                         const std::string& path) {
  const std::string k = doc.contains("kind") ? as_string(doc.at("kind"), child(path, "kind")) : fallback;
  std::string list;
  for (const char* c : kinds) {
    if (k == c) return;
    list += (list.empty() ? "" : ", ") + std::string(c);
  }
  throw ParseError(child(path, "kind"), "expected one of " + list + ", got \"" + k + "\"");
}

// Field of a document; the field must be consistent with the one currently in scope.
template <class F>
void require_field(const json& doc, const std::string& path) {
  const json f = optional_member(doc, "field", "F2");
  const FieldSpec spec = parse_field(as_string(f, child(path, "field")), child(path, "field"));
  if (spec.characteristic != FieldTraits<F>::characteristic())
    throw ParseError(child(path, "field"), "document is over " + spec.name() + " but the computation runs over " +
                                               FieldSpec{FieldTraits<F>::characteristic()}.name());
}

inline FilteredSpace space_from(const json& doc, const std::string& path) {
  const int n = as_int(optional_member(doc, "nilpotency", 2), child(path, "nilpotency"));
  const std::string bpath = child(path, "basis");
  const json basis = optional_member(doc, "basis", json::array());
  require_array(basis, bpath);
  std::vector<BasisVector> out;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::string p = child(bpath, i);
    require_object(basis[i], p);
    only_members(basis[i], {"name", "degree", "weight"}, p);
    const std::string name = as_string(member(basis[i], "name", p), child(p, "name"));
    if (name.empty()) throw ParseError(child(p, "name"), "basis names must be non-empty");
    out.push_back({name, as_int(member(basis[i], "degree", p), child(p, "degree")),
                   as_int(member(basis[i], "weight", p), child(p, "weight"))});
  }
  return FilteredSpace(std::move(out), n);
}

inline int index_in(const FilteredSpace& s, const json& j, const std::string& path) {
  const std::string name = as_string(j, path);
  if (!s.contains(name)) throw ParseError(path, "unknown basis vector \"" + name + "\"");
  return s.index_of(name);
}

// {"arity": k, "entries": [{"in": [names], "out": {name: scalar}}]} as a table of the given degree.
template <class F>
MultiMap<F> table_from(const json& t, const FilteredSpace& in, const FilteredSpace& out, int degree, const std::string& path) {
  require_object(t, path);
  only_members(t, {"arity", "entries"}, path);
  const int arity = as_int(member(t, "arity", path), child(path, "arity"));
  if (arity < 1) throw ParseError(child(path, "arity"), "arity must be at least 1");
  MultiMap<F> m(arity, degree);
  const std::string epath = child(path, "entries");
  const json& entries = require_array(member(t, "entries", path), epath);
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const std::string p = child(epath, e);
    require_object(entries[e], p);
    only_members(entries[e], {"in", "out"}, p);
    const json& ins = require_array(member(entries[e], "in", p), child(p, "in"));
    if (static_cast<int>(ins.size()) != arity)
      throw ParseError(child(p, "in"), "expected " + std::to_string(arity) + " inputs, got " + std::to_string(ins.size()));
    Word w;
    for (std::size_t i = 0; i < ins.size(); ++i) w.push_back(index_in(in, ins[i], child(child(p, "in"), i)));
    const json& outs = require_object(member(entries[e], "out", p), child(p, "out"));
    for (const auto& [name, c] : outs.items()) {
      const std::string cp = child(child(p, "out"), name);
      if (!out.contains(name)) throw ParseError(cp, "unknown basis vector \"" + name + "\"");
      m.add(w, out.index_of(name), as_scalar<F>(c, cp));
    }
  }
  return m;
}

template <class F>
std::vector<MultiMap<F>> tables_from(const json& doc, const char* key, const FilteredSpace& in, const FilteredSpace& out,
                                     int degree, const std::string& path) {
  const std::string tpath = child(path, key);
  const json ts = optional_member(doc, key, json::array());
  require_array(ts, tpath);
  std::vector<MultiMap<F>> out_tables;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    MultiMap<F> m = table_from<F>(ts[i], in, out, degree, child(tpath, i));
    const auto k = static_cast<std::size_t>(m.arity());
    while (out_tables.size() < k) out_tables.emplace_back(static_cast<int>(out_tables.size()) + 1, degree);
    out_tables[k - 1] += m;
  }
  return out_tables;
}

inline json space_json(const FilteredSpace& s) {
  json basis = json::array();
  for (const auto& b : s.basis()) basis.push_back({{"name", b.name}, {"degree", b.degree}, {"weight", b.weight}});
  return basis;
}

template <class F>
json table_json(const MultiMap<F>& m, const FilteredSpace& in, const FilteredSpace& out) {
  json entries = json::array();
  for (const auto& [w, s] : m.entries()) {
    json ins = json::array();
    for (int i : w) ins.push_back(in.name(i));
    json outs = json::object();
    for (const auto& [o, c] : s) outs[out.name(o)] = FieldTraits<F>::format(c);
    if (!outs.empty()) entries.push_back({{"in", ins}, {"out", outs}});
  }
  return {{"arity", m.arity()}, {"entries", entries}};
}

template <class F>
json tables_json(const std::vector<MultiMap<F>>& ts, const FilteredSpace& in, const FilteredSpace& out) {
  json arr = json::array();
  for (const auto& t : ts)
    if (!t.empty()) arr.push_back(table_json(t, in, out));
  return arr;
}

template <class F>
json header(const char* kind) {
  return {{"kind", kind}, {"field", FieldSpec{FieldTraits<F>::characteristic()}.name()}};
}

}  // namespace detail

// Field descriptor of a document ("F2" when absent).
inline FieldSpec field_of(const json& doc) {
  detail::require_object(doc, "");
  return parse_field(detail::as_string(detail::optional_member(doc, "field", "F2"), "/field"));
}

inline std::string kind_of(const json& doc) { return detail::kind_of(doc, "ainfty"); }

// "ainfty" documents carry shifted degrees and tables Q_k of degree +1; "dga" documents carry
// unshifted degrees, a differential (arity 1) and a product (arity 2), and load through the
// degree shift. An empty document is the zero algebra over F2 with N = 2.
template <class F>
DGAlgebra<F> dga_from_json(const json& doc, const std::string& path = "") {
  detail::require_object(doc, path);
  detail::require_kind(doc, {"dga"}, "ainfty", path);
  detail::only_members(doc, {"kind", "field", "nilpotency", "basis", "operations"}, path);
  detail::require_field<F>(doc, path);
  FilteredSpace s = detail::space_from(doc, path);
  auto tables = detail::tables_from<F>(doc, "operations", s, s, 0, path);
  MultiMap<F> d(1, 1), mu(2, 0);
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (tables[i].empty()) continue;
    if (i == 0) {
      for (const auto& [w, v] : tables[i].entries()) d.add(w, v, F(1));
    } else if (i == 1) {
      mu = std::move(tables[i]);
    } else {
      throw ParseError(detail::child(path, "operations"), "a dg algebra has operations of arity 1 and 2 only");
    }
  }
  return DGAlgebra<F>(std::move(s), std::move(d), std::move(mu));
}

template <class F>
AInfinityAlgebra<F> algebra_from_json(const json& doc, const std::string& path = "", Validation v = Validation::full) {
  detail::require_object(doc, path);
  detail::require_kind(doc, {"ainfty", "dga"}, "ainfty", path);
  if (detail::kind_of(doc, "ainfty") == "dga") return from_dga(dga_from_json<F>(doc, path));
  detail::only_members(doc, {"kind", "field", "nilpotency", "basis", "operations"}, path);
  detail::require_field<F>(doc, path);
  FilteredSpace s = detail::space_from(doc, path);
  auto ops = detail::tables_from<F>(doc, "operations", s, s, 1, path);
  if (static_cast<int>(ops.size()) > s.nilpotency() - 1)
    throw InvariantError("filtration: an operation of arity " + std::to_string(ops.size()) + " needs nilpotency above " +
                         std::to_string(ops.size()));
  return AInfinityAlgebra<F>(std::move(s), std::move(ops), v);
}

template <class F>
json to_json(const AInfinityAlgebra<F>& a) {
  json j = detail::header<F>("ainfty");
  j["nilpotency"] = a.nilpotency();
  j["basis"] = detail::space_json(a.space());
  j["operations"] = detail::tables_json(a.ops(), a.space(), a.space());
  return j;
}

template <class F>
json to_json(const DGAlgebra<F>& c) {
  json j = detail::header<F>("dga");
  j["nilpotency"] = c.space().nilpotency();
  j["basis"] = detail::space_json(c.space());
  j["operations"] = detail::tables_json(std::vector<MultiMap<F>>{c.d(), c.mu()}, c.space(), c.space());
  return j;
}

// {"kind": "morphism", "source": algebra, "target": algebra, "maps": tables of degree 0}.
template <class F>
InftyMorphism<F> morphism_from_json(const json& doc, Validation v = Validation::full) {
  detail::require_object(doc, "");
  detail::require_kind(doc, {"morphism"}, "ainfty", "");
  detail::only_members(doc, {"kind", "field", "source", "target", "maps"}, "");
  detail::require_field<F>(doc, "");
  auto src = share(algebra_from_json<F>(detail::member(doc, "source", ""), "/source"));
  auto tgt = share(algebra_from_json<F>(detail::member(doc, "target", ""), "/target"));
  auto maps = detail::tables_from<F>(doc, "maps", src->space(), tgt->space(), 0, "");
  return InftyMorphism<F>(std::move(src), std::move(tgt), std::move(maps), v);
}

template <class F>
json to_json(const InftyMorphism<F>& phi) {
  json j = detail::header<F>("morphism");
  j["source"] = to_json(phi.source());
  j["target"] = to_json(phi.target());
  j["maps"] = detail::tables_json(phi.maps(), phi.source().space(), phi.target().space());
  return j;
}

// {"kind": "group", "elements": [names], "identity": name, "table": rows of names}.
inline FiniteGroup group_from_json(const json& doc) {
  detail::require_object(doc, "");
  detail::require_kind(doc, {"group"}, "ainfty", "");
  detail::only_members(doc, {"kind", "elements", "identity", "table"}, "");
  FiniteGroup g;
  const json& els = detail::require_array(detail::member(doc, "elements", ""), "/elements");
  for (std::size_t i = 0; i < els.size(); ++i) {
    const std::string n = detail::as_string(els[i], detail::child("/elements", i));
    for (const auto& m : g.names)
      if (m == n) throw ParseError(detail::child("/elements", i), "duplicate element \"" + n + "\"");
    g.names.push_back(n);
  }
  if (g.names.empty()) throw ParseError("/elements", "a group has at least one element");
  auto lookup = [&g](const json& j, const std::string& p) {
    const std::string n = detail::as_string(j, p);
    for (std::size_t i = 0; i < g.names.size(); ++i)
      if (g.names[i] == n) return static_cast<int>(i);
    throw ParseError(p, "unknown group element \"" + n + "\"");
  };
  g.table.identity = lookup(detail::member(doc, "identity", ""), "/identity");
  const json& rows = detail::require_array(detail::member(doc, "table", ""), "/table");
  if (rows.size() != g.names.size()) throw ParseError("/table", "expected one row per element");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string rp = detail::child("/table", r);
    const json& row = detail::require_array(rows[r], rp);
    if (row.size() != g.names.size()) throw ParseError(rp, "expected one entry per element");
    g.table.mul.emplace_back();
    for (std::size_t c = 0; c < row.size(); ++c) g.table.mul.back().push_back(lookup(row[c], detail::child(rp, c)));
  }
  g.validate();
  return g;
}

inline json to_json(const FiniteGroup& g) {
  json rows = json::array();
  for (const auto& r : g.table.mul) {
    json row = json::array();
    for (int x : r) row.push_back(g.names[x]);
    rows.push_back(row);
  }
  return {{"kind", "group"}, {"elements", g.names}, {"identity", g.names[g.table.identity]}, {"table", rows}};
}

// {"kind": "representation", "field", "dim": d, "matrices": {element: rows of scalars}}.
template <class F>
Representation<F> representation_from_json(const json& doc, const FiniteGroup& g) {
  detail::require_object(doc, "");
  detail::require_kind(doc, {"representation"}, "ainfty", "");
  detail::only_members(doc, {"kind", "field", "dim", "matrices"}, "");
  detail::require_field<F>(doc, "");
  const int d = detail::as_int(detail::member(doc, "dim", ""), "/dim");
  if (d < 1) throw ParseError("/dim", "dimension must be at least 1");
  const json& ms = detail::require_object(detail::member(doc, "matrices", ""), "/matrices");
  Representation<F> rho{g, static_cast<std::size_t>(d), {}};
  for (const auto& [name, m] : ms.items()) {
    bool known = false;
    for (const auto& n : g.names) known = known || n == name;
    if (!known) throw ParseError(detail::child("/matrices", name), "unknown group element \"" + name + "\"");
  }
  for (const auto& name : g.names) {
    const std::string mp = detail::child("/matrices", name);
    const json& rows = detail::require_array(detail::member(ms, name, "/matrices"), mp);
    if (rows.size() != rho.dim) throw ParseError(mp, "expected " + std::to_string(d) + " rows");
    Matrix<F> m(rho.dim, rho.dim);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const json& row = detail::require_array(rows[r], detail::child(mp, r));
      if (row.size() != rho.dim) throw ParseError(detail::child(mp, r), "expected " + std::to_string(d) + " entries");
      for (std::size_t c = 0; c < row.size(); ++c) m(r, c) = detail::as_scalar<F>(row[c], detail::child(detail::child(mp, r), c));
    }
    rho.matrices.push_back(std::move(m));
  }
  rho.validate();
  return rho;
}

template <class F>
json to_json(const Representation<F>& rho) {
  json j = detail::header<F>("representation");
  j["dim"] = rho.dim;
  json ms = json::object();
  for (std::size_t g = 0; g < rho.group.order(); ++g) {
    json rows = json::array();
    for (std::size_t r = 0; r < rho.dim; ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < rho.dim; ++c) row.push_back(FieldTraits<F>::format(rho.matrices[g](r, c)));
      rows.push_back(row);
    }
    ms[rho.group.names[g]] = rows;
  }
  j["matrices"] = ms;
  return j;
}

// Vector from comma-separated scalars, one per basis vector.
template <class F>
Vec<F> parse_vector(const std::string& text, std::size_t dim, const std::string& what = "vector") {
  Vec<F> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' '), e = item.find_last_not_of(' ');
    out.push_back(detail::as_scalar<F>(json(b == std::string::npos ? "" : item.substr(b, e - b + 1)), what));
  }
  if (text.empty()) out.clear();
  if (out.size() != dim)
    throw ParseError(what, "expected " + std::to_string(dim) + " comma-separated scalars, got " + std::to_string(out.size()));
  return out;
}

// Nonzero coordinates keyed by basis name.
template <class F>
json vector_json(const FilteredSpace& s, const Vec<F>& v) {
  json j = json::object();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) j[s.name(static_cast<int>(i))] = FieldTraits<F>::format(v[i]);
  return j;
}

template <class F>
json vectors_json(const FilteredSpace& s, const std::vector<Vec<F>>& vs) {
  json arr = json::array();
  for (const auto& v : vs) arr.push_back(vector_json(s, v));
  return arr;
}

// Runs fn.template operator()<F>() with F and the prime scope fixed by the descriptor.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.rational()) return fn.template operator()<Rational>();
  PrimeField scope(spec.characteristic);
  return fn.template operator()<Zp>();
}

}  // namespace ainf::io
