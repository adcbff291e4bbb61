#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "divfan/serialize.hpp"
#include "divfan/table.hpp"

namespace divfan::corpus {

using json = nlohmann::json;

#ifdef DIVFAN_CORPUS_DIR
inline const char* default_dir = DIVFAN_CORPUS_DIR;
#else
inline const char* default_dir = "corpus";
#endif

using Parameters = std::map<std::string, Rational>;

namespace detail {

// Recursive descent over + - * / and parentheses with named parameters.
class Expression {
 public:
  Expression(std::string text, const Parameters& params) : s_(std::move(text)), params_(params) {}

  Rational evaluate() {
    const Rational r = sum();
    skip();
    if (pos_ != s_.size()) fail();
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail() const { throw InputError("malformed parameter expression '" + s_ + "'"); }

  Rational sum() {
    Rational r = product();
    for (;;) {
      if (eat('+')) r += product();
      else if (eat('-')) r -= product();
      else return r;
    }
  }
  Rational product() {
    Rational r = factor();
    for (;;) {
      if (eat('*')) {
        r *= factor();
      } else if (eat('/')) {
        const Rational d = factor();
        if (d == 0) throw InputError("division by zero in '" + s_ + "'");
        r /= d;
      } else {
        return r;
      }
    }
  }
  Rational factor() {
    if (eat('-')) return -factor();
    if (eat('(')) {
      const Rational r = sum();
      if (!eat(')')) fail();
      return r;
    }
    skip();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Rational(Integer(s_.substr(start, pos_ - start)));
    }
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail();
    const auto it = params_.find(s_.substr(start, pos_ - start));
    if (it == params_.end()) throw InputError("unknown parameter '" + s_.substr(start, pos_ - start) + "'");
    return it->second;
  }

  std::string s_;
  const Parameters& params_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Replaces "{{expr}}" inside strings. A string that is a single integral
/// template becomes a JSON number.
inline json substitute(const json& j, const Parameters& params) {
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [k, v] : j.items()) out[k] = substitute(v, params);
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& v : j) out.push_back(substitute(v, params));
    return out;
  }
  if (!j.is_string()) return j;
  const std::string s = j.get<std::string>();
  std::string out;
  std::size_t pos = 0;
  bool whole = false;
  std::optional<Rational> single;
  while (true) {
    const auto open = s.find("{{", pos);
    if (open == std::string::npos) break;
    const auto close = s.find("}}", open);
    if (close == std::string::npos) throw InputError("unterminated template in '" + s + "'");
    const Rational v = detail::Expression(s.substr(open + 2, close - open - 2), params).evaluate();
    whole = open == 0 && close + 2 == s.size();
    single = v;
    out += s.substr(pos, open - pos) + v.str();
    pos = close + 2;
  }
  if (pos == 0) return j;
  out += s.substr(pos);
  if (whole && single && denominator(*single) == 1) return io::to_json(*single);
  return out;
}

struct Entry {
  std::string name;
  std::string kind;  ///< "spherical" or "toric"
  std::string path;
  json source;       ///< file contents before substitution
  json doc;          ///< after substitution
  Parameters parameters;
  std::optional<SphericalDatum> datum;
  std::optional<ColoredFan> colored_fan;
  std::optional<ToricModel> toric_model;
  std::map<std::string, std::string> relabel;
  std::optional<IntMatrix> kernel_map;
  TableOptions table;
  json expected;
};

inline Parameters parse_parameters(const json& j) {
  Parameters p;
  for (const auto& [k, v] : j.items()) p[k] = io::rational_from(v);
  return p;
}

inline Entry load_entry(const json& source, const std::string& path = "", const Parameters& overrides = {}) {
  Entry e;
  e.source = source;
  e.path = path;
  if (source.value("schema", std::string()) != io::schema_version)
    throw InputError("unsupported schema '" + source.value("schema", std::string()) + "'");
  e.parameters = parse_parameters(source.value("parameters", json::object()));
  for (const auto& [k, v] : overrides) {
    if (!e.parameters.count(k)) throw InputError("entry has no parameter '" + k + "'");
    e.parameters[k] = v;
  }
  e.doc = substitute(source, e.parameters);
  const json& d = e.doc;
  e.name = d.value("name", std::string());
  e.kind = io::require(d, "kind").get<std::string>();
  if (e.kind == "spherical") {
    e.datum = io::datum_from(io::require(d, "datum"));
    e.colored_fan = io::colored_fan_from(io::require(d, "colored_fan"));
    if (d.contains("toric_model")) e.toric_model = io::toric_model_from(d.at("toric_model"));
  } else if (e.kind == "toric") {
    e.toric_model = io::toric_model_from(io::require(d, "toric_model"));
  } else {
    throw InputError("unknown entry kind '" + e.kind + "'");
  }
  const json relabel = d.value("relabel", json::object());
  for (const auto& [k, v] : relabel.items()) e.relabel[k] = v.get<std::string>();
  if (d.contains("kernel_map")) {
    const auto& m = d.at("kernel_map");
    e.kernel_map = io::matrix_from(m, m.empty() ? 0 : m[0].size());
  }
  if (d.contains("table")) {
    const json display = d.at("table").value("weyl_display", json::object());
    for (const auto& [k, v] : display.items())
      e.table.weyl_display[k] = v.get<std::string>();
    e.table.row_order = d.at("table").value("row_order", std::vector<std::string>{});
  }
  e.expected = d.value("expected", json::object());
  return e;
}

inline json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& err) {
    throw InputError(path + ": " + err.what());
  }
}

inline Entry load_file(const std::string& path, const Parameters& overrides = {}) {
  return load_entry(read_json(path), path, overrides);
}

inline std::vector<Entry> load_corpus(const std::string& dir = default_dir) {
  std::vector<std::string> paths;
  for (const auto& f : std::filesystem::directory_iterator(dir))
    if (f.path().extension() == ".json") paths.push_back(f.path().string());
  std::sort(paths.begin(), paths.end());
  std::vector<Entry> out;
  for (const auto& p : paths) out.push_back(load_file(p));
  return out;
}

/// Construction for spherical entries, downgrade for toric ones.
inline DivisorialFan produce(const Entry& e) {
  if (e.kind == "spherical") return build_general(*e.colored_fan, *e.datum).fan;
  return downgrade(*e.toric_model).fan;
}

/// Applies the kernel map for comparison with hand-transcribed values.
inline DivisorialFan presented(const Entry& e, const DivisorialFan& f) {
  if (!e.kernel_map) return f;
  std::vector<PDivisor> moved;
  for (const auto& d : f.maximal()) moved.push_back(d.transformed(*e.kernel_map));
  return DivisorialFan(f.rank(), std::move(moved));
}

struct Verdict {
  std::vector<std::string> failures;
  std::vector<std::string> checked;
  bool ok() const { return failures.empty(); }
};

inline std::set<std::string> string_set(const json& j) {
  std::set<std::string> s;
  for (const auto& x : j) s.insert(x.get<std::string>());
  return s;
}

inline std::string joined(const std::set<std::string>& s) {
  std::string out = "{";
  for (const auto& x : s) out += (out.size() > 1 ? "," : "") + x;
  return out + "}";
}

namespace detail {

inline void check_fan(const std::string& where, const DivisorialFan& f, const json& x, const TableOptions& table,
                      Verdict& v) {
  auto fail = [&](std::string s) { v.failures.push_back(where + ": " + std::move(s)); };
  if (x.contains("count")) {
    v.checked.push_back(where + "/count");
    if (f.maximal().size() != x.at("count").get<std::size_t>())
      fail("expected " + x.at("count").dump() + " maximal p-divisors, got " + std::to_string(f.maximal().size()));
  }
  if (x.contains("maximal")) {
    v.checked.push_back(where + "/maximal");
    std::vector<PDivisor> ds;
    for (const auto& d : x.at("maximal")) ds.push_back(io::pdivisor_from(d, f.rank()));
    const auto diff = diff_canonical(f, DivisorialFan(f.rank(), std::move(ds)));
    for (const auto& s : diff.only_first) fail("unexpected p-divisor " + s);
    for (const auto& s : diff.only_second) fail("missing p-divisor " + s);
  }
  if (x.contains("slices")) {
    v.checked.push_back(where + "/slices");
    const auto labels = f.labels();
    for (const auto& [key, spec] : x.at("slices").items()) {
      const auto it = std::find_if(labels.begin(), labels.end(), [&](const DivisorLabel& l) { return l.key() == key; });
      if (it == labels.end()) {
        fail("no slice for " + key);
        continue;
      }
      const SliceComplex s = f.slice(*it);
      if (spec.contains("points")) {
        std::vector<RatVector> pts;
        for (const auto& p : spec.at("points")) pts.push_back({io::rational_from(p)});
        if (s.points() != pts) fail("slice " + key + " has points " + io::vectors_json(s.points()).dump());
      }
      for (const auto& c : spec.value("cells", json::array())) {
        const Polyhedron cell = io::polyhedron_from(c.at("cell"), f.rank());
        const auto found =
            std::find_if(s.cells.begin(), s.cells.end(), [&](const SliceCell& sc) { return sc.cell == cell; });
        if (found == s.cells.end()) {
          fail("slice " + key + " lacks cell " + cell.to_string());
          continue;
        }
        for (const std::string field : {"labels", "containing"}) {
          if (!c.contains(field)) continue;
          const auto want = string_set(c.at(field));
          const auto& have = field == "labels" ? found->labels : found->containing;
          if (want != have)
            fail("slice " + key + " cell " + cell.to_string() + " " + field + " " + joined(have) + " != " + joined(want));
        }
      }
      if (spec.contains("empty") && string_set(spec.at("empty")) != s.empty_labels)
        fail("slice " + key + " empty labels " + joined(s.empty_labels));
    }
  }
  if (x.contains("table")) {
    v.checked.push_back(where + "/table");
    const Table t = make_table(f, table);
    const json& want = x.at("table");
    if (!t.point_layout) {
      fail("table does not have the one-point layout");
      return;
    }
    if (want.contains("columns") && want.at("columns").get<std::vector<std::string>>() != t.columns)
      fail("table columns differ");
    const auto& rows = want.at("rows");
    if (rows.size() != t.rows.size()) fail("table has " + std::to_string(t.rows.size()) + " rows");
    for (std::size_t r = 0; r < std::min(rows.size(), t.rows.size()); ++r) {
      const auto& wr = rows[r];
      const auto& tr = t.rows[r];
      if (wr.at("label").get<std::string>() != tr.label) fail("row " + std::to_string(r) + " is " + tr.label);
      if (io::rational_from(wr.at("v")) != *tr.v) fail("row " + tr.label + " has v = " + tr.v->str());
      if (wr.at("cells").size() != tr.cells.size()) fail("row " + tr.label + " has the wrong number of cells");
      for (std::size_t c = 0; c < tr.cells.size() && c < wr.at("cells").size(); ++c) {
        const std::set<std::string> have(tr.cells[c].begin(), tr.cells[c].end());
        const auto want_cell = string_set(wr.at("cells")[c]);
        if (have != want_cell || have.size() != tr.cells[c].size())
          fail("row " + tr.label + " column " + t.columns[c] + " labels " + joined(have) + " != " + joined(want_cell));
      }
    }
  }
}

}  // namespace detail

/// Compares an entry's output with its expected blocks: "expected" for the
/// produced fan, "expected_downgrade" for the toric model of a spherical entry.
inline Verdict verify(const Entry& e) {
  Verdict v;
  const json& x = e.expected;
  auto fail = [&](std::string s) { v.failures.push_back(e.name + ": " + std::move(s)); };
  detail::check_fan(e.name, presented(e, produce(e)), x, e.table, v);
  if (e.kind == "spherical" && e.toric_model && e.doc.contains("expected_downgrade"))
    detail::check_fan(e.name + " (downgrade)", downgrade(*e.toric_model).fan, e.doc.at("expected_downgrade"), e.table, v);

  if (x.contains("base_rays")) {
    v.checked.push_back("base_rays");
    const Fan base = e.datum ? base_fan(*e.colored_fan, *e.datum).fan : downgrade(*e.toric_model).base.fan;
    if (io::vectors_json(base.rays()) != x.at("base_rays")) fail("base fan rays " + io::vectors_json(base.rays()).dump());
  }
  if (x.contains("shift_vectors") && e.datum) {
    v.checked.push_back("shift_vectors");
    for (const auto& [c, s] : x.at("shift_vectors").items())
      if (e.datum->shift_vector(c) != io::int_vector_from(s)) fail("shift vector of " + c);
  }
  if (x.value("crosscheck", false)) {
    v.checked.push_back("crosscheck");
    if (!e.toric_model || !e.datum) {
      fail("crosscheck needs a datum and a toric model");
    } else {
      const auto diff = crosscheck(*e.datum, *e.colored_fan, *e.toric_model, e.relabel, e.kernel_map);
      for (const auto& s : diff.only_first) fail("crosscheck: only constructed " + s);
      for (const auto& s : diff.only_second) fail("crosscheck: only downgraded " + s);
    }
  }
  return v;
}

}  // namespace divfan::corpus
