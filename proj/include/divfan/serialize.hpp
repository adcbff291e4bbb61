#pragma once

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "divfan/downgrade.hpp"

namespace divfan::io {

using json = nlohmann::json;

inline constexpr const char* schema_version = "divfan/1";

// Scalars and vectors. Integers are emitted as numbers when they fit, rationals
// as "p/q" strings; both forms are accepted on input.

inline Rational rational_from(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError("expected a rational, got " + j.dump());
}

inline Integer integer_from(const json& j) {
  const Rational r = rational_from(j);
  if (denominator(r) != 1) throw InputError("expected an integer, got " + j.dump());
  return numerator(r);
}

inline json to_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return x.convert_to<long long>();
  return x.str();
}

inline json to_json(const Rational& x) {
  if (denominator(x) == 1) return to_json(Integer(numerator(x)));
  return x.str();
}

inline IntVector int_vector_from(const json& j, std::optional<std::size_t> size = std::nullopt) {
  if (!j.is_array()) throw InputError("expected an integer vector, got " + j.dump());
  IntVector v;
  for (const auto& x : j) v.push_back(integer_from(x));
  if (size && v.size() != *size)
    throw InputError("vector " + j.dump() + " should have " + std::to_string(*size) + " entries");
  return v;
}

inline RatVector rat_vector_from(const json& j, std::optional<std::size_t> size = std::nullopt) {
  if (!j.is_array()) throw InputError("expected a rational vector, got " + j.dump());
  RatVector v;
  for (const auto& x : j) v.push_back(rational_from(x));
  if (size && v.size() != *size)
    throw InputError("vector " + j.dump() + " should have " + std::to_string(*size) + " entries");
  return v;
}

template <class V>
json vector_json(const V& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

template <class V>
json vectors_json(const std::vector<V>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(vector_json(v));
  return a;
}

inline std::vector<IntVector> int_vectors_from(const json& j, std::size_t size) {
  std::vector<IntVector> out;
  if (j.is_null()) return out;
  if (!j.is_array()) throw InputError("expected a list of vectors, got " + j.dump());
  for (const auto& v : j) out.push_back(int_vector_from(v, size));
  return out;
}

/// Matrix given by rows; an empty list is the map to rank zero.
inline IntMatrix matrix_from(const json& j, std::size_t cols) {
  return IntMatrix::from_rows(cols, int_vectors_from(j, cols));
}

inline json to_json(const IntMatrix& m) { return vectors_json(m.row_list()); }

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::size_t size_from(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_unsigned()) throw InputError(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

// Cones, polyhedra, fans.

inline Cone cone_from(const json& j, std::size_t d) {
  if (j.is_object() && (j.contains("inequalities") || j.contains("equations"))) {
    return Cone::from_inequalities(d, int_vectors_from(j.value("inequalities", json()), d),
                                   int_vectors_from(j.value("equations", json()), d));
  }
  if (j.is_array()) return Cone::from_generators(d, int_vectors_from(j, d));
  if (!j.is_object()) throw InputError("expected a cone, got " + j.dump());
  return Cone::from_generators(d, int_vectors_from(j.value("rays", json()), d),
                               int_vectors_from(j.value("lineality", json()), d));
}

inline json to_json(const Cone& c) {
  json j = {{"rays", vectors_json(c.rays())}};
  if (!c.lineality().empty()) j["lineality"] = vectors_json(c.lineality());
  return j;
}

/// Rank-one interval notation as printed by Polyhedron::to_string.
inline Polyhedron interval_from(const std::string& s) {
  if (s == "EMPTY") return Polyhedron::empty(1);
  if (s == "(-inf,inf)") return Polyhedron::from_inequalities(1, {});
  if (s.size() >= 3 && s.front() == '{' && s.back() == '}') {
    const Rational x = parse_rational(s.substr(1, s.size() - 2));
    return Polyhedron::point({x});
  }
  const auto comma = s.find(',');
  if (s.size() < 5 || comma == std::string::npos) throw InputError("malformed interval '" + s + "'");
  const std::string lo = s.substr(1, comma - 1), hi = s.substr(comma + 1, s.size() - comma - 2);
  std::vector<HalfSpace> ineqs;
  if (s.front() == '[') ineqs.push_back({RatVector{Rational(1)}, parse_rational(lo)});
  else if (!(s.front() == '(' && lo == "-inf")) throw InputError("malformed interval '" + s + "'");
  if (s.back() == ']') ineqs.push_back({RatVector{Rational(-1)}, -parse_rational(hi)});
  else if (!(s.back() == ')' && hi == "inf")) throw InputError("malformed interval '" + s + "'");
  return Polyhedron::from_inequalities(1, ineqs);
}

inline Polyhedron polyhedron_from(const json& j, std::size_t n) {
  if (j.is_string()) {
    if (j.get<std::string>() == "EMPTY") return Polyhedron::empty(n);
    if (n != 1) throw InputError("interval notation needs rank one");
    return interval_from(j.get<std::string>());
  }
  if (!j.is_object()) throw InputError("expected a polyhedron, got " + j.dump());
  std::vector<RatVector> vs;
  for (const auto& v : require(j, "vertices")) vs.push_back(rat_vector_from(v, n));
  return Polyhedron::from_vertices(n, vs, int_vectors_from(j.value("tail_rays", json()), n),
                                   int_vectors_from(j.value("lineality", json()), n));
}

inline json to_json(const Polyhedron& p) {
  if (p.is_empty() || p.ambient_dim() == 1) return p.to_string();
  json j = {{"vertices", vectors_json(p.vertices())}, {"tail_rays", vectors_json(p.tail_rays())}};
  if (!p.lineality().empty()) j["lineality"] = vectors_json(p.lineality());
  return j;
}

inline json to_json(const Fan& f) {
  json cones = json::array();
  for (const auto& c : f.maximal_cones()) cones.push_back(to_json(c));
  return {{"rank", f.ambient_dim()}, {"cones", cones}};
}

inline Fan fan_from(const json& j) {
  const std::size_t d = size_from(j, "rank");
  std::vector<Cone> cones;
  for (const auto& c : require(j, "cones")) cones.push_back(cone_from(c, d));
  return Fan(d, std::move(cones));
}

// Lattice data.

inline SplitSequence split_from(const json& j, std::size_t middle) {
  const IntMatrix p = matrix_from(require(j, "p"), middle);
  const IntMatrix q = matrix_from(require(j, "q"), middle);
  std::optional<IntMatrix> i;
  if (j.contains("i")) i = matrix_from(j.at("i"), q.rows());
  return make_split(p, q, i);
}

inline json to_json(const SplitSequence& s) {
  return {{"p", to_json(s.projection)}, {"q", to_json(s.cosection)}, {"i", to_json(s.embedding)}};
}

inline WeylGroup weyl_from(const json& j) {
  if (j.is_null()) return WeylGroup();
  std::vector<std::string> names = j.value("generators", std::vector<std::string>{});
  const std::size_t bound = j.value("bound", WeylGroup::default_bound);
  if (j.contains("cartan_type")) return WeylGroup::from_cartan_type(j.at("cartan_type").get<std::string>(), names, bound);
  if (j.contains("matrices")) {
    const std::size_t n = size_from(j, "dim");
    std::vector<WeylGroup::Matrix> gens;
    for (const auto& m : j.at("matrices")) {
      WeylGroup::Matrix flat;
      for (const auto& row : m)
        for (const auto& x : row) flat.push_back(x.get<std::int64_t>());
      gens.push_back(std::move(flat));
    }
    return WeylGroup::from_matrices(n, gens, names, bound);
  }
  throw InputError("weyl group needs 'cartan_type' or 'matrices'");
}

inline json weyl_json(const WeylGroup& w) {
  if (w.size() == 1 && w.rank() == 0) return nullptr;
  if (!w.type().empty()) return {{"cartan_type", w.type()}, {"generators", w.generator_names()}};
  json ms = json::array();
  const std::size_t n = w.representation_dim();
  for (const auto& m : w.generator_matrices()) {
    json rows = json::array();
    for (std::size_t r = 0; r < n; ++r) rows.push_back(std::vector<std::int64_t>(m.begin() + r * n, m.begin() + (r + 1) * n));
    ms.push_back(rows);
  }
  return {{"dim", n}, {"matrices", ms}, {"generators", w.generator_names()}};
}

inline SphericalDatum datum_from(const json& j) {
  const std::size_t rank = size_from(j, "rank");
  std::vector<IntVector> ineqs;
  if (j.contains("valuation_cone")) ineqs = int_vectors_from(j.at("valuation_cone").value("inequalities", json()), rank);
  std::vector<Color> colors;
  for (const auto& c : j.value("colors", json::array()))
    colors.push_back({require(c, "name").get<std::string>(), int_vector_from(require(c, "rho"), rank),
                      c.value("stabilizer_roots", std::vector<std::string>{})});
  std::vector<ColorAction> action;
  for (const auto& a : j.value("color_action", json::array()))
    action.push_back({require(a, "weyl").get<std::string>(), require(a, "color").get<std::string>(),
                      require(a, "divisor").get<std::string>()});
  return SphericalDatum(rank, std::move(ineqs), std::move(colors), weyl_from(j.value("weyl", json())),
                        split_from(require(j, "split"), rank), std::move(action));
}

inline json to_json(const SphericalDatum& d) {
  json colors = json::array();
  for (const auto& c : d.colors())
    colors.push_back({{"name", c.name}, {"rho", vector_json(c.rho)}, {"stabilizer_roots", c.stabilizer_roots}});
  json j = {{"rank", d.rank()},
            {"valuation_cone", {{"inequalities", vectors_json(d.valuation_inequalities())}}},
            {"colors", colors},
            {"weyl", weyl_json(d.weyl())},
            {"split", to_json(d.split())}};
  if (d.has_action_table()) {
    json rows = json::array();
    for (const auto& r : d.action_rows()) rows.push_back({{"weyl", r.weyl.empty() ? "1" : r.weyl}, {"color", r.color}, {"divisor", r.divisor}});
    j["color_action"] = rows;
  }
  return j;
}

inline ColoredFan colored_fan_from(const json& j) {
  const std::size_t d = size_from(j, "rank");
  std::vector<ColoredCone> cones;
  for (const auto& c : require(j, "cones")) {
    std::set<std::string> colors;
    for (const auto& n : c.value("colors", json::array())) colors.insert(n.get<std::string>());
    cones.push_back({cone_from(c, d), std::move(colors)});
  }
  return ColoredFan(d, std::move(cones));
}

inline json to_json(const ColoredFan& cf) {
  json cones = json::array();
  for (const auto& c : cf.maximal()) {
    json x = to_json(c.cone);
    x["colors"] = c.colors;
    cones.push_back(x);
  }
  return {{"rank", cf.rank()}, {"cones", cones}};
}

inline ToricModel toric_model_from(const json& j) {
  const std::size_t d = size_from(j, "rank");
  ToricModel m;
  bool named = false;
  for (const auto& c : require(j, "cones")) {
    m.cones.push_back(cone_from(c, d));
    m.cone_names.push_back(c.is_object() ? c.value("name", std::string()) : std::string());
    named |= !m.cone_names.back().empty();
  }
  if (!named) m.cone_names.clear();
  m.split = split_from(require(j, "split"), d);
  for (const auto& b : j.value("base_divisors", json::array()))
    m.base_divisors.push_back({int_vector_from(require(b, "ray"), m.split.quotient_rank()), require(b, "name").get<std::string>()});
  return m;
}

inline json to_json(const ToricModel& m) {
  json cones = json::array();
  for (std::size_t k = 0; k < m.cones.size(); ++k) {
    json c = to_json(m.cones[k]);
    if (!m.cone_names.empty()) c["name"] = m.cone_names[k];
    cones.push_back(c);
  }
  json base = json::array();
  for (const auto& b : m.base_divisors) base.push_back({{"ray", vector_json(b.ray)}, {"name", b.name}});
  return {{"rank", m.split.middle_rank()}, {"cones", cones}, {"split", to_json(m.split)}, {"base_divisors", base}};
}

// Divisorial fans.

/// Recovers the kind of a label from its key.
inline DivisorLabel label_from(const std::string& key) {
  auto vec = [&](std::size_t prefix) {
    const std::string inner = key.substr(prefix + 1, key.size() - prefix - 2);
    IntVector v;
    std::size_t start = 0;
    while (start <= inner.size()) {
      const auto end = inner.find(',', start);
      v.push_back(numerator(parse_rational(inner.substr(start, end - start))));
      if (end == std::string::npos) break;
      start = end + 1;
    }
    return v;
  };
  try {
    if (key.size() > 3 && key.rfind("D(", 0) == 0 && key.back() == ')') return DivisorLabel::invariant(vec(1));
    if (key.size() > 5 && key.rfind("orb(", 0) == 0 && key.back() == ')') return DivisorLabel::orbit(vec(3));
  } catch (const InputError&) {
  }
  const auto dot = key.find('.');
  if (dot != std::string::npos && dot > 0 && dot + 1 < key.size()) {
    const std::string w = key.substr(0, dot);
    if (std::all_of(w.begin(), w.end(), [](unsigned char c) { return std::isalpha(c); }))
      return DivisorLabel::translated(w, key.substr(dot + 1));
  }
  return DivisorLabel::named(key);
}

inline json to_json(const ChartLabel& c) {
  json j = {{"cone", c.cone_id}, {"rays", vectors_json(c.cone_rays)}};
  if (!c.weyl.empty() || !c.coset.empty()) {
    j["weyl"] = c.weyl.empty() ? "1" : c.weyl;
    json coset = json::array();
    for (const auto& w : c.coset) coset.push_back(w.empty() ? "1" : w);
    j["coset"] = coset;
  }
  return j;
}

inline std::string word_from(const json& j) {
  const std::string w = j.get<std::string>();
  return w == "1" ? "" : w;
}

inline ChartLabel chart_from(const json& j) {
  ChartLabel c;
  c.cone_id = j.value("cone", std::string());
  for (const auto& r : j.value("rays", json::array())) c.cone_rays.push_back(int_vector_from(r));
  if (j.contains("weyl")) c.weyl = word_from(j.at("weyl"));
  for (const auto& w : j.value("coset", json::array())) c.coset.push_back(word_from(w));
  return c;
}

inline json to_json(const PDivisor& d) {
  json coeffs = json::object();
  for (const auto& [label, p] : d.coefficients()) coeffs[label.key()] = to_json(p);
  json j = {{"tail", d.rank() == 1 ? json(Polyhedron::from_cone(d.tail()).to_string()) : to_json(d.tail())},
            {"coefficients", coeffs}};
  if (d.label()) j["chart"] = to_json(*d.label());
  return j;
}

inline PDivisor pdivisor_from(const json& j, std::size_t rank) {
  const json& t = require(j, "tail");
  const Cone tail = t.is_string() ? polyhedron_from(t, rank).tail_cone() : cone_from(t, rank);
  std::map<DivisorLabel, Polyhedron> coeff;
  const json coefficients = j.value("coefficients", json::object());
  for (const auto& [key, p] : coefficients.items())
    coeff.emplace(label_from(key), polyhedron_from(p, rank));
  std::optional<ChartLabel> chart;
  if (j.contains("chart")) chart = chart_from(j.at("chart"));
  return PDivisor(tail, std::move(coeff), std::move(chart));
}

inline json to_json(const DivisorialFan& f) {
  json ds = json::array();
  for (const auto& d : f.maximal()) ds.push_back(to_json(d));
  return {{"schema", schema_version}, {"kind", "divisorial_fan"}, {"rank", f.rank()}, {"p_divisors", ds}};
}

inline DivisorialFan divisorial_fan_from(const json& j) {
  const std::size_t rank = size_from(j, "rank");
  std::vector<PDivisor> ds;
  for (const auto& d : require(j, "p_divisors")) ds.push_back(pdivisor_from(d, rank));
  return DivisorialFan(rank, std::move(ds));
}

inline json to_json(const SliceComplex& s) {
  json cells = json::array();
  for (const auto& c : s.cells)
    cells.push_back({{"cell", to_json(c.cell)}, {"labels", c.labels}, {"containing", c.containing}});
  json j = {{"divisor", s.divisor.key()}, {"cells", cells}, {"empty", s.empty_labels}};
  if (!s.cells.empty() && s.cells.front().cell.ambient_dim() == 1) j["points"] = vectors_json(s.points());
  return j;
}

inline json to_json(const BaseFan& b) {
  json labels = json::array();
  for (const auto& [r, l] : b.labels) labels.push_back({{"ray", vector_json(r)}, {"label", l.key()}});
  return {{"fan", to_json(b.fan)}, {"labels", labels}};
}

inline json to_json(const ConstructionResult& r) {
  json shifts = json::object();
  for (const auto& [c, s] : r.shift_vectors) shifts[c] = vector_json(s);
  return {{"schema", schema_version},     {"kind", "construction"},       {"base_fan", to_json(r.base)},
          {"shift_vectors", shifts},      {"refined_fan", to_json(r.refined_fan)}, {"divisorial_fan", to_json(r.fan)}};
}

inline json to_json(const FanDiff& d) {
  return {{"equal", d.equal()}, {"only_constructed", d.only_first}, {"only_reference", d.only_second}};
}

}  // namespace divfan::io
