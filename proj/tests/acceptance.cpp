// Acceptance criteria 1-7. Run without arguments for all of them, or pass
// criterion numbers. One line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "divfan/cli.hpp"

using namespace divfan;
using json = nlohmann::json;

namespace {

const std::string data_dir = DIVFAN_TEST_DATA;

struct Failure {
  std::string what;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure{what};
}

template <class T>
std::string show(const T& xs) {
  std::string s = "[";
  for (const auto& x : xs) s += (s.size() > 1 ? "; " : "") + std::string(x);
  return s + "]";
}

/// Runs the command line tool in-process; returns exit code and stdout.
std::pair<int, std::string> cli_run(std::vector<std::string> args) {
  args.insert(args.begin(), "divfan");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, code == 0 ? out.str() : out.str() + err.str()};
}

DivisorialFan fan_from_cli(const std::vector<std::string>& args, const std::string& field = "divisorial_fan") {
  const auto [code, out] = cli_run(args);
  require(code == 0, args[0] + " " + args[1] + " exited with " + std::to_string(code) + ": " + out);
  return io::divisorial_fan_from(json::parse(out).at(field));
}

/// Interval notation with the symbols used in printed tables.
std::string printed(std::string s) {
  auto replace = [&](const std::string& from, const std::string& to) {
    for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) s.replace(p, from.size(), to);
  };
  replace("EMPTY", "∅");
  replace("inf", "∞");
  replace("*", "⊗");
  return s;
}

std::vector<std::string> printed_elements(const DivisorialFan& f, bool normalize) {
  std::vector<std::string> out;
  for (const auto& d : f.maximal()) out.push_back(printed(normalize ? d.normalized().to_string() : d.to_string()));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

corpus::Entry entry(const std::string& name, const corpus::Parameters& params = {}) {
  return corpus::load_file(std::string(corpus::default_dir) + "/" + name + ".json", params);
}

std::string slice_notation(const SliceComplex& s) {
  std::string out = "(-∞,";
  for (const auto& p : s.points()) out += p[0].str() + ",";
  return out + "∞)";
}

// 1 ---------------------------------------------------------------------------

void sl2u_corpus() {
  const std::map<std::string, std::vector<std::string>> listed{
      {"a", {"∅⊗0", "[1,∞)⊗0 + ∅⊗∞"}},
      {"b", {"[1,∞)⊗0"}},
      {"c", {"∅⊗0", "(-∞,1]⊗0 + ∅⊗∞"}},
      {"d", {"∅⊗0", "[1,∞)⊗0 + ∅⊗∞", "∅⊗0", "(-∞,1]⊗0 + ∅⊗∞"}},
      {"e", {"[1,∞)⊗0", "∅⊗0", "(-∞,1]⊗0 + ∅⊗∞"}},
  };
  const std::map<std::string, std::size_t> counts{{"a", 2}, {"b", 1}, {"c", 2}, {"d", 4}, {"e", 3}};
  for (const auto& [k, want] : listed) {
    const DivisorialFan f = fan_from_cli({"construct", "sl2u_" + k});
    const auto got = printed_elements(f, true);
    require(got.size() == counts.at(k), "(" + k + ") has " + std::to_string(got.size()) + " elements");
    require(got == sorted(want), "(" + k + ") gives " + show(got));
    // the colored chart carries the whole Weyl group as its coset
    for (const auto& d : f.maximal()) {
      const bool colored = d.normalized().to_string() == "[1,inf)*0" && d.coefficients().size() == 1;
      require(d.label() && d.label()->coset.size() == (colored ? 2u : 1u), "(" + k + ") chart labels");
    }
  }
}

// 2 ---------------------------------------------------------------------------

std::vector<std::string> toric_row(const PDivisor& d) {
  const auto zero = DivisorLabel::named("0"), inf = DivisorLabel::named("∞");
  const bool everywhere = !d.coefficient(inf).is_empty() && !d.coefficient(zero).is_empty();
  const std::string locus = everywhere ? "P1" : d.coefficient(inf).is_empty() ? "P1 - ∞" : "P1 - 0";
  return {printed(d.coefficient(zero).to_string()), printed(d.coefficient(inf).to_string()),
          printed(Polyhedron::from_cone(d.tail()).to_string()), locus};
}

std::vector<std::vector<std::string>> toric_rows(const DivisorialFan& f) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& d : f.maximal()) rows.push_back(toric_row(d));
  std::sort(rows.begin(), rows.end());
  return rows;
}

void toric_tables() {
  using Rows = std::vector<std::vector<std::string>>;
  const std::map<std::string, Rows> plane{
      {"c2_parabolic", {{"[0,∞)", "∅", "[0,∞)", "P1 - ∞"}}},
      {"c2_elliptic", {{"[0,∞)", "[1,∞)", "[0,∞)", "P1"}}},
      {"c2_hyperbolic", {{"[0,1]", "∅", "{0}", "P1 - ∞"}}},
  };
  for (const auto& [name, want] : plane) {
    const auto got = toric_rows(fan_from_cli({"downgrade", name}));
    require(got == want, name + " row differs");
  }
  for (int n : {1, 2, 3, 5, 8}) {
    const std::string param = "n=" + std::to_string(n);
    const std::string ns = std::to_string(n), frac = Rational(n, n + 1).str();
    const auto first = printed_elements(fan_from_cli({"downgrade", "o_n_bundle", "--param", param}), false);
    require(first == sorted({"[" + ns + ",∞)⊗0 + ∅⊗∞", "∅⊗0 + [0,∞)⊗∞"}), "bundle, fibre action, n=" + ns + ": " + show(first));
    const auto second = printed_elements(fan_from_cli({"downgrade", "o_n_bundle_diagonal", "--param", param}), false);
    require(second == sorted({"[0,∞)⊗0 + [1,∞)⊗∞", "∅⊗0 + [" + frac + ",1]⊗∞"}),
            "bundle, diagonal action, n=" + ns + ": " + show(second));
  }
  const Rows p2{{"(-∞,-1]", "(-∞,1/2]", "(-∞,0]", "P1"}, {"[-1,0]", "∅", "{0}", "P1 - ∞"}, {"[0,∞)", "[1/2,∞)", "[0,∞)", "P1"}};
  require(toric_rows(fan_from_cli({"downgrade", "p2_102"})) == p2, "weighted plane table differs");
}

// 3 ---------------------------------------------------------------------------

void gl2_suite() {
  const auto blp4 = entry("gl2_blp4");
  require(blp4.datum->shift_vector("D") == IntVector{Integer(-1)}, "shift vector is not -1");
  require(base_fan(*blp4.colored_fan, *blp4.datum).fan.rays().size() == 1, "base fan does not have one ray");

  const DivisorialFan f = corpus::presented(blp4, fan_from_cli({"construct", "gl2_blp4"}));
  require(f.maximal().size() == 8, "blown-up projective closure has " + std::to_string(f.maximal().size()) + " elements");
  std::map<std::string, Cone> tail_of;
  for (std::size_t k = 0; k < f.maximal().size(); ++k) tail_of.emplace(f.id(k), f.maximal()[k].tail());
  const Cone right = Cone::from_generators(1, {IntVector{Integer(1)}}), left = Cone::from_generators(1, {IntVector{Integer(-1)}});
  for (const auto& [label, s] : f.slices()) {
    const std::string n = slice_notation(s);
    require(n == "(-∞,1,∞)" || n == "(-∞,0,∞)", label.key() + " slice is " + n);
    for (const Cone& side : {left, right}) {
      std::size_t labels = 0;
      for (const auto& c : s.cells)
        if (c.cell.dimension() == 1 && c.cell.tail_cone() == side) labels += c.labels.size();
      for (const auto& id : s.empty_labels) labels += tail_of.at(id) == side;
      require(labels == 4, label.key() + " has " + std::to_string(labels) + " labels on one side");
    }
  }

  // on the colored side the four charts merge into one
  const auto p4 = entry("gl2_p4");
  const DivisorialFan g = build_general(*p4.colored_fan, *p4.datum).fan;
  require(g.maximal().size() == 5, "projective closure has " + std::to_string(g.maximal().size()) + " elements");
  const Cone colored_tail =
      fiber_slice(p4.colored_fan->maximal()[1].cone, p4.datum->split(), IntVector{Integer(0)}).tail_cone();
  require(!p4.colored_fan->maximal()[1].colors.empty(), "second cone of the entry should be colored");
  std::size_t on_colored = 0;
  for (const auto& d : g.maximal()) {
    if (!(d.tail() == colored_tail)) continue;
    ++on_colored;
    require(d.label()->coset.size() == 4, "colored chart does not carry all four Weyl elements");
  }
  require(on_colored == 1, "colored side has " + std::to_string(on_colored) + " charts");

  for (const char* name : {"gl2_c4", "gl2_blc4", "gl2_p4", "gl2_blp4"}) {
    const auto [code, out] = cli_run({"crosscheck", name});
    require(code == 0, std::string("crosscheck failed for ") + name + ": " + out);
    const auto v = corpus::verify(entry(name));
    require(v.ok(), show(v.failures));
  }
}

// 4 ---------------------------------------------------------------------------

void grassmannian() {
  const DivisorialFan f = fan_from_cli({"downgrade", "grass24"});
  require(f.maximal().size() == 6, "P5 gives " + std::to_string(f.maximal().size()) + " elements");
  const std::set<std::string> middle{"D1", "D2", "D3", "D4"};
  const auto slices = f.slices();
  const std::map<std::string, std::string> shape{
      {"A", "(-∞,0,1,∞)"}, {"H1", "(-∞,0,∞)"}, {"H2", "(-∞,0,∞)"}, {"H3", "(-∞,0,∞)"}, {"H4", "(-∞,-1,∞)"}};
  require(slices.size() == shape.size(), "unexpected number of slices");
  for (const auto& [name, want] : shape) {
    const SliceComplex& s = slices.at(DivisorLabel::named(name));
    require(slice_notation(s) == want, name + " slice is " + slice_notation(s));
    auto expected_middle = middle;
    if (name != "A") expected_middle.erase("D" + name.substr(1));
    for (const auto& c : s.cells) {
      const auto& verts = c.cell.vertices();
      const bool unbounded = !c.cell.tail_rays().empty();
      const bool leftward = unbounded && c.cell.tail_rays()[0][0] < 0;
      const std::set<std::string> want_labels =
          !unbounded ? expected_middle : leftward ? std::set<std::string>{"D0"} : std::set<std::string>{"D5"};
      if (!unbounded && verts.size() == 1 && name == "A") continue;  // interior vertices of the A slice
      require(c.labels == want_labels, name + " cell " + c.cell.to_string() + " carries " + corpus::joined(c.labels));
    }
    const std::set<std::string> empties = name == "A" ? std::set<std::string>{} : std::set<std::string>{"D" + name.substr(1)};
    require(s.empty_labels == empties, name + " has empty coefficients on " + corpus::joined(s.empty_labels));
  }
}

// 5 ---------------------------------------------------------------------------

struct PrintedRow {
  std::string label;
  int v;
  std::string left, right;
};

void sl3_tables() {
  const std::map<std::string, std::vector<PrintedRow>> tables{
      {"sl3_a",
       {{"α", 1, "α,β,α+β,(βα)²", "α,β,α+β,(βα)²"},
        {"-α", 0, "1,β,βα,(βα)²", "1,β,βα,(βα)²"},
        {"β", -1, "α,β,α+β,βα", "α,β,α+β,βα"},
        {"-β", 0, "1,α,βα,(βα)²", "1,α,βα,(βα)²"},
        {"α+β", 0, "1,α+β,βα,(βα)²", "1,α+β,βα,(βα)²"},
        {"-α-β", 0, "1,α,β,α+β", "1,α,β,α+β"}}},
      {"sl3_b",
       {{"α", 1, "α,β,α+β,βα,(βα)²", "1,α,β,α+β,(βα)²"},
        {"-α", 0, "1,β,α+β,βα,(βα)²", "1,α,β,βα,(βα)²"},
        {"β", -1, "1,α,β,α+β,βα", "α,β,α+β,βα,(βα)²"},
        {"-β", 0, "1,α,β,βα,(βα)²", "1,α,α+β,βα,(βα)²"},
        {"α+β", 0, "1,α,α+β,βα,(βα)²", "1,β,α+β,βα,(βα)²"},
        {"-α-β", 0, "1,α,β,α+β,(βα)²", "1,α,β,α+β,βα"}}},
  };
  auto set_of = [](const std::string& s) {
    std::set<std::string> out;
    std::stringstream in(s);
    for (std::string x; std::getline(in, x, ',');) out.insert(x);
    return out;
  };
  for (const auto& [name, rows] : tables) {
    const auto [code, text] = cli_run({"construct", name, "--table"});
    require(code == 0 && text.find("α+β") != std::string::npos, name + " --table failed");
    const auto e = entry(name);
    const Table t = make_table(build_general(*e.colored_fan, *e.datum).fan, e.table);
    require(t.point_layout, name + " table is not in the one-point layout");
    require(t.columns == std::vector<std::string>{"(-inf,0]", "[0,inf)"}, name + " columns differ");
    require(t.rows.size() == rows.size(), name + " has " + std::to_string(t.rows.size()) + " rows");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& got = t.rows[r];
      require(got.label == rows[r].label, name + " row " + std::to_string(r) + " is " + got.label);
      require(*got.v == rows[r].v, name + " row " + got.label + " has v = " + got.v->str());
      const std::set<std::string> l(got.cells[0].begin(), got.cells[0].end()), rt(got.cells[1].begin(), got.cells[1].end());
      require(l.size() == got.cells[0].size() && l == set_of(rows[r].left), name + " row " + got.label + " left cell");
      require(rt.size() == got.cells[1].size() && rt == set_of(rows[r].right), name + " row " + got.label + " right cell");
    }
  }
}

// 6 ---------------------------------------------------------------------------

void concavity(std::mt19937& rng) {
  std::uniform_int_distribution<int> entry(-6, 6);
  int checked = 0;
  while (checked < 1000) {
    const std::size_t n = 1 + rng() % 3;
    std::vector<RatVector> vs;
    for (int k = 0; k < 1 + static_cast<int>(rng() % 4); ++k) {
      RatVector v(n);
      for (auto& x : v) x = Rational(entry(rng), 1 + std::abs(entry(rng)));
      vs.push_back(v);
    }
    std::vector<IntVector> rays;
    for (int k = 0; k < static_cast<int>(rng() % 3); ++k) {
      IntVector r(n);
      for (auto& x : r) x = entry(rng);
      if (!is_zero(r)) rays.push_back(r);
    }
    const Polyhedron p = Polyhedron::from_vertices(n, vs, rays);
    const PDivisor d(p.tail_cone(), {{DivisorLabel::named("P"), p}});
    const Cone dual = p.tail_cone().dual();
    auto sample = [&] {
      IntVector u(n, 0);
      for (const auto& g : dual.generators()) {
        const int c = std::abs(entry(rng));
        for (std::size_t k = 0; k < n; ++k) u[k] += c * g[k];
      }
      return u;
    };
    const IntVector u = sample(), v = sample();
    IntVector w(n), u3(n);
    for (std::size_t k = 0; k < n; ++k) {
      w[k] = u[k] + v[k];
      u3[k] = 3 * u[k];
    }
    const auto P = DivisorLabel::named("P");
    const Rational fu = evaluate(d, u).at(P), fv = evaluate(d, v).at(P), fw = evaluate(d, w).at(P);
    require(fw >= fu + fv, "evaluation is not superadditive");
    require(evaluate(d, u3).at(P) == 3 * fu, "evaluation is not homogeneous");
    ++checked;
  }
}

Integer cross(const IntVector& a, const IntVector& b) { return a[0] * b[1] - a[1] * b[0]; }

/// Brute force in the plane: the coarsest fan refining a set of pointed
/// planar cones inside a pointed support is cut out by every ray of every
/// image; its chambers are the sectors between angularly adjacent rays.
std::set<std::vector<IntVector>> planar_oracle(const std::vector<Cone>& images, const Cone& support) {
  std::set<IntVector> rays(support.rays().begin(), support.rays().end());
  for (const auto& k : images)
    for (const auto& r : k.rays()) rays.insert(r);
  std::vector<IntVector> rs(rays.begin(), rays.end());
  // order by angle from a boundary ray of the support
  const IntVector first = cross(support.rays()[0], support.rays()[1]) > 0 ? support.rays()[0] : support.rays()[1];
  std::sort(rs.begin(), rs.end(), [&](const IntVector& a, const IntVector& b) {
    if (a == first) return b != first;
    if (b == first) return false;
    return cross(a, b) > 0;
  });
  std::set<std::vector<IntVector>> out;
  for (std::size_t k = 0; k + 1 < rs.size(); ++k) out.insert(std::vector<IntVector>{std::min(rs[k], rs[k + 1]), std::max(rs[k], rs[k + 1])});
  return out;
}

void image_fans(std::mt19937& rng) {
  std::uniform_int_distribution<int> coord(-3, 3), map_entry(-2, 2);
  int tested = 0, attempts = 0;
  while (tested < 100) {
    require(++attempts < 100000, "could not generate enough instances");
    IntMatrix p = IntMatrix::from_rows(3, {IntVector{map_entry(rng), map_entry(rng), map_entry(rng)},
                                           IntVector{map_entry(rng), map_entry(rng), map_entry(rng)}});
    if (rank_of(3, p.row_list()) < 2) continue;
    std::vector<Cone> cones;
    const int want = 1 + static_cast<int>(rng() % 3);
    for (int c = 0; c < want * 4 && static_cast<int>(cones.size()) < want; ++c) {
      std::vector<IntVector> g;
      for (int k = 0; k < 3; ++k) g.push_back(IntVector{coord(rng), coord(rng), coord(rng)});
      if (rank_of(3, g) < 3) continue;
      auto trial = cones;
      trial.push_back(Cone::from_generators(3, g));
      const Fan f(3, trial);
      if (f.maximal_cones().size() == trial.size() && f.is_valid()) cones = std::move(trial);
    }
    if (cones.empty()) continue;
    const Fan source(3, cones);
    std::vector<Cone> images;
    std::vector<IntVector> all_rays;
    for (const auto& c : source.cones()) {
      images.push_back(c.image(p));
      for (const auto& r : images.back().rays()) all_rays.push_back(r);
      for (const auto& l : images.back().lineality()) all_rays.push_back(l);
    }
    const Cone support = Cone::from_generators(2, all_rays);
    if (!support.is_pointed() || support.dim() != 2) continue;
    const auto result = image_fan(source, p, support);
    std::set<std::vector<IntVector>> got;
    for (const auto& c : result.fan.maximal_cones()) {
      auto rs = c.rays();
      std::sort(rs.begin(), rs.end());
      got.insert(rs);
    }
    require(result.fan.is_valid(), "image fan is not a fan");
    require(got == planar_oracle(images, support), "image fan differs from the chamber oracle");
    // every image is a union of result cones meeting it in faces
    for (const auto& c : result.fan.maximal_cones())
      for (const auto& k : images) require(c.intersect(k).is_face_of(c), "an image cuts a cone of the image fan");
    // incidence lists the maximal images containing each cone
    for (std::size_t k = 0; k < result.fan.maximal_cones().size(); ++k) {
      const IntVector x = result.fan.maximal_cones()[k].relative_interior_point();
      std::vector<std::size_t> want_inc;
      for (std::size_t m = 0; m < source.maximal_cones().size(); ++m)
        if (source.maximal_cones()[m].image(p).contains(x)) want_inc.push_back(m);
      require(result.incidence[k] == want_inc, "image fan incidence differs");
    }
    ++tested;
  }
}

void minimal_coset_representatives() {
  for (const std::string type : {"A1", "A1xA1", "A2"}) {
    const auto w = WeylGroup::from_cartan_type(type);
    for (unsigned mask = 0; mask < (1u << w.rank()); ++mask) {
      std::set<std::size_t> gens;
      for (std::size_t k = 0; k < w.rank(); ++k)
        if (mask & (1u << k)) gens.insert(k);
      const auto sub = w.parabolic_subgroup(gens);
      const auto reps = w.min_coset_reps(gens);
      require(reps.size() * sub.size() == w.size(), type + ": wrong number of cosets");
      for (std::size_t x = 0; x < w.size(); ++x) {
        std::vector<std::size_t> minimal;
        std::size_t best = SIZE_MAX;
        for (std::size_t v : sub) best = std::min(best, w.length(w.multiply(x, v)));
        for (std::size_t v : sub)
          if (w.length(w.multiply(x, v)) == best) minimal.push_back(w.multiply(x, v));
        require(minimal.size() == 1, type + ": coset minimum is not unique");
        require(std::count(reps.begin(), reps.end(), minimal[0]) == 1, type + ": minimum is not a listed representative");
        // lengths add in the factorization
        std::size_t factorizations = 0;
        for (std::size_t u : reps)
          for (std::size_t v : sub)
            if (w.multiply(u, v) == x) {
              ++factorizations;
              require(w.length(x) == w.length(u) + w.length(v), type + ": lengths do not add");
            }
        require(factorizations == 1, type + ": factorization is not unique");
      }
    }
  }
}

void construction_properties() {
  for (const auto& e : corpus::load_corpus()) {
    if (!e.datum) continue;
    const ColoredFan t = toroidalize(*e.colored_fan, *e.datum);
    require(equal_canonical(build_general(t, *e.datum).fan, build_toroidal(t, *e.datum).fan, {}, true),
            e.name + ": general and toroidal constructions differ");
    for (const ColoredFan* cf : {&*e.colored_fan, &t}) {
      const DivisorialFan f = build_general(*cf, *e.datum).fan;
      for (const auto& c : e.datum->colors()) {
        const auto label = e.datum->act(WeylGroup::identity(), c.name);
        const RatVector s = to_rational(e.datum->shift_vector(c.name));
        for (const auto& d : f.maximal()) {
          const Polyhedron x = d.coefficient(label);
          require(x.is_empty() || x == Polyhedron::from_cone(d.tail()).translate(s),
                  e.name + ": coefficient of " + label.key() + " is not the shifted tail");
        }
      }
    }
  }
}

void properties() {
  std::mt19937 rng(20240611);
  concavity(rng);
  image_fans(rng);
  minimal_coset_representatives();
  construction_properties();
}

// 7 ---------------------------------------------------------------------------

void negative_controls() {
  const auto [c1, misses] = cli_run({"validate", data_dir + "/misses_valuation_cone.json"});
  require(c1 == cli::validation, "cone missing the valuation cone accepted");
  const json w1 = json::parse(misses).at("witness");
  require(w1.contains("meet") && w1.contains("cone"), "cone witness incomplete: " + w1.dump());

  const auto [c2, overlap] = cli_run({"validate", data_dir + "/overlap.json"});
  require(c2 == cli::validation, "overlapping colored fan accepted");
  const json w2 = json::parse(overlap).at("witness");
  require(w2.contains("first") && w2.contains("second") && w2.contains("point"), "overlap witness incomplete: " + w2.dump());
  const auto e = corpus::load_file(data_dir + "/overlap.json");
  IntVector x;
  {
    std::string text = w2.at("point").get<std::string>();
    require(text.size() > 2 && text.front() == '(' && text.back() == ')', "overlap point is not a vector: " + text);
    std::stringstream in(text.substr(1, text.size() - 2));
    for (std::string c; std::getline(in, c, ',');) x.push_back(Integer(c));
    require(x.size() == 2, "overlap point has the wrong rank: " + text);
  }
  require(e.datum->valuation_cone().contains(x), "overlap point is outside the valuation cone");
  std::size_t named = 0;
  for (const auto& cc : e.colored_fan->closure(*e.datum)) {
    const std::string key = cc.cone.key();
    if (key != w2.at("first") && key != w2.at("second")) continue;
    ++named;
    require(cc.cone.in_relative_interior(x), "overlap point is not interior to " + key);
  }
  require(named == 2, "overlap witness does not name two cones of the fan");

  const auto [c3, face] = cli_run({"validate", data_dir + "/bad_face.json"});
  require(c3 == cli::validation, "p-divisor pair failing the face criterion accepted");
  const json w3 = json::parse(face).at("witness");
  require(w3.contains("pair") && w3.contains("labels") && w3.contains("coefficient"), "face witness incomplete: " + w3.dump());
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<void()>>> criteria{
      {"SL2/U corpus reproduces the listed maximal elements", sl2u_corpus},
      {"toric downgrade tables", toric_tables},
      {"GL2 suite", gl2_suite},
      {"Grass(2,4) slices and labels", grassmannian},
      {"SL3 tables", sl3_tables},
      {"property suites", properties},
      {"negative controls", negative_controls},
  };
  std::set<std::size_t> selected;
  for (int k = 1; k < argc; ++k) selected.insert(static_cast<std::size_t>(std::atoi(argv[k])));
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (!selected.empty() && !selected.count(k + 1)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    std::string verdict = "PASS", detail;
    try {
      criteria[k].second();
    } catch (const Failure& f) {
      verdict = "FAIL";
      detail = f.what;
    } catch (const std::exception& ex) {
      verdict = "FAIL";
      detail = std::string("error: ") + ex.what();
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    all = all && verdict == "PASS";
    std::cout << "criterion " << k + 1 << ": " << verdict << "  " << criteria[k].first << " (" << ms << " ms)"
              << (detail.empty() ? "" : ": " + detail) << std::endl;
  }
  return all ? 0 : 1;
}
