#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "divfan/fan.hpp"

namespace divfan {

enum class LabelKind { Invariant, Color, TranslatedColor, OrbitClosure, Named };

/// Prime divisor of the base on which a p-divisor coefficient sits.
struct DivisorLabel {
  LabelKind kind = LabelKind::Named;
  std::string name;   ///< color or free name
  IntVector ray;      ///< invariant divisors and orbit closures
  std::string weyl;   ///< reduced word of a translated color

  static DivisorLabel invariant(IntVector ray) { return {LabelKind::Invariant, "", std::move(ray), ""}; }
  static DivisorLabel color(std::string name) { return {LabelKind::Color, std::move(name), {}, ""}; }
  static DivisorLabel translated(std::string weyl, std::string name) {
    if (weyl.empty()) return color(std::move(name));
    return {LabelKind::TranslatedColor, std::move(name), {}, std::move(weyl)};
  }
  static DivisorLabel orbit(IntVector ray) { return {LabelKind::OrbitClosure, "", std::move(ray), ""}; }
  static DivisorLabel named(std::string name) { return {LabelKind::Named, std::move(name), {}, ""}; }

  /// Stable textual key; also the display form.
  std::string key() const {
    switch (kind) {
      case LabelKind::Invariant: return "D" + vector_string(ray);
      case LabelKind::Color: return name;
      case LabelKind::TranslatedColor: return weyl + "." + name;
      case LabelKind::OrbitClosure: return "orb" + vector_string(ray);
      case LabelKind::Named: return name;
    }
    return name;
  }

  bool operator<(const DivisorLabel& o) const { return key() < o.key(); }
  bool operator==(const DivisorLabel& o) const { return key() == o.key(); }
};

/// Chart that produced a p-divisor: a cone and, for homogeneous spaces, a
/// Weyl group element together with its coset.
struct ChartLabel {
  std::string cone_id;
  std::vector<IntVector> cone_rays;
  std::string weyl;                ///< representative word
  std::vector<std::string> coset;  ///< all words of the coset, if any

  std::string display() const {
    if (coset.size() > 1) {
      std::string s = cone_id + "/{";
      for (std::size_t k = 0; k < coset.size(); ++k) s += (k ? "," : "") + (coset[k].empty() ? std::string("1") : coset[k]);
      return s + "}";
    }
    if (!coset.empty() || !weyl.empty()) return cone_id + "/" + (weyl.empty() ? std::string("1") : weyl);
    return cone_id;
  }

  /// Same cone and same Weyl coset; ids and representatives are ignored.
  bool same_chart(const ChartLabel& o) const {
    const std::set<std::string> a(coset.begin(), coset.end()), b(o.coset.begin(), o.coset.end());
    if (cone_rays.empty() || o.cone_rays.empty()) return cone_id == o.cone_id && a == b;
    std::set<IntVector> ra(cone_rays.begin(), cone_rays.end()), rb(o.cone_rays.begin(), o.cone_rays.end());
    return ra == rb && a == b;
  }
};

/// Polyhedral divisor sum over labels of coefficient polyhedra with a common
/// tail cone. Labels without a coefficient carry the tail itself.
class PDivisor {
 public:
  PDivisor() = default;

  PDivisor(Cone tail, std::map<DivisorLabel, Polyhedron> coefficients, std::optional<ChartLabel> label = {})
      : tail_(std::move(tail)), coefficients_(std::move(coefficients)), label_(std::move(label)) {
    for (const auto& [d, p] : coefficients_) {
      if (p.ambient_dim() != tail_.ambient_dim())
        throw InputError("coefficient at " + d.key() + " has the wrong rank");
      if (!p.is_empty() && !(p.tail_cone() == tail_))
        throw ValidationError("coefficient at " + d.key() + " does not have the common tail cone",
                              {{"label", d.key()}, {"coefficient", p.to_string()}});
    }
  }

  std::size_t rank() const noexcept { return tail_.ambient_dim(); }
  const Cone& tail() const noexcept { return tail_; }
  const std::map<DivisorLabel, Polyhedron>& coefficients() const noexcept { return coefficients_; }
  const std::optional<ChartLabel>& label() const noexcept { return label_; }
  void set_label(std::optional<ChartLabel> l) { label_ = std::move(l); }

  Polyhedron coefficient(const DivisorLabel& d) const {
    const auto it = coefficients_.find(d);
    return it == coefficients_.end() ? Polyhedron::from_cone(tail_) : it->second;
  }

  /// Labels with an empty coefficient.
  std::set<DivisorLabel> locus_complement() const {
    std::set<DivisorLabel> out;
    for (const auto& [d, p] : coefficients_)
      if (p.is_empty()) out.insert(d);
    return out;
  }

  /// Drops coefficients equal to the tail cone.
  PDivisor normalized() const {
    const Polyhedron t = Polyhedron::from_cone(tail_);
    std::map<DivisorLabel, Polyhedron> c;
    for (const auto& [d, p] : coefficients_)
      if (!(p == t)) c.emplace(d, p);
    return PDivisor(tail_, std::move(c), label_);
  }

  /// Coefficient-wise intersection.
  PDivisor intersect(const PDivisor& o) const {
    std::set<DivisorLabel> labels;
    for (const auto& [d, p] : coefficients_) labels.insert(d);
    for (const auto& [d, p] : o.coefficients_) labels.insert(d);
    std::map<DivisorLabel, Polyhedron> c;
    for (const auto& d : labels) c.emplace(d, coefficient(d).intersect(o.coefficient(d)));
    return PDivisor(tail_.intersect(o.tail_), std::move(c));
  }

  /// Renames labels by key; labels not in the map are kept.
  PDivisor relabeled(const std::map<std::string, std::string>& by_key) const {
    std::map<DivisorLabel, Polyhedron> c;
    for (const auto& [d, p] : coefficients_) {
      const auto it = by_key.find(d.key());
      const DivisorLabel nd = it == by_key.end() ? d : DivisorLabel::named(it->second);
      if (!c.emplace(nd, p).second) throw InputError("relabeling identifies two divisors as " + nd.key());
    }
    return PDivisor(tail_, std::move(c), label_);
  }

  /// Applies a linear automorphism of the lattice to every polyhedron.
  PDivisor transformed(const IntMatrix& m) const {
    std::map<DivisorLabel, Polyhedron> c;
    for (const auto& [d, p] : coefficients_) c.emplace(d, p.transform(m));
    return PDivisor(tail_.image(m), std::move(c), label_);
  }

  /// Key of the normalized coefficient data, ignoring the chart label.
  std::string canonical_key() const {
    const PDivisor n = normalized();
    std::string s = "T" + n.tail_.key();
    for (const auto& [d, p] : n.coefficients_) s += "|" + d.key() + "=" + (p.is_empty() ? "EMPTY" : p.homogenization().key());
    return s;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& [d, p] : coefficients_) s += (s.empty() ? "" : " + ") + p.to_string() + "*" + d.key();
    return s.empty() ? "0" : s;
  }

 private:
  Cone tail_;
  std::map<DivisorLabel, Polyhedron> coefficients_;
  std::optional<ChartLabel> label_;
};

/// Evaluation at a point of the dual of the tail: label -> min <coefficient, u>.
/// Empty coefficients are skipped.
inline std::map<DivisorLabel, Rational> evaluate(const PDivisor& d, const IntVector& u) {
  if (u.size() != d.rank()) throw InputError("evaluation point has the wrong rank");
  if (!d.tail().dual().contains(u)) throw ValidationError("evaluation point is not in the dual of the tail cone");
  std::map<DivisorLabel, Rational> out;
  for (const auto& [label, p] : d.coefficients())
    if (!p.is_empty()) out.emplace(label, *p.min_eval(u));
  return out;
}

using Incidence = std::vector<std::set<DivisorLabel>>;

struct Check {
  bool ok = true;
  nlohmann::json witness;
  std::vector<std::string> warnings;
};

/// Whether `sub` is a face of `d` with respect to the given incidence sets
/// (singletons over all labels by default).
inline Check face_check(const PDivisor& sub, const PDivisor& d, const Incidence* incidence = nullptr) {
  Check r;
  if (!sub.tail().is_face_of(d.tail())) {
    r.ok = false;
    r.witness = {{"reason", "tail is not a face"}, {"tail", sub.tail().key()}, {"of", d.tail().key()}};
    return r;
  }
  Incidence singles;
  if (!incidence) {
    std::set<DivisorLabel> all;
    for (const auto& [l, p] : sub.coefficients()) all.insert(l);
    for (const auto& [l, p] : d.coefficients()) all.insert(l);
    for (const auto& l : all) singles.push_back({l});
    incidence = &singles;
  }
  for (const auto& group : *incidence) {
    std::optional<Polyhedron> a, b;
    for (const auto& l : group) {
      const Polyhedron x = sub.coefficient(l), y = d.coefficient(l);
      a = a ? *a + x : x;
      b = b ? *b + y : y;
    }
    if (!a) continue;
    if (!a->is_face_of(*b)) {
      std::vector<std::string> names;
      for (const auto& l : group) names.push_back(l.key());
      r.ok = false;
      r.witness = {{"reason", "coefficient is not a face"}, {"labels", names}, {"coefficient", a->to_string()},
                   {"of", b->to_string()}};
      return r;
    }
  }
  return r;
}

/// Cell of a slice subdivision with the p-divisors whose coefficient equals it
/// (`labels`) and those whose coefficient contains it as a face (`containing`).
struct SliceCell {
  Polyhedron cell;
  std::set<std::string> labels;
  std::set<std::string> containing;
};

struct SliceComplex {
  DivisorLabel divisor;
  std::vector<SliceCell> cells;
  std::set<std::string> empty_labels;  ///< p-divisors with an empty coefficient here

  /// Vertices of the subdivision (points in rank one), sorted.
  std::vector<RatVector> points() const {
    std::set<RatVector> out;
    for (const auto& c : cells)
      if (c.cell.dimension() == 0 && c.cell.lineality().empty()) out.insert(c.cell.vertices().front());
    return {out.begin(), out.end()};
  }
};

/// Divisorial fan given by its maximal p-divisors.
class DivisorialFan {
 public:
  DivisorialFan() = default;
  DivisorialFan(std::size_t rank, std::vector<PDivisor> maximal) : rank_(rank), maximal_(std::move(maximal)) {
    for (const auto& d : maximal_)
      if (d.rank() != rank_) throw InputError("p-divisor rank differs from the fan rank");
  }

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<PDivisor>& maximal() const noexcept { return maximal_; }

  std::set<DivisorLabel> labels() const {
    std::set<DivisorLabel> out;
    for (const auto& d : maximal_)
      for (const auto& [l, p] : d.coefficients()) out.insert(l);
    return out;
  }

  /// Identifier of the k-th maximal p-divisor in slice listings.
  std::string id(std::size_t k) const {
    const auto& l = maximal_.at(k).label();
    return l ? l->display() : "#" + std::to_string(k);
  }

  /// All intersections of maximal p-divisors, without repetition.
  std::vector<PDivisor> closure() const {
    std::map<std::string, PDivisor> all;
    for (const auto& d : maximal_) all.emplace(d.canonical_key(), d.normalized());
    std::vector<PDivisor> frontier;
    for (auto& [k, d] : all) frontier.push_back(d);
    while (!frontier.empty()) {
      std::vector<PDivisor> next;
      for (const auto& a : frontier)
        for (const auto& m : maximal_) {
          PDivisor c = a.intersect(m).normalized();
          if (all.emplace(c.canonical_key(), c).second) next.push_back(c);
        }
      frontier = std::move(next);
    }
    std::vector<PDivisor> out;
    for (auto& [k, d] : all) out.push_back(std::move(d));
    return out;
  }

  Fan tail_fan() const {
    std::vector<Cone> tails;
    for (const auto& d : maximal_) tails.push_back(d.tail());
    return Fan(rank_, tails);
  }

  SliceComplex slice(const DivisorLabel& label) const {
    SliceComplex s{label, {}, {}};
    std::vector<std::pair<std::string, Polyhedron>> coeffs;
    for (std::size_t k = 0; k < maximal_.size(); ++k) {
      Polyhedron p = maximal_[k].coefficient(label);
      if (p.is_empty()) s.empty_labels.insert(id(k));
      else coeffs.emplace_back(id(k), std::move(p));
    }
    std::set<Polyhedron> cells;
    for (const auto& [k, p] : coeffs)
      for (auto& f : p.faces()) cells.insert(std::move(f));
    for (const auto& c : cells) {
      SliceCell sc{c, {}, {}};
      for (const auto& [k, p] : coeffs) {
        if (p == c) sc.labels.insert(k);
        if (c.is_face_of(p)) sc.containing.insert(k);
      }
      s.cells.push_back(std::move(sc));
    }
    std::stable_sort(s.cells.begin(), s.cells.end(), [](const SliceCell& a, const SliceCell& b) {
      return a.cell.dimension() < b.cell.dimension();
    });
    return s;
  }

  std::map<DivisorLabel, SliceComplex> slices() const {
    std::map<DivisorLabel, SliceComplex> out;
    for (const auto& l : labels()) out.emplace(l, slice(l));
    return out;
  }

 private:
  std::size_t rank_ = 0;
  std::vector<PDivisor> maximal_;
};

/// Face criterion for all pairs of maximal p-divisors, plus degeneracy.
inline Check check_divisorial_fan(const DivisorialFan& f, const Incidence* incidence = nullptr) {
  Check r;
  const auto labels = f.labels();
  for (std::size_t k = 0; k < f.maximal().size(); ++k) {
    const auto& d = f.maximal()[k];
    const bool degenerate = !labels.empty() && std::all_of(labels.begin(), labels.end(), [&](const DivisorLabel& l) {
      return d.coefficient(l).is_empty();
    });
    if (degenerate) {
      r.ok = false;
      r.witness = {{"reason", "all coefficients are empty"}, {"p_divisor", f.id(k)}};
      return r;
    }
  }
  for (std::size_t a = 0; a < f.maximal().size(); ++a)
    for (std::size_t b = a + 1; b < f.maximal().size(); ++b) {
      const PDivisor m = f.maximal()[a].intersect(f.maximal()[b]);
      for (std::size_t side : {a, b}) {
        Check c = face_check(m, f.maximal()[side], incidence);
        if (!c.ok) {
          r.ok = false;
          r.witness = c.witness;
          r.witness["pair"] = {f.id(a), f.id(b)};
          r.witness["face_of"] = f.id(side);
          return r;
        }
      }
    }
  if (!incidence && labels.size() > 1)
    r.warnings.push_back("face condition checked for single divisors only; supply incidence sets to check sums");
  return r;
}

/// Builds a divisorial fan, rejecting pairs that fail the face criterion.
inline DivisorialFan build_divisorial_fan(std::size_t rank, std::vector<PDivisor> maximal,
                                          const Incidence* incidence = nullptr) {
  DivisorialFan f(rank, std::move(maximal));
  const Check c = check_divisorial_fan(f, incidence);
  if (!c.ok) throw ValidationError("not a divisorial fan", c.witness);
  return f;
}

struct FanDiff {
  std::vector<std::string> only_first;
  std::vector<std::string> only_second;
  bool equal() const { return only_first.empty() && only_second.empty(); }
};

/// Compares two divisorial fans as sets of normalized p-divisors. The first
/// fan is renamed through `relabel` (label key -> label key) beforehand.
inline FanDiff diff_canonical(const DivisorialFan& a, const DivisorialFan& b,
                              const std::map<std::string, std::string>& relabel = {}, bool compare_charts = false) {
  auto keyed = [&](const DivisorialFan& f, bool rename) {
    std::map<std::string, std::string> out;
    for (const auto& d : f.maximal()) {
      const PDivisor x = rename ? d.relabeled(relabel) : d;
      std::string k = x.canonical_key();
      if (compare_charts && x.label()) {
        std::set<IntVector> rays(x.label()->cone_rays.begin(), x.label()->cone_rays.end());
        std::set<std::string> coset(x.label()->coset.begin(), x.label()->coset.end());
        std::string c = "@";
        for (const auto& r : rays) c += vector_string(r);
        for (const auto& w : coset) c += "/" + w;
        k += c;
      }
      out.emplace(k, x.normalized().to_string());
    }
    return out;
  };
  const auto ka = keyed(a, true), kb = keyed(b, false);
  FanDiff d;
  for (const auto& [k, s] : ka)
    if (!kb.count(k)) d.only_first.push_back(s);
  for (const auto& [k, s] : kb)
    if (!ka.count(k)) d.only_second.push_back(s);
  return d;
}

inline bool equal_canonical(const DivisorialFan& a, const DivisorialFan& b,
                            const std::map<std::string, std::string>& relabel = {}, bool compare_charts = false) {
  return diff_canonical(a, b, relabel, compare_charts).equal();
}

}  // namespace divfan
