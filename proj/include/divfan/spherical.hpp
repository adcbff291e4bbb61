#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "divfan/divisorial.hpp"
#include "divfan/fan.hpp"
#include "divfan/weyl.hpp"

namespace divfan {

struct Color {
  std::string name;
  IntVector rho;                              ///< valuation in the dual character lattice
  std::vector<std::string> stabilizer_roots;  ///< generator names of simple roots fixing the color
};

/// One row of the Weyl action on colors: w . color = divisor.
struct ColorAction {
  std::string weyl;
  std::string color;
  std::string divisor;
};

/// Combinatorial datum of a spherical homogeneous space together with the
/// splitting of its Tits fibration lattices.
class SphericalDatum {
 public:
  SphericalDatum() = default;

  /// Validates and assembles a datum. Valuation cone inequalities are
  /// functionals a with <a, x> <= 0.
  SphericalDatum(std::size_t rank, std::vector<IntVector> valuation_inequalities, std::vector<Color> colors,
                 WeylGroup weyl, SplitSequence split, std::vector<ColorAction> action = {})
      : rank_(rank),
        inequalities_(std::move(valuation_inequalities)),
        colors_(std::move(colors)),
        weyl_(std::move(weyl)),
        split_(std::move(split)) {
    std::vector<IntVector> ge;
    for (const auto& a : inequalities_) {
      if (a.size() != rank_) throw InputError("valuation cone inequality has the wrong rank");
      ge.push_back(negated(a));
    }
    valuation_cone_ = Cone::from_inequalities(rank_, ge);
    if (split_.middle_rank() != rank_) throw InputError("splitting does not start at the character lattice rank");
    const SplitReport sr = verify_splitting(split_);
    if (!sr.ok) throw ValidationError("splitting is not exact", {{"violations", sr.violations}});

    std::set<std::string> names;
    for (const auto& c : colors_) {
      if (c.rho.size() != rank_) throw InputError("color " + c.name + " has a valuation of the wrong rank");
      if (!names.insert(c.name).second) throw InputError("duplicate color " + c.name);
      for (const auto& r : c.stabilizer_roots)
        if (!weyl_.generator_index(r)) throw InputError("color " + c.name + " names unknown simple root " + r);
    }
    for (const auto& row : action) {
      if (!names.count(row.color)) throw InputError("color action names unknown color " + row.color);
      const std::size_t w = weyl_.element(row.weyl);
      const auto [it, fresh] = action_.emplace(std::make_pair(w, row.color), row.divisor);
      if (!fresh && it->second != row.divisor)
        throw InputError("color action gives two images for " + weyl_.display(w) + "." + row.color);
    }
    if (!action_.empty()) {
      for (std::size_t w = 0; w < weyl_.size(); ++w)
        for (const auto& c : colors_)
          if (!action_.count({w, c.name}))
            throw InputError("color action table misses " + weyl_.display(w) + "." + c.name);
    }

    const Cone image = valuation_cone_.image(split_.projection);
    if (!image.is_pointed())
      throw ValidationError("image of the valuation cone is not pointed", {{"image", image.key()}});
    const Cone back = image.preimage(split_.projection);
    if (!(back == valuation_cone_))
      throw ValidationError("valuation cone is not the full preimage of its image",
                            {{"valuation_cone", valuation_cone_.key()}, {"preimage", back.key()}});
    quotient_valuation_cone_ = image;
  }

  std::size_t rank() const noexcept { return rank_; }
  const Cone& valuation_cone() const noexcept { return valuation_cone_; }
  const std::vector<IntVector>& valuation_inequalities() const noexcept { return inequalities_; }
  /// Image of the valuation cone in the quotient; pointed.
  const Cone& quotient_valuation_cone() const noexcept { return quotient_valuation_cone_; }
  const std::vector<Color>& colors() const noexcept { return colors_; }
  const WeylGroup& weyl() const noexcept { return weyl_; }
  const SplitSequence& split() const noexcept { return split_; }
  bool has_action_table() const noexcept { return !action_.empty(); }

  std::vector<ColorAction> action_rows() const {
    std::vector<ColorAction> out;
    for (const auto& [key, d] : action_) out.push_back({weyl_.word(key.first), key.second, d});
    return out;
  }

  const Color& color(const std::string& name) const {
    for (const auto& c : colors_)
      if (c.name == name) return c;
    throw InputError("unknown color " + name);
  }

  std::set<std::string> color_names() const {
    std::set<std::string> out;
    for (const auto& c : colors_) out.insert(c.name);
    return out;
  }

  /// Label of the translate w . color; the free label unless the table names it.
  DivisorLabel act(std::size_t w, const std::string& color_name) const {
    color(color_name);
    const auto it = action_.find({w, color_name});
    if (it != action_.end()) return DivisorLabel::named(it->second);
    return DivisorLabel::translated(weyl_.word(w), color_name);
  }

  /// Cosection image of the color valuation.
  IntVector shift_vector(const std::string& color_name) const { return split_.cosection.apply(color(color_name).rho); }

  /// Simple roots (generator indices) fixing every color outside the set.
  std::set<std::size_t> parabolic_index(const std::set<std::string>& colored) const {
    std::optional<std::set<std::size_t>> acc;
    for (const auto& c : colors_) {
      if (colored.count(c.name)) continue;
      std::set<std::size_t> j;
      for (const auto& r : c.stabilizer_roots) j.insert(*weyl_.generator_index(r));
      if (!acc) {
        acc = std::move(j);
      } else {
        std::set<std::size_t> both;
        std::set_intersection(acc->begin(), acc->end(), j.begin(), j.end(), std::inserter(both, both.end()));
        acc = std::move(both);
      }
    }
    if (acc) return *acc;
    std::set<std::size_t> all;
    for (std::size_t k = 0; k < weyl_.rank(); ++k) all.insert(k);
    return all;
  }

  /// Elements permuting the translates of the colors outside the set among
  /// themselves. Needs the action table.
  std::vector<std::size_t> stabilizer_subgroup(const std::set<std::string>& colored) const {
    if (action_.empty()) throw InputError("stabilizer subgroup needs a color action table");
    auto moved = [&](std::size_t w) {
      std::set<std::string> s;
      for (const auto& c : colors_)
        if (!colored.count(c.name)) s.insert(act(w, c.name).key());
      return s;
    };
    const auto base = moved(WeylGroup::identity());
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < weyl_.size(); ++w)
      if (moved(w) == base) out.push_back(w);
    return out;
  }

 private:
  std::size_t rank_ = 0;
  std::vector<IntVector> inequalities_;
  Cone valuation_cone_;
  Cone quotient_valuation_cone_;
  std::vector<Color> colors_;
  WeylGroup weyl_;
  SplitSequence split_;
  std::map<std::pair<std::size_t, std::string>, std::string> action_;
};

struct ColoredCone {
  Cone cone;
  std::set<std::string> colors;

  bool operator==(const ColoredCone& o) const { return cone == o.cone && colors == o.colors; }
  bool operator<(const ColoredCone& o) const {
    if (!(cone == o.cone)) return cone < o.cone;
    return colors < o.colors;
  }
};

/// Stable identifier of a cone: FNV-1a hash of its canonical rays.
inline std::string cone_id(const Cone& c) {
  std::uint64_t h = 1469598103934665603ull;
  for (char ch : c.key()) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string s = "c";
  for (int k = 0; k < 8; ++k) s += hex[(h >> (60 - 4 * k)) & 0xf];
  return s;
}

struct Report {
  bool ok = true;
  nlohmann::json witness;
  std::vector<std::string> messages;

  void fail(std::string message, nlohmann::json w = {}) {
    if (ok) witness = std::move(w);
    ok = false;
    messages.push_back(std::move(message));
  }
};

inline Report validate_colored_cone(const ColoredCone& cc, const SphericalDatum& datum) {
  Report r;
  const Cone& c = cc.cone;
  if (c.ambient_dim() != datum.rank()) {
    r.fail("cone has the wrong rank");
    return r;
  }
  if (!c.is_pointed()) r.fail("cone is not pointed", {{"cone", c.key()}});
  std::vector<IntVector> color_rays;
  for (const auto& name : cc.colors) {
    if (!datum.color_names().count(name)) {
      r.fail("unknown color " + name, {{"color", name}});
      continue;
    }
    const IntVector& rho = datum.color(name).rho;
    if (is_zero(rho)) {
      r.fail("color " + name + " has zero valuation", {{"color", name}});
      continue;
    }
    if (!c.contains(rho)) r.fail("color " + name + " is not in the cone", {{"color", name}, {"rho", vector_string(rho)}});
    color_rays.push_back(primitive(rho));
  }
  if (!r.ok) return r;
  for (const auto& ray : c.rays()) {
    const bool valuation = datum.valuation_cone().contains(ray);
    const bool colored = std::find(color_rays.begin(), color_rays.end(), ray) != color_rays.end();
    if (!valuation && !colored)
      r.fail("ray is neither in the valuation cone nor a color", {{"ray", vector_string(ray)}});
  }
  const Cone meet = c.intersect(datum.valuation_cone());
  if (!c.in_relative_interior(meet.relative_interior_point()))
    r.fail("relative interior misses the valuation cone", {{"cone", c.key()}, {"meet", meet.key()}});
  return r;
}

/// Colored faces: faces whose relative interior meets the valuation cone,
/// with the colors they contain.
inline std::vector<ColoredCone> colored_faces(const ColoredCone& cc, const SphericalDatum& datum) {
  std::vector<ColoredCone> out;
  for (const auto& f : cc.cone.faces()) {
    const Cone meet = f.intersect(datum.valuation_cone());
    if (!f.in_relative_interior(meet.relative_interior_point())) continue;
    ColoredCone face{f, {}};
    for (const auto& name : cc.colors)
      if (f.contains(datum.color(name).rho)) face.colors.insert(name);
    out.push_back(std::move(face));
  }
  return out;
}

class ColoredFan {
 public:
  ColoredFan() = default;
  ColoredFan(std::size_t rank, std::vector<ColoredCone> cones) : rank_(rank) {
    std::set<ColoredCone> uniq(cones.begin(), cones.end());
    for (const auto& c : uniq) {
      if (c.cone.ambient_dim() != rank_) throw InputError("colored cone has the wrong rank");
      const bool contained = std::any_of(uniq.begin(), uniq.end(), [&](const ColoredCone& o) {
        return !(o == c) && o.cone.contains(c.cone) && c.cone.is_face_of(o.cone) &&
               std::includes(o.colors.begin(), o.colors.end(), c.colors.begin(), c.colors.end());
      });
      if (!contained) maximal_.push_back(c);
    }
  }

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<ColoredCone>& maximal() const noexcept { return maximal_; }

  bool is_toroidal() const {
    return std::all_of(maximal_.begin(), maximal_.end(), [](const ColoredCone& c) { return c.colors.empty(); });
  }

  /// All colored faces of all cones.
  std::vector<ColoredCone> closure(const SphericalDatum& datum) const {
    std::set<ColoredCone> all;
    for (const auto& c : maximal_)
      for (auto& f : colored_faces(c, datum)) all.insert(std::move(f));
    return {all.begin(), all.end()};
  }

 private:
  std::size_t rank_ = 0;
  std::vector<ColoredCone> maximal_;
};

inline Report validate_colored_fan(const ColoredFan& cf, const SphericalDatum& datum) {
  Report r;
  if (cf.rank() != datum.rank()) {
    r.fail("fan rank differs from the datum rank");
    return r;
  }
  for (const auto& c : cf.maximal()) {
    Report cr = validate_colored_cone(c, datum);
    if (!cr.ok) {
      cr.witness["colored_cone"] = {{"cone", c.cone.key()}, {"colors", c.colors}};
      r.fail(cr.messages.front(), cr.witness);
      return r;
    }
  }
  const auto cones = cf.closure(datum);
  for (std::size_t a = 0; a < cones.size(); ++a)
    for (std::size_t b = a + 1; b < cones.size(); ++b) {
      const Cone meet = cones[a].cone.intersect(cones[b].cone).intersect(datum.valuation_cone());
      const IntVector x = meet.relative_interior_point();
      if (cones[a].cone.in_relative_interior(x) && cones[b].cone.in_relative_interior(x)) {
        r.fail("relative interiors overlap inside the valuation cone",
               {{"first", cones[a].cone.key()}, {"second", cones[b].cone.key()}, {"point", vector_string(x)}});
        return r;
      }
    }
  return r;
}

/// Whether the support contains the valuation cone.
inline bool is_complete(const ColoredFan& cf, const SphericalDatum& datum) {
  const Cone& v = datum.valuation_cone();
  if (v.dim() == 0) return true;
  std::set<IntVector> hyper;
  for (const auto& c : cf.maximal()) {
    for (const auto& f : c.cone.facets()) hyper.insert(detail::normalized_hyperplane(f));
    for (const auto& e : c.cone.equations()) hyper.insert(detail::normalized_hyperplane(e));
  }
  for (const auto& ch : arrangement_chambers(v, {hyper.begin(), hyper.end()})) {
    if (ch.cone.dim() != v.dim()) continue;
    const IntVector x = ch.cone.relative_interior_point();
    const bool covered =
        std::any_of(cf.maximal().begin(), cf.maximal().end(), [&](const ColoredCone& c) { return c.cone.contains(x); });
    if (!covered) return false;
  }
  return true;
}

/// Replaces each colored cone by its intersection with the valuation cone.
inline ColoredFan toroidalize(const ColoredFan& cf, const SphericalDatum& datum) {
  std::vector<ColoredCone> cones;
  for (const auto& c : cf.maximal()) cones.push_back({c.cone.intersect(datum.valuation_cone()), {}});
  const Fan f(cf.rank(), [&] {
    std::vector<Cone> cs;
    for (const auto& c : cones) cs.push_back(c.cone);
    return cs;
  }());
  std::vector<ColoredCone> out;
  for (const auto& c : f.maximal_cones()) out.push_back({c, {}});
  return ColoredFan(cf.rank(), std::move(out));
}

inline Fan uncolored_fan(const ColoredFan& cf, const SphericalDatum& datum) {
  std::vector<Cone> cones;
  for (const auto& c : cf.maximal()) cones.push_back(c.cone.intersect(datum.valuation_cone()));
  return Fan(cf.rank(), std::move(cones));
}

/// Every colored cone maps into some colored cone of the target with its
/// colors included.
inline bool dominates(const ColoredFan& cf, const ColoredFan& target, const std::optional<LatticeMap>& p = std::nullopt) {
  for (const auto& c : cf.maximal()) {
    const Cone image = p ? c.cone.image(*p) : c.cone;
    const bool ok = std::any_of(target.maximal().begin(), target.maximal().end(), [&](const ColoredCone& t) {
      return t.cone.contains(image) && std::includes(t.colors.begin(), t.colors.end(), c.colors.begin(), c.colors.end());
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace divfan
