#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "divfan/divisorial.hpp"
#include "divfan/spherical.hpp"

namespace divfan {

struct BaseFan {
  Fan fan;
  std::vector<std::pair<IntVector, DivisorLabel>> labels;  ///< one invariant divisor per ray
};

struct ConstructionResult {
  BaseFan base;
  std::map<std::string, IntVector> shift_vectors;
  DivisorialFan fan;
  Fan refined_fan;
};

inline IntVector shift_vector(const std::string& color, const SphericalDatum& datum) {
  return datum.shift_vector(color);
}

/// Image of the uncolored fan in the quotient, inside the image of the
/// valuation cone, with one invariant divisor per ray.
inline BaseFan base_fan(const ColoredFan& cf, const SphericalDatum& datum) {
  const Fan unc = uncolored_fan(cf, datum);
  const LatticeMap& p = datum.split().projection;
  const std::size_t d = p.rows();
  BaseFan out;
  std::vector<Cone> images;
  for (const auto& c : unc.maximal_cones()) images.push_back(c.image(p));
  const bool full = std::any_of(images.begin(), images.end(), [&](const Cone& c) { return c.dim() == d; });
  if (d == 0 || !full) {
    // homogeneous part only: the images are faces of the valuation image
    out.fan = Fan(d, images.empty() ? std::vector<Cone>{Cone::zero(d)} : images);
    if (!out.fan.is_valid()) throw ValidationError("images of the uncolored fan do not form a fan");
  } else {
    out.fan = image_fan(unc, p, datum.quotient_valuation_cone()).fan;
  }
  for (const auto& r : out.fan.rays()) out.labels.emplace_back(r, DivisorLabel::invariant(r));
  return out;
}

/// Common refinement of the uncolored fan with the preimage of the base fan.
inline Fan refined_fan(const ColoredFan& cf, const SphericalDatum& datum, const Fan& base) {
  return common_refinement(uncolored_fan(cf, datum), preimage_fan(base, datum.split().projection));
}

namespace detail {

inline std::map<std::string, IntVector> all_shifts(const SphericalDatum& datum) {
  std::map<std::string, IntVector> out;
  for (const auto& c : datum.colors()) out.emplace(c.name, datum.shift_vector(c.name));
  return out;
}

/// p-divisor of the chart (C, w), leaving out the translated empty
/// coefficients of the colors in `colored`.
inline PDivisor chart_divisor(const ColoredCone& cc, std::size_t w, const std::vector<std::size_t>& coset,
                              const SphericalDatum& datum, const BaseFan& base) {
  const SplitSequence& split = datum.split();
  const Cone meet = cc.cone.intersect(datum.valuation_cone());
  const Cone tail = fiber_slice(cc.cone, split, IntVector(split.quotient_rank(), 0)).tail_cone();
  std::map<DivisorLabel, Polyhedron> coeff;
  for (const auto& [ray, label] : base.labels) coeff.insert_or_assign(label, fiber_slice(meet, split, ray));
  const Polyhedron tail_poly = Polyhedron::from_cone(tail);
  for (const auto& c : datum.colors()) {
    const IntVector s = datum.shift_vector(c.name);
    coeff.insert_or_assign(datum.act(WeylGroup::identity(), c.name), tail_poly.translate(to_rational(s)));
  }
  for (const auto& c : datum.colors())
    if (!cc.colors.count(c.name)) coeff.insert_or_assign(datum.act(w, c.name), Polyhedron::empty(split.kernel_rank()));
  ChartLabel label{cone_id(cc.cone), cc.cone.rays(), datum.weyl().word(w), {}};
  for (std::size_t u : coset) label.coset.push_back(datum.weyl().word(u));
  return PDivisor(tail, std::move(coeff), std::move(label));
}

inline ConstructionResult assemble(const ColoredFan& cf, const SphericalDatum& datum,
                                   const std::vector<PDivisor>& maximal, BaseFan base) {
  ConstructionResult r;
  r.shift_vectors = all_shifts(datum);
  r.refined_fan = refined_fan(cf, datum, base.fan);
  r.base = std::move(base);
  r.fan = build_divisorial_fan(datum.split().kernel_rank(), maximal);
  return r;
}

inline void require_valid(const ColoredFan& cf, const SphericalDatum& datum) {
  const Report rep = validate_colored_fan(cf, datum);
  if (!rep.ok) throw ValidationError(rep.messages.front(), rep.witness);
}

}  // namespace detail

/// Toroidal case: one chart per maximal cone and Weyl element.
inline ConstructionResult build_toroidal(const ColoredFan& cf, const SphericalDatum& datum) {
  if (!cf.is_toroidal()) throw InputError("colored fan has colors; use build_general");
  detail::require_valid(cf, datum);
  BaseFan base = base_fan(cf, datum);
  std::vector<PDivisor> maximal;
  for (const auto& cc : cf.maximal())
    for (std::size_t w = 0; w < datum.weyl().size(); ++w)
      maximal.push_back(detail::chart_divisor(cc, w, {w}, datum, base));
  return detail::assemble(cf, datum, maximal, std::move(base));
}

/// General case: charts (C, w) for w minimal in its coset of the parabolic
/// subgroup fixing the colors outside C.
inline ConstructionResult build_general(const ColoredFan& cf, const SphericalDatum& datum) {
  detail::require_valid(cf, datum);
  BaseFan base = base_fan(cf, datum);
  const WeylGroup& weyl = datum.weyl();
  std::vector<PDivisor> maximal;
  for (const auto& cc : cf.maximal()) {
    const auto index = datum.parabolic_index(cc.colors);
    const auto sub = weyl.parabolic_subgroup(index);
    if (datum.has_action_table()) {
      const auto wc = datum.stabilizer_subgroup(cc.colors);
      if (wc != sub) {
        std::vector<std::string> a, b;
        for (auto x : wc) a.push_back(weyl.display(x));
        for (auto x : sub) b.push_back(weyl.display(x));
        throw ValidationError("color stabilizer differs from the parabolic subgroup",
                              {{"cone", cc.cone.key()}, {"stabilizer", a}, {"parabolic", b}});
      }
    }
    for (std::size_t w : weyl.min_coset_reps(index))
      maximal.push_back(detail::chart_divisor(cc, w, weyl.coset(w, index), datum, base));
  }
  return detail::assemble(cf, datum, maximal, std::move(base));
}

/// Unlabeled description of the toroidalization: slices over invariant
/// divisors and shifted tail fans over colors.
struct TildeDescription {
  Fan tail_fan;
  std::map<DivisorLabel, std::vector<Polyhedron>> slices;
};

inline TildeDescription build_tilde(const ColoredFan& cf, const SphericalDatum& datum) {
  detail::require_valid(cf, datum);
  const ColoredFan tor = toroidalize(cf, datum);
  const BaseFan base = base_fan(tor, datum);
  const SplitSequence& split = datum.split();
  TildeDescription out;
  std::vector<Cone> tails;
  for (const auto& cc : tor.maximal())
    tails.push_back(fiber_slice(cc.cone, split, IntVector(split.quotient_rank(), 0)).tail_cone());
  out.tail_fan = Fan(split.kernel_rank(), tails);
  auto collect = [](const std::vector<Polyhedron>& cells) {
    std::set<Polyhedron> all;
    for (const auto& p : cells)
      for (auto& f : p.faces()) all.insert(std::move(f));
    return std::vector<Polyhedron>(all.begin(), all.end());
  };
  for (const auto& [ray, label] : base.labels) {
    std::vector<Polyhedron> cells;
    for (const auto& cc : tor.maximal()) {
      Polyhedron p = fiber_slice(cc.cone, split, ray);
      if (!p.is_empty()) cells.push_back(std::move(p));
    }
    out.slices.emplace(label, collect(cells));
  }
  for (const auto& c : datum.colors()) {
    std::vector<Polyhedron> cells;
    const RatVector s = to_rational(datum.shift_vector(c.name));
    for (const auto& t : out.tail_fan.maximal_cones()) cells.push_back(Polyhedron::from_cone(t).translate(s));
    out.slices.emplace(datum.act(WeylGroup::identity(), c.name), collect(cells));
  }
  return out;
}

}  // namespace divfan
