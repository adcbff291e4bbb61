#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "divfan/construction.hpp"

namespace divfan {

/// Name for a ray of the base fan. Rays outside the base fan add a
/// compactifying divisor whose coefficients are computed the same way.
struct BaseDivisor {
  IntVector ray;
  std::string name;
};

/// Toric variety with a subtorus given by a split sequence.
struct ToricModel {
  std::vector<Cone> cones;              ///< maximal cones in the big lattice
  std::vector<std::string> cone_names;  ///< optional, parallel to cones
  SplitSequence split;
  std::vector<BaseDivisor> base_divisors;
};

struct DowngradeResult {
  BaseFan base;
  DivisorialFan fan;
  Fan refined_fan;
};

inline DowngradeResult downgrade(const ToricModel& model) {
  const SplitSequence& split = model.split;
  const SplitReport sr = verify_splitting(split);
  if (!sr.ok) throw ValidationError("splitting is not exact", {{"violations", sr.violations}});
  if (!model.cone_names.empty() && model.cone_names.size() != model.cones.size())
    throw InputError("one name per cone required");
  const Fan sigma(split.middle_rank(), model.cones);
  if (!sigma.is_valid()) {
    const auto v = *sigma.first_violation();
    throw ValidationError("toric model is not a fan", {{"first", sigma.maximal_cones()[v.first].key()},
                                                       {"second", sigma.maximal_cones()[v.second].key()}});
  }
  DowngradeResult out;
  const std::size_t d = split.quotient_rank();
  out.base.fan = d == 0 ? Fan(0, {Cone::zero(0)}) : image_fan(sigma, split.projection).fan;
  std::map<IntVector, std::string> names;
  for (const auto& b : model.base_divisors) {
    if (b.ray.size() != d) throw InputError("base divisor ray has the wrong rank");
    names[primitive(b.ray)] = b.name;
  }
  auto label_of = [&](const IntVector& r) {
    const auto it = names.find(r);
    return it == names.end() ? DivisorLabel::orbit(r) : DivisorLabel::named(it->second);
  };
  std::set<IntVector> rays;
  for (const auto& r : out.base.fan.rays()) {
    out.base.labels.emplace_back(r, label_of(r));
    rays.insert(r);
  }
  for (const auto& [r, n] : names)
    if (!rays.count(r)) out.base.labels.emplace_back(r, DivisorLabel::named(n));

  std::vector<PDivisor> maximal;
  for (std::size_t k = 0; k < model.cones.size(); ++k) {
    const Cone& c = model.cones[k];
    if (std::find(sigma.maximal_cones().begin(), sigma.maximal_cones().end(), c) == sigma.maximal_cones().end())
      continue;
    const Cone tail = fiber_slice(c, split, IntVector(d, 0)).tail_cone();
    std::map<DivisorLabel, Polyhedron> coeff;
    for (const auto& [r, label] : out.base.labels) coeff.emplace(label, fiber_slice(c, split, r));
    const std::string id = model.cone_names.empty() ? cone_id(c) : model.cone_names[k];
    maximal.emplace_back(tail, std::move(coeff), ChartLabel{id, c.rays(), "", {}});
  }
  out.fan = build_divisorial_fan(split.kernel_rank(), std::move(maximal));
  out.refined_fan = d == 0 ? sigma : common_refinement(sigma, preimage_fan(out.base.fan, split.projection));
  return out;
}

/// Compares the spherical construction with the downgrade of a toric model.
/// `relabel` renames spherical labels; `kernel_map` is applied to the
/// spherical fan first.
inline FanDiff crosscheck(const SphericalDatum& datum, const ColoredFan& cf, const ToricModel& model,
                          const std::map<std::string, std::string>& relabel = {},
                          const std::optional<IntMatrix>& kernel_map = std::nullopt) {
  DivisorialFan spherical = build_general(cf, datum).fan;
  if (kernel_map) {
    const Integer det = determinant(*kernel_map);
    if (det != 1 && det != -1) throw InputError("kernel map is not unimodular");
    std::vector<PDivisor> moved;
    for (const auto& d : spherical.maximal()) moved.push_back(d.transformed(*kernel_map));
    spherical = DivisorialFan(spherical.rank(), std::move(moved));
  }
  return diff_canonical(spherical, downgrade(model).fan, relabel);
}

}  // namespace divfan
