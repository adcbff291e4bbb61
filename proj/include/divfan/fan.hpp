#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "divfan/polyhedron.hpp"

namespace divfan {

/// Polyhedral fan given by its maximal cones; faces are implied.
class Fan {
 public:
  Fan() = default;

  /// Keeps the cones that are maximal under inclusion, in canonical order.
  Fan(std::size_t dim, std::vector<Cone> cones) : dim_(dim) {
    std::set<Cone> uniq;
    for (auto& c : cones) {
      if (c.ambient_dim() != dim) throw InputError("fan cone has wrong ambient rank");
      uniq.insert(std::move(c));
    }
    for (const auto& c : uniq) {
      const bool dominated = std::any_of(uniq.begin(), uniq.end(),
                                         [&](const Cone& o) { return !(o == c) && o.contains(c); });
      if (!dominated) maximal_.push_back(c);
    }
  }

  std::size_t ambient_dim() const noexcept { return dim_; }
  const std::vector<Cone>& maximal_cones() const noexcept { return maximal_; }

  /// Every cone of the fan, faces included, in canonical order.
  std::vector<Cone> cones() const {
    std::set<Cone> all;
    for (const auto& c : maximal_)
      for (auto& f : c.faces()) all.insert(std::move(f));
    return {all.begin(), all.end()};
  }

  /// Primitive generators of the one-dimensional cones.
  std::vector<IntVector> rays() const {
    std::set<IntVector> out;
    for (const auto& c : cones())
      if (c.dim() == 1 && c.is_pointed()) out.insert(c.rays().front());
    return {out.begin(), out.end()};
  }

  template <class V>
  bool support_contains(const V& x) const {
    return std::any_of(maximal_.begin(), maximal_.end(), [&](const Cone& c) { return c.contains(x); });
  }

  /// Pairwise intersections of maximal cones must be common faces.
  std::optional<std::pair<std::size_t, std::size_t>> first_violation() const {
    for (std::size_t a = 0; a < maximal_.size(); ++a)
      for (std::size_t b = a + 1; b < maximal_.size(); ++b) {
        const Cone m = maximal_[a].intersect(maximal_[b]);
        if (!m.is_face_of(maximal_[a]) || !m.is_face_of(maximal_[b])) return std::pair{a, b};
      }
    return std::nullopt;
  }

  bool is_valid() const { return !first_violation(); }

  bool operator==(const Fan& o) const { return dim_ == o.dim_ && maximal_ == o.maximal_; }

 private:
  std::size_t dim_ = 0;
  std::vector<Cone> maximal_;
};

/// Cone of a hyperplane arrangement restricted to a region.
struct Chamber {
  Cone cone;
  std::vector<int> signs;  ///< side of each hyperplane; 0 if the chamber lies in it
};

/// Chambers cut out of `region` by the hyperplanes with the given normals.
inline std::vector<Chamber> arrangement_chambers(const Cone& region, const std::vector<IntVector>& normals) {
  std::vector<Chamber> cells{{region, {}}};
  for (const auto& h : normals) {
    std::vector<Chamber> next;
    for (auto& ch : cells) {
      bool pos = false, neg = false;
      for (const auto& l : ch.cone.lineality())
        if (dot(h, l) != 0) pos = neg = true;
      for (const auto& r : ch.cone.rays()) {
        const int s = sign(dot(h, r));
        pos |= s > 0;
        neg |= s < 0;
      }
      if (pos && neg) {
        Chamber up{ch.cone.intersect(Cone::from_inequalities(region.ambient_dim(), {h})), ch.signs};
        Chamber down{ch.cone.intersect(Cone::from_inequalities(region.ambient_dim(), {negated(h)})), ch.signs};
        up.signs.push_back(1);
        down.signs.push_back(-1);
        next.push_back(std::move(up));
        next.push_back(std::move(down));
      } else {
        ch.signs.push_back(pos ? 1 : (neg ? -1 : 0));
        next.push_back(std::move(ch));
      }
    }
    cells = std::move(next);
  }
  std::sort(cells.begin(), cells.end(), [](const Chamber& a, const Chamber& b) { return a.signs > b.signs; });
  return cells;
}

/// Coarsest fan image of a fan under a lattice map, with the cells contained
/// in the image of each maximal input cone.
struct ImageFan {
  Fan fan;
  /// incidence[k]: indices of input maximal cones whose image contains output cone k
  std::vector<std::vector<std::size_t>> incidence;
};

namespace detail {

inline IntVector normalized_hyperplane(IntVector h) {
  h = primitive(std::move(h));
  for (const auto& x : h) {
    if (x == 0) continue;
    if (x < 0) h = negated(std::move(h));
    break;
  }
  return h;
}

struct ImageFanBuilder {
  std::size_t d;
  Cone region;
  std::vector<Cone> images;
  std::vector<IntVector> normals;
  std::vector<Chamber> chambers;
  std::vector<bool> in_domain;
  std::vector<std::set<std::size_t>> signature;

  struct Cell {
    std::set<std::size_t> members;
    Cone cone;
  };

  /// Cone over a set of chambers if their union is convex and pointed.
  std::optional<Cone> convex_union(const std::set<std::size_t>& members) const {
    const std::size_t m = normals.size();
    std::vector<int> common(m, 2);
    for (std::size_t c : members)
      for (std::size_t j = 0; j < m; ++j) {
        const int s = chambers[c].signs[j];
        if (common[j] == 2) common[j] = s;
        else if (common[j] != s) common[j] = 0;
      }
    for (std::size_t c = 0; c < chambers.size(); ++c) {
      if (members.count(c)) continue;
      bool inside = true;
      for (std::size_t j = 0; j < m && inside; ++j)
        if (common[j] != 0 && chambers[c].signs[j] != common[j]) inside = false;
      if (inside) return std::nullopt;
    }
    std::vector<IntVector> f = region.facets();
    for (std::size_t j = 0; j < m; ++j)
      if (common[j] == 1) f.push_back(normals[j]);
      else if (common[j] == -1) f.push_back(negated(normals[j]));
    Cone c = Cone::from_inequalities(d, f, region.equations());
    if (!c.is_pointed()) return std::nullopt;
    return c;
  }

  bool compatible_with_images(const Cone& c) const {
    for (const auto& k : images) {
      if (k.contains(c)) continue;
      if (!c.intersect(k).is_face_of(c)) return false;
    }
    return true;
  }

  static bool meet_in_common_face(const Cone& a, const Cone& b) {
    const Cone m = a.intersect(b);
    return m.is_face_of(a) && m.is_face_of(b);
  }

  bool is_fan(const std::vector<Cell>& cells) const {
    for (std::size_t a = 0; a < cells.size(); ++a)
      for (std::size_t b = a + 1; b < cells.size(); ++b)
        if (!meet_in_common_face(cells[a].cone, cells[b].cone)) return false;
    return true;
  }

  /// Connected groups of chambers with equal signature, not separated by a
  /// wall lying in a lower-dimensional image.
  std::vector<std::set<std::size_t>> components() const {
    const std::size_t n = chambers.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<const Cone*> walls_blockers;
    for (const auto& k : images)
      if (k.dim() + 1 == region.dim()) walls_blockers.push_back(&k);
    for (std::size_t a = 0; a < n; ++a) {
      if (!in_domain[a]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!in_domain[b] || signature[a] != signature[b]) continue;
        int differ = 0;
        for (std::size_t j = 0; j < normals.size(); ++j)
          if (chambers[a].signs[j] != chambers[b].signs[j]) ++differ;
        if (differ != 1) continue;
        if (!walls_blockers.empty()) {
          const Cone wall = chambers[a].cone.intersect(chambers[b].cone);
          const IntVector w = wall.relative_interior_point();
          const bool blocked = std::any_of(walls_blockers.begin(), walls_blockers.end(),
                                           [&](const Cone* k) { return k->contains(w); });
          if (blocked) continue;
        }
        parent[find(a)] = find(b);
      }
    }
    std::map<std::size_t, std::set<std::size_t>> groups;
    for (std::size_t c = 0; c < n; ++c)
      if (in_domain[c]) groups[find(c)].insert(c);
    std::vector<std::set<std::size_t>> out;
    for (auto& [root, g] : groups) out.push_back(std::move(g));
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<std::vector<Cell>> merge_components() const {
    std::vector<Cell> cells;
    for (const auto& g : components()) {
      auto c = convex_union(g);
      if (!c || !compatible_with_images(*c)) return std::nullopt;
      cells.push_back({g, std::move(*c)});
    }
    if (!is_fan(cells)) return std::nullopt;
    return cells;
  }

  std::vector<Cell> merge_greedily() const {
    std::vector<Cell> cells;
    for (std::size_t c = 0; c < chambers.size(); ++c)
      if (in_domain[c]) cells.push_back({{c}, chambers[c].cone});
    bool merged = true;
    while (merged) {
      merged = false;
      for (std::size_t a = 0; a < cells.size() && !merged; ++a)
        for (std::size_t b = a + 1; b < cells.size() && !merged; ++b) {
          if (signature[*cells[a].members.begin()] != signature[*cells[b].members.begin()]) continue;
          std::set<std::size_t> u = cells[a].members;
          u.insert(cells[b].members.begin(), cells[b].members.end());
          auto c = convex_union(u);
          if (!c || !compatible_with_images(*c)) continue;
          bool ok = true;
          for (std::size_t k = 0; k < cells.size() && ok; ++k)
            if (k != a && k != b && !meet_in_common_face(*c, cells[k].cone)) ok = false;
          if (!ok) continue;
          cells[a] = {std::move(u), std::move(*c)};
          cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(b));
          merged = true;
        }
    }
    return cells;
  }
};

}  // namespace detail

/// Coarsest fan refining the images of all cones of `source` under `p`.
/// With a support the result subdivides it (the support must be pointed and
/// contain every image); without one it covers the union of the images.
inline ImageFan image_fan(const Fan& source, const LatticeMap& p, const std::optional<Cone>& support = std::nullopt) {
  if (p.cols() != source.ambient_dim()) throw InputError("rank mismatch between fan and lattice map");
  const std::size_t d = p.rows();
  std::vector<Cone> max_images;
  for (const auto& c : source.maximal_cones()) max_images.push_back(c.image(p));

  ImageFan out;
  if (d == 0) {
    out.fan = Fan(0, {Cone::zero(0)});
    std::vector<std::size_t> all(max_images.size());
    std::iota(all.begin(), all.end(), 0);
    out.incidence = {all};
    return out;
  }

  detail::ImageFanBuilder b{d, support ? *support : Cone::full(d), {}, {}, {}, {}, {}};
  if (support && !support->is_pointed()) throw InputError("image fan support must be pointed");
  std::set<Cone> imgs;
  for (const auto& c : source.cones()) imgs.insert(c.image(p));
  b.images.assign(imgs.begin(), imgs.end());
  if (support)
    for (const auto& k : b.images)
      if (!support->contains(k)) throw ValidationError("image of a cone leaves the support");

  std::set<IntVector> hyper;
  for (const auto& k : b.images) {
    for (const auto& f : k.facets()) hyper.insert(detail::normalized_hyperplane(f));
    for (const auto& e : k.equations()) hyper.insert(detail::normalized_hyperplane(e));
  }
  if (!support) {
    // chambers must be pointed: complete the normals to a spanning set
    std::vector<IntVector> hs(hyper.begin(), hyper.end());
    for (std::size_t k = 0; k < d; ++k) {
      const std::size_t before = rank_of(d, hs);
      if (before == d) break;
      hs.push_back(unit_vector(d, k));
      if (rank_of(d, hs) > before) hyper.insert(unit_vector(d, k));
      else hs.pop_back();
    }
  }
  b.normals.assign(hyper.begin(), hyper.end());
  b.chambers = arrangement_chambers(b.region, b.normals);

  std::vector<std::size_t> top;
  for (std::size_t k = 0; k < b.images.size(); ++k)
    if (b.images[k].dim() == b.region.dim()) top.push_back(k);
  if (top.empty()) throw InputError("image fan needs at least one image of full dimension");

  for (const auto& ch : b.chambers) {
    const IntVector x = ch.cone.relative_interior_point();
    std::set<std::size_t> sig;
    for (std::size_t k : top)
      if (b.images[k].contains(x)) sig.insert(k);
    b.in_domain.push_back(ch.cone.dim() == b.region.dim() && (support || !sig.empty()));
    b.signature.push_back(std::move(sig));
  }

  auto cells = b.merge_components();
  if (!cells) cells = b.merge_greedily();

  std::vector<Cone> cones;
  for (const auto& c : *cells) cones.push_back(c.cone);
  out.fan = Fan(d, cones);
  for (const auto& c : out.fan.maximal_cones()) {
    std::vector<std::size_t> inc;
    for (std::size_t k = 0; k < max_images.size(); ++k)
      if (max_images[k].contains(c)) inc.push_back(k);
    out.incidence.push_back(std::move(inc));
  }
  return out;
}

/// Maximal cones of {a ∩ b : a in first, b in second}.
inline Fan common_refinement(const Fan& first, const Fan& second) {
  if (first.ambient_dim() != second.ambient_dim()) throw InputError("fans live in different spaces");
  std::vector<Cone> cones;
  for (const auto& a : first.maximal_cones())
    for (const auto& b : second.maximal_cones()) cones.push_back(a.intersect(b));
  return Fan(first.ambient_dim(), std::move(cones));
}

/// Fan of preimages p^{-1}(c).
inline Fan preimage_fan(const Fan& f, const LatticeMap& p) {
  std::vector<Cone> cones;
  for (const auto& c : f.maximal_cones()) cones.push_back(c.preimage(p));
  return Fan(p.cols(), std::move(cones));
}

/// The polyhedron cosection(cone ∩ projection^{-1}(a)) in the kernel lattice.
inline Polyhedron fiber_slice(const Cone& cone, const SplitSequence& split, const IntVector& a) {
  if (cone.ambient_dim() != split.middle_rank()) throw InputError("cone does not live in the middle lattice");
  if (a.size() != split.quotient_rank()) throw InputError("fiber point has wrong rank");
  const IntVector base = split.section().apply(a);
  const std::size_t n = split.kernel_rank();
  auto restrict = [&](const IntVector& f) {
    const IntVector g = split.embedding.pull_back(f);
    return HalfSpace{to_rational(g), Rational(-dot(f, base))};
  };
  std::vector<HalfSpace> ineqs, eqs;
  for (const auto& f : cone.facets()) ineqs.push_back(restrict(f));
  for (const auto& e : cone.equations()) eqs.push_back(restrict(e));
  return Polyhedron::from_inequalities(n, ineqs, eqs);
}

}  // namespace divfan
