#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "divfan/lattice.hpp"

namespace divfan {

namespace detail {

struct DDOutput {
  std::vector<IntVector> lineality;
  std::vector<IntVector> rays;
};

inline IntVector combine(const Integer& a, const IntVector& x, const Integer& b, const IntVector& y) {
  IntVector out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = a * x[k] + b * y[k];
  reduce_in_place(out);
  return out;
}

/// Generators of {x : <e, x> = 0, <a, x> >= 0} by incremental double description.
/// Rays are returned modulo the lineality space.
inline DDOutput double_description(std::size_t d, const std::vector<IntVector>& ineqs,
                                   const std::vector<IntVector>& eqs) {
  struct Ray {
    IntVector v;
    boost::dynamic_bitset<> zeros;
  };
  const std::size_t total = eqs.size() + ineqs.size();
  std::vector<IntVector> lin;
  for (std::size_t k = 0; k < d; ++k) lin.push_back(unit_vector(d, k));
  std::vector<Ray> rays;
  std::size_t done = 0;

  auto process = [&](const IntVector& a, bool equality) {
    if (a.size() != d) throw InputError("constraint has wrong ambient rank");
    const std::size_t idx = done++;
    std::size_t pick = lin.size();
    for (std::size_t k = 0; k < lin.size(); ++k)
      if (dot(a, lin[k]) != 0) {
        pick = k;
        break;
      }
    if (pick < lin.size()) {
      IntVector l0 = lin[pick];
      lin.erase(lin.begin() + static_cast<std::ptrdiff_t>(pick));
      Integer s0 = dot(a, l0);
      if (s0 < 0) {
        l0 = negated(l0);
        s0 = -s0;
      }
      for (auto& l : lin) {
        const Integer s = dot(a, l);
        if (s != 0) l = combine(s0, l, -s, l0);
      }
      for (auto& r : rays) {
        const Integer s = dot(a, r.v);
        if (s != 0) r.v = combine(s0, r.v, -s, l0);
        r.zeros.set(idx);
      }
      if (!equality) {
        Ray nr{l0, boost::dynamic_bitset<>(total)};
        for (std::size_t j = 0; j < idx; ++j) nr.zeros.set(j);
        rays.push_back(std::move(nr));
      }
      return;
    }

    std::vector<std::size_t> pos, neg;
    std::vector<Integer> val(rays.size());
    for (std::size_t k = 0; k < rays.size(); ++k) {
      val[k] = dot(a, rays[k].v);
      if (val[k] > 0)
        pos.push_back(k);
      else if (val[k] < 0)
        neg.push_back(k);
      else
        rays[k].zeros.set(idx);
    }
    std::vector<Ray> next;
    for (std::size_t p : pos)
      for (std::size_t n : neg) {
        const auto common = rays[p].zeros & rays[n].zeros;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k == p || k == n) continue;
          if (common.is_subset_of(rays[k].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray nr{combine(val[p], rays[n].v, -val[n], rays[p].v), common};
        nr.zeros.set(idx);
        next.push_back(std::move(nr));
      }
    for (std::size_t k = 0; k < rays.size(); ++k)
      if (val[k] == 0 || (val[k] > 0 && !equality)) next.push_back(std::move(rays[k]));
    rays = std::move(next);
  };

  for (const auto& e : eqs) process(e, true);
  for (const auto& a : ineqs) process(a, false);

  DDOutput out;
  out.lineality = std::move(lin);
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  return out;
}

/// Canonical representatives of directions modulo a subspace: reduced at the
/// subspace pivots, primitive, sorted and without repetition.
inline std::vector<IntVector> canonical_modulo(const EchelonBasis& sub, const std::vector<IntVector>& vs) {
  std::set<IntVector> out;
  for (const auto& v : vs) {
    const RatVector r = sub.reduce(to_rational(v));
    if (is_zero(r)) continue;
    out.insert(primitive(r));
  }
  return {out.begin(), out.end()};
}

}  // namespace detail

/// Rational polyhedral cone in Q^d, stored with both descriptions in
/// canonical form:
///   cone = span(lineality) + cone(rays)
///        = {x : <e, x> = 0 for e in equations, <f, x> >= 0 for f in facets}.
class Cone {
 public:
  Cone() = default;

  static Cone from_generators(std::size_t d, const std::vector<IntVector>& rays,
                              const std::vector<IntVector>& lineality = {}) {
    check_lengths(d, rays);
    check_lengths(d, lineality);
    const auto h = detail::double_description(d, rays, lineality);
    const auto v = detail::double_description(d, h.rays, h.lineality);
    return Cone(d, v.lineality, v.rays, h.lineality, h.rays);
  }

  static Cone from_inequalities(std::size_t d, const std::vector<IntVector>& facets,
                                const std::vector<IntVector>& equations = {}) {
    check_lengths(d, facets);
    check_lengths(d, equations);
    const auto v = detail::double_description(d, facets, equations);
    const auto h = detail::double_description(d, v.rays, v.lineality);
    return Cone(d, v.lineality, v.rays, h.lineality, h.rays);
  }

  static Cone zero(std::size_t d) { return from_generators(d, {}); }

  static Cone full(std::size_t d) {
    std::vector<IntVector> lin;
    for (std::size_t k = 0; k < d; ++k) lin.push_back(unit_vector(d, k));
    return from_generators(d, {}, lin);
  }

  std::size_t ambient_dim() const noexcept { return dim_; }
  const std::vector<IntVector>& rays() const noexcept { return rays_; }
  const std::vector<IntVector>& lineality() const noexcept { return lineality_; }
  const std::vector<IntVector>& facets() const noexcept { return facets_; }
  const std::vector<IntVector>& equations() const noexcept { return equations_; }

  std::size_t dim() const noexcept { return dim_ - equations_.size(); }
  bool is_pointed() const noexcept { return lineality_.empty(); }
  bool is_zero() const noexcept { return rays_.empty() && lineality_.empty(); }
  bool is_full_dimensional() const noexcept { return equations_.empty(); }

  /// All generators, with each lineality vector in both directions.
  std::vector<IntVector> generators() const {
    std::vector<IntVector> g = rays_;
    for (const auto& l : lineality_) {
      g.push_back(l);
      g.push_back(negated(l));
    }
    return g;
  }

  template <class V>
  bool contains(const V& x) const {
    if (x.size() != dim_) throw InputError("point has wrong ambient rank");
    for (const auto& e : equations_)
      if (dot(e, x) != 0) return false;
    for (const auto& f : facets_)
      if (dot(f, x) < 0) return false;
    return true;
  }

  template <class V>
  bool in_relative_interior(const V& x) const {
    if (!contains(x)) return false;
    for (const auto& f : facets_)
      if (dot(f, x) == 0) return false;
    return true;
  }

  bool contains(const Cone& other) const {
    if (other.dim_ != dim_) throw InputError("cones live in different ambient spaces");
    for (const auto& r : other.rays_)
      if (!contains(r)) return false;
    for (const auto& l : other.lineality_)
      for (const auto& e : equations_)
        if (dot(e, l) != 0) return false;
    for (const auto& l : other.lineality_)
      for (const auto& f : facets_)
        if (dot(f, l) != 0) return false;
    return true;
  }

  /// A lattice point in the relative interior.
  IntVector relative_interior_point() const {
    IntVector s(dim_, 0);
    for (const auto& r : rays_)
      for (std::size_t k = 0; k < dim_; ++k) s[k] += r[k];
    return s;
  }

  Cone intersect(const Cone& other) const {
    if (other.dim_ != dim_) throw InputError("cones live in different ambient spaces");
    std::vector<IntVector> f = facets_, e = equations_;
    f.insert(f.end(), other.facets_.begin(), other.facets_.end());
    e.insert(e.end(), other.equations_.begin(), other.equations_.end());
    return from_inequalities(dim_, f, e);
  }

  /// Image under a lattice map with matching domain.
  Cone image(const LatticeMap& m) const {
    if (m.cols() != dim_) throw InputError("rank mismatch in cone image");
    std::vector<IntVector> r, l;
    for (const auto& x : rays_) r.push_back(m.apply(x));
    for (const auto& x : lineality_) l.push_back(m.apply(x));
    return from_generators(m.rows(), r, l);
  }

  /// Preimage under a lattice map with matching codomain.
  Cone preimage(const LatticeMap& m) const {
    if (m.rows() != dim_) throw InputError("rank mismatch in cone preimage");
    std::vector<IntVector> f, e;
    for (const auto& x : facets_) f.push_back(m.pull_back(x));
    for (const auto& x : equations_) e.push_back(m.pull_back(x));
    return from_inequalities(m.cols(), f, e);
  }

  /// Face cut out by a functional that is non-negative on the cone.
  Cone face(const IntVector& functional) const {
    std::vector<IntVector> e = equations_;
    e.push_back(functional);
    return from_inequalities(dim_, facets_, e);
  }

  /// Smallest face of this cone containing `sub` (which must lie in it).
  Cone smallest_face_containing(const Cone& sub) const {
    const auto gens = sub.generators();
    std::vector<IntVector> e = equations_, f;
    for (const auto& a : facets_) {
      const bool tight = std::all_of(gens.begin(), gens.end(), [&](const IntVector& g) { return dot(a, g) == 0; });
      (tight ? e : f).push_back(a);
    }
    return from_inequalities(dim_, f, e);
  }

  bool is_face_of(const Cone& big) const {
    if (!big.contains(*this)) return false;
    return big.smallest_face_containing(*this) == *this;
  }

  /// All faces, including the cone itself and the minimal face.
  std::vector<Cone> faces() const {
    std::set<Cone> seen{*this};
    std::vector<Cone> todo{*this};
    while (!todo.empty()) {
      Cone c = std::move(todo.back());
      todo.pop_back();
      for (const auto& f : c.facets_) {
        Cone g = c.face(f);
        if (seen.insert(g).second) todo.push_back(std::move(g));
      }
    }
    return {seen.begin(), seen.end()};
  }

  /// Facet cones (faces of codimension one).
  std::vector<Cone> facet_cones() const {
    std::vector<Cone> out;
    for (const auto& f : facets_) out.push_back(face(f));
    return out;
  }

  /// Dual cone {u : <u, x> >= 0 on the cone}.
  Cone dual() const {
    return Cone(dim_, equations_, facets_, lineality_, rays_);
  }

  std::string key() const {
    std::string s = std::to_string(dim_) + "|L";
    for (const auto& l : lineality_) s += vector_string(l);
    s += "|R";
    for (const auto& r : rays_) s += vector_string(r);
    return s;
  }

  bool operator==(const Cone& o) const {
    return dim_ == o.dim_ && lineality_ == o.lineality_ && rays_ == o.rays_;
  }
  bool operator<(const Cone& o) const {
    if (dim_ != o.dim_) return dim_ < o.dim_;
    if (dim() != o.dim()) return dim() < o.dim();
    if (lineality_ != o.lineality_) return lineality_ < o.lineality_;
    return rays_ < o.rays_;
  }

 private:
  Cone(std::size_t d, const std::vector<IntVector>& lin, const std::vector<IntVector>& rays,
       const std::vector<IntVector>& eqs, const std::vector<IntVector>& facets)
      : dim_(d) {
    const EchelonBasis l = echelon(d, lin);
    const EchelonBasis e = echelon(d, eqs);
    lineality_ = l.integral_basis();
    rays_ = detail::canonical_modulo(l, rays);
    equations_ = e.integral_basis();
    facets_ = detail::canonical_modulo(e, facets);
  }

  static void check_lengths(std::size_t d, const std::vector<IntVector>& vs) {
    for (const auto& v : vs)
      if (v.size() != d) throw InputError("vector of rank " + std::to_string(v.size()) + " in a cone of ambient rank " + std::to_string(d));
  }

  std::size_t dim_ = 0;
  std::vector<IntVector> lineality_;
  std::vector<IntVector> rays_;
  std::vector<IntVector> equations_;
  std::vector<IntVector> facets_;
};

}  // namespace divfan
