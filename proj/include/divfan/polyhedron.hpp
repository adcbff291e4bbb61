#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divfan/cone.hpp"

namespace divfan {

/// Affine inequality <normal, x> >= rhs.
struct HalfSpace {
  RatVector normal;
  Rational rhs;
};

/// Rational polyhedron in Q^n, possibly empty.
///
/// Stored through its homogenization in Q^(n+1): the closure of the cone over
/// P x {1}. Vertices are the rays with positive last coordinate, the tail cone
/// is the part with last coordinate zero.
class Polyhedron {
 public:
  Polyhedron() = default;

  static Polyhedron empty(std::size_t n) {
    Polyhedron p;
    p.dim_ = n;
    p.empty_ = true;
    p.hom_ = Cone::zero(n + 1);
    return p;
  }

  static Polyhedron from_vertices(std::size_t n, const std::vector<RatVector>& vertices,
                                  const std::vector<IntVector>& tail_rays = {},
                                  const std::vector<IntVector>& lineality = {}) {
    if (vertices.empty()) return empty(n);
    std::vector<IntVector> gens, lin;
    for (const auto& v : vertices) {
      if (v.size() != n) throw InputError("vertex has wrong rank");
      RatVector h = v;
      h.push_back(1);
      gens.push_back(primitive(h));
    }
    for (const auto& r : tail_rays) gens.push_back(lift(n, r));
    for (const auto& l : lineality) lin.push_back(lift(n, l));
    return from_homogenization(n, Cone::from_generators(n + 1, gens, lin));
  }

  /// {x : <a, x> >= b for all half-spaces, <e, x> = f for all equations}.
  static Polyhedron from_inequalities(std::size_t n, const std::vector<HalfSpace>& ineqs,
                                      const std::vector<HalfSpace>& eqs = {}) {
    std::vector<IntVector> f, e;
    for (const auto& h : ineqs) f.push_back(homogenize(n, h));
    for (const auto& h : eqs) e.push_back(homogenize(n, h));
    f.push_back(unit_vector(n + 1, n));
    return from_homogenization(n, Cone::from_inequalities(n + 1, f, e));
  }

  static Polyhedron from_cone(const Cone& c) {
    const std::size_t n = c.ambient_dim();
    std::vector<IntVector> gens{unit_vector(n + 1, n)}, lin;
    for (const auto& r : c.rays()) gens.push_back(lift(n, r));
    for (const auto& l : c.lineality()) lin.push_back(lift(n, l));
    return from_homogenization(n, Cone::from_generators(n + 1, gens, lin));
  }

  static Polyhedron point(const RatVector& v) { return from_vertices(v.size(), {v}); }

  static Polyhedron from_homogenization(std::size_t n, const Cone& hom) {
    Polyhedron p;
    p.dim_ = n;
    p.hom_ = hom;
    p.empty_ = true;
    for (const auto& r : hom.rays())
      if (r[n] > 0) p.empty_ = false;
    if (p.empty_) p.hom_ = Cone::zero(n + 1);
    return p;
  }

  bool is_empty() const noexcept { return empty_; }
  std::size_t ambient_dim() const noexcept { return dim_; }
  const Cone& homogenization() const noexcept { return hom_; }

  /// Vertices (representatives modulo the lineality space).
  std::vector<RatVector> vertices() const {
    std::vector<RatVector> out;
    for (const auto& r : hom_.rays()) {
      if (r[dim_] == 0) continue;
      RatVector v(dim_);
      for (std::size_t k = 0; k < dim_; ++k) v[k] = Rational(r[k], r[dim_]);
      out.push_back(std::move(v));
    }
    return out;
  }

  std::vector<IntVector> tail_rays() const {
    std::vector<IntVector> out;
    for (const auto& r : hom_.rays())
      if (r[dim_] == 0) out.push_back(drop_last(r));
    return out;
  }

  std::vector<IntVector> lineality() const {
    std::vector<IntVector> out;
    for (const auto& l : hom_.lineality()) out.push_back(drop_last(l));
    return out;
  }

  /// Recession cone. The empty polyhedron has no tail.
  Cone tail_cone() const {
    if (empty_) throw InputError("the empty polyhedron has no tail cone");
    return Cone::from_generators(dim_, tail_rays(), lineality());
  }

  bool is_bounded() const { return !empty_ && tail_rays().empty() && hom_.lineality().empty(); }

  /// Dimension; -1 for the empty polyhedron.
  long dimension() const { return empty_ ? -1 : static_cast<long>(hom_.dim()) - 1; }

  template <class V>
  bool contains(const V& x) const {
    if (empty_) return false;
    RatVector h(x.begin(), x.end());
    h.push_back(1);
    return hom_.contains(h);
  }

  bool contains(const Polyhedron& o) const {
    if (o.empty_) return true;
    if (empty_) return false;
    return hom_.contains(o.hom_);
  }

  /// Minimum of <u, .> over the polyhedron; nullopt means minus infinity.
  std::optional<Rational> min_eval(const IntVector& u) const {
    if (empty_) throw InputError("evaluation on the empty polyhedron");
    if (u.size() != dim_) throw InputError("functional has wrong rank");
    for (const auto& l : hom_.lineality())
      if (dot(u, drop_last(l)) != 0) return std::nullopt;
    for (const auto& r : tail_rays())
      if (dot(u, r) < 0) return std::nullopt;
    std::optional<Rational> best;
    for (const auto& v : vertices()) {
      const Rational val = dot(u, v);
      if (!best || val < *best) best = val;
    }
    return best;
  }

  /// Non-empty face test; the empty set is a face of everything.
  bool is_face_of(const Polyhedron& big) const {
    if (empty_) return true;
    if (big.empty_) return false;
    return hom_.is_face_of(big.hom_);
  }

  Polyhedron intersect(const Polyhedron& o) const {
    if (empty_ || o.empty_) return empty(dim_);
    return from_homogenization(dim_, hom_.intersect(o.hom_));
  }

  /// Minkowski sum.
  Polyhedron operator+(const Polyhedron& o) const {
    if (o.dim_ != dim_) throw InputError("Minkowski sum of polyhedra of different rank");
    if (empty_ || o.empty_) return empty(dim_);
    std::vector<RatVector> vs;
    for (const auto& a : vertices())
      for (const auto& b : o.vertices()) {
        RatVector s(dim_);
        for (std::size_t k = 0; k < dim_; ++k) s[k] = a[k] + b[k];
        vs.push_back(std::move(s));
      }
    auto rays = tail_rays();
    auto more = o.tail_rays();
    rays.insert(rays.end(), more.begin(), more.end());
    auto lin = lineality();
    auto morel = o.lineality();
    lin.insert(lin.end(), morel.begin(), morel.end());
    return from_vertices(dim_, vs, rays, lin);
  }

  Polyhedron translate(const RatVector& v) const {
    if (empty_) return *this;
    auto vs = vertices();
    for (auto& x : vs)
      for (std::size_t k = 0; k < dim_; ++k) x[k] += v[k];
    return from_vertices(dim_, vs, tail_rays(), lineality());
  }

  /// Image under a linear map Z^n -> Z^m.
  Polyhedron transform(const IntMatrix& m) const {
    if (m.cols() != dim_) throw InputError("rank mismatch in polyhedron transform");
    if (empty_) return empty(m.rows());
    std::vector<RatVector> vs;
    std::vector<IntVector> rs, ls;
    for (const auto& v : vertices()) vs.push_back(m.apply(std::span<const Rational>(v)));
    for (const auto& r : tail_rays()) rs.push_back(m.apply(std::span<const Integer>(r)));
    for (const auto& l : lineality()) ls.push_back(m.apply(std::span<const Integer>(l)));
    return from_vertices(m.rows(), vs, rs, ls);
  }

  /// All non-empty faces.
  std::vector<Polyhedron> faces() const {
    std::vector<Polyhedron> out;
    if (empty_) return out;
    for (const auto& f : hom_.faces()) {
      Polyhedron p = from_homogenization(dim_, f);
      if (!p.empty_) out.push_back(std::move(p));
    }
    return out;
  }

  /// Human-readable form; interval notation in rank one.
  std::string to_string() const {
    if (empty_) return "EMPTY";
    if (dim_ == 1) {
      const auto vs = vertices();
      if (!hom_.lineality().empty()) return "(-inf,inf)";
      const auto rs = tail_rays();
      if (vs.size() == 2) {
        const auto& lo = std::min(vs[0][0], vs[1][0]);
        const auto& hi = std::max(vs[0][0], vs[1][0]);
        return "[" + lo.str() + "," + hi.str() + "]";
      }
      if (rs.empty()) return "{" + vs[0][0].str() + "}";
      if (rs[0][0] > 0) return "[" + vs[0][0].str() + ",inf)";
      return "(-inf," + vs[0][0].str() + "]";
    }
    std::string s = "conv{";
    bool first = true;
    for (const auto& v : vertices()) {
      s += (first ? "" : ",") + vector_string(v);
      first = false;
    }
    s += "}";
    const auto rs = tail_rays();
    const auto ls = lineality();
    if (!rs.empty() || !ls.empty()) {
      s += "+cone{";
      first = true;
      for (const auto& r : rs) {
        s += (first ? "" : ",") + vector_string(r);
        first = false;
      }
      for (const auto& l : ls) {
        s += (first ? "" : ",") + std::string("+-") + vector_string(l);
        first = false;
      }
      s += "}";
    }
    return s;
  }

  bool operator==(const Polyhedron& o) const {
    return dim_ == o.dim_ && empty_ == o.empty_ && (empty_ || hom_ == o.hom_);
  }
  bool operator<(const Polyhedron& o) const {
    if (dim_ != o.dim_) return dim_ < o.dim_;
    if (empty_ != o.empty_) return empty_;
    return hom_ < o.hom_;
  }

 private:
  static IntVector lift(std::size_t n, const IntVector& r) {
    if (r.size() != n) throw InputError("direction has wrong rank");
    IntVector h = r;
    h.push_back(0);
    return h;
  }

  static IntVector drop_last(const IntVector& h) { return IntVector(h.begin(), h.end() - 1); }

  static IntVector homogenize(std::size_t n, const HalfSpace& h) {
    if (h.normal.size() != n) throw InputError("half-space has wrong rank");
    RatVector v = h.normal;
    v.push_back(-h.rhs);
    return scaled_to_integral(v);
  }

  std::size_t dim_ = 0;
  bool empty_ = true;
  Cone hom_;
};

}  // namespace divfan
