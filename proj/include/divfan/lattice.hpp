#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "divfan/errors.hpp"

namespace divfan {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Point of a lattice, in coordinates.
using IntVector = std::vector<Integer>;
/// Point of the rational hull of a lattice.
using RatVector = std::vector<Rational>;

// ---------------------------------------------------------------------------
// scalar and vector helpers

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InputError("zero denominator");
  return Rational(num, den);
}

/// Parses "p", "p/q" or "-p/q".
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    return make_rational(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    throw InputError("not a rational number: '" + text + "'");
  }
}

inline std::string to_string(const Integer& x) { return x.str(); }
inline std::string to_string(const Rational& x) { return x.str(); }

inline bool is_integral(const Rational& x) { return denominator(x) == 1; }

inline Integer gcd_of(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

inline bool is_zero(std::span<const Integer> v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

inline bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

/// Divides by the gcd of the entries, keeping direction. Zero stays zero.
inline void reduce_in_place(IntVector& v) {
  const Integer g = gcd_of(v);
  if (g > 1)
    for (auto& x : v) x /= g;
}

/// Primitive lattice vector on the ray through v.
inline IntVector primitive(IntVector v) {
  if (is_zero(v)) throw InputError("primitive vector of zero requested");
  reduce_in_place(v);
  return v;
}

/// Primitive lattice vector on the ray through a rational vector.
inline IntVector primitive(const RatVector& v) {
  if (is_zero(v)) throw InputError("primitive vector of zero requested");
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, Integer(denominator(x)));
  IntVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(Integer(numerator(x) * (l / denominator(x))));
  reduce_in_place(out);
  return out;
}

inline IntVector scaled_to_integral(const RatVector& v) {
  if (is_zero(v)) return IntVector(v.size(), 0);
  return primitive(v);
}

inline RatVector to_rational(std::span<const Integer> v) {
  return RatVector(v.begin(), v.end());
}

inline Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  Integer s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline Rational dot(std::span<const Integer> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline int sign(const Integer& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }
inline int sign(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

inline IntVector negated(IntVector v) {
  for (auto& x : v) x = -x;
  return v;
}

inline IntVector unit_vector(std::size_t dim, std::size_t k) {
  IntVector e(dim, 0);
  e[k] = 1;
  return e;
}

template <class T>
std::string vector_string(const std::vector<T>& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ",";
    s += v[k].str();
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// matrices

/// Integer matrix acting on column vectors; a lattice map Z^cols -> Z^rows.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
    return m;
  }

  static IntMatrix from_rows(std::size_t cols, const std::vector<IntVector>& rows) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw InputError("matrix row has wrong length");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() != rows) throw InputError("matrix column has wrong length");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  IntVector column(std::size_t c) const {
    IntVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  std::vector<IntVector> row_list() const {
    std::vector<IntVector> out;
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
  }

  IntVector apply(std::span<const Integer> v) const {
    if (v.size() != cols_) throw InputError("rank mismatch in lattice map application");
    IntVector out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
  }

  RatVector apply(std::span<const Rational> v) const {
    if (v.size() != cols_) throw InputError("rank mismatch in lattice map application");
    RatVector out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
  }

  /// Pulls a functional on the codomain back to the domain.
  IntVector pull_back(std::span<const Integer> f) const {
    if (f.size() != rows_) throw InputError("rank mismatch in functional pull-back");
    IntVector out(cols_, 0);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[c] += f[r] * (*this)(r, c);
    return out;
  }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw InputError("rank mismatch in lattice map composition");
    IntMatrix m(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t k = 0; k < cols_; ++k) {
        if ((*this)(r, k) == 0) continue;
        for (std::size_t c = 0; c < o.cols_; ++c) m(r, c) += (*this)(r, k) * o(k, c);
      }
    return m;
  }

  IntMatrix transpose() const {
    IntMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
    return m;
  }

  /// Rows of this matrix followed by the rows of `below`.
  IntMatrix stacked(const IntMatrix& below) const {
    if (cols_ != below.cols_) throw InputError("cannot stack maps with different domains");
    IntMatrix m(rows_ + below.rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
    for (std::size_t r = 0; r < below.rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(rows_ + r, c) = below(r, c);
    return m;
  }

  IntMatrix column_range(std::size_t first, std::size_t count) const {
    IntMatrix m(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < count; ++c) m(r, c) = (*this)(r, first + c);
    return m;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Lattice homomorphism Z^domain -> Z^codomain, stored as codomain x domain matrix.
using LatticeMap = IntMatrix;

// ---------------------------------------------------------------------------
// rational linear algebra on lists of row vectors

/// Reduced row echelon form of the span of `rows` (vectors of length n).
struct EchelonBasis {
  std::size_t n = 0;
  std::vector<RatVector> rows;        ///< leading entry 1 at pivots[k]
  std::vector<std::size_t> pivots;

  std::size_t rank() const noexcept { return rows.size(); }

  /// Representative of v modulo the span with zero pivot coordinates.
  RatVector reduce(RatVector v) const {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const Rational c = v[pivots[k]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < n; ++j) v[j] -= c * rows[k][j];
    }
    return v;
  }

  bool contains(const RatVector& v) const { return is_zero(reduce(v)); }

  /// Canonical primitive integral basis of the span.
  std::vector<IntVector> integral_basis() const {
    std::vector<IntVector> out;
    for (const auto& r : rows) out.push_back(primitive(r));
    return out;
  }
};

inline EchelonBasis echelon(std::size_t n, std::vector<RatVector> rows) {
  EchelonBasis e;
  e.n = n;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const Rational inv = 1 / rows[r][col];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r || rows[k][col] == 0) continue;
      const Rational f = rows[k][col];
      for (std::size_t j = 0; j < n; ++j) rows[k][j] -= f * rows[r][j];
    }
    pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  e.rows = std::move(rows);
  e.pivots = std::move(pivots);
  return e;
}

inline EchelonBasis echelon(std::size_t n, const std::vector<IntVector>& rows) {
  std::vector<RatVector> rs;
  rs.reserve(rows.size());
  for (const auto& v : rows) rs.push_back(to_rational(v));
  return echelon(n, std::move(rs));
}

inline std::size_t rank_of(std::size_t n, const std::vector<IntVector>& rows) {
  return echelon(n, rows).rank();
}

/// Canonical integral basis of {x : <r, x> = 0 for all rows r}.
inline std::vector<IntVector> orthogonal_complement(std::size_t n, const std::vector<IntVector>& rows) {
  const EchelonBasis e = echelon(n, rows);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    RatVector v(n, 0);
    v[free] = 1;
    for (std::size_t k = 0; k < e.rows.size(); ++k) v[e.pivots[k]] = -e.rows[k][free];
    basis.push_back(std::move(v));
  }
  return echelon(n, std::move(basis)).integral_basis();
}

/// Exact determinant of a square matrix (Bareiss elimination).
inline Integer determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int flip = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && m(s, k) == 0) ++s;
      if (s == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(s, c));
      flip = -flip;
    }
    if (k + 1 == n) break;
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return flip * m(n - 1, n - 1);
}

/// Inverse of a unimodular matrix, or nullopt if it is not unimodular.
inline std::optional<IntMatrix> unimodular_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  std::vector<RatVector> a(n, RatVector(2 * n, 0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r][c] = m(r, c);
    a[r][n + r] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    const Rational inv = 1 / a[col][col];
    for (auto& x : a[col]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  IntMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      if (!is_integral(a[r][n + c])) return std::nullopt;
      out(r, c) = numerator(a[r][n + c]);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Smith normal form

/// left * input * right == diagonal, with left and right unimodular and
/// the diagonal entries non-negative, each dividing the next.
struct SmithForm {
  IntMatrix diagonal;
  IntMatrix left;
  IntMatrix right;

  std::size_t rank() const {
    std::size_t r = 0;
    while (r < std::min(diagonal.rows(), diagonal.cols()) && diagonal(r, r) != 0) ++r;
    return r;
  }
};

inline SmithForm smith_normal_form(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols; ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < rows; ++c) std::swap(u(i, c), u(j, c));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < rows; ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < cols; ++r) std::swap(v(r, i), v(r, j));
  };
  // row_i -= f * row_j
  auto sub_row = [&](std::size_t i, std::size_t j, const Integer& f) {
    for (std::size_t c = 0; c < cols; ++c) a(i, c) -= f * a(j, c);
    for (std::size_t c = 0; c < rows; ++c) u(i, c) -= f * u(j, c);
  };
  auto sub_col = [&](std::size_t i, std::size_t j, const Integer& f) {
    for (std::size_t r = 0; r < rows; ++r) a(r, i) -= f * a(r, j);
    for (std::size_t r = 0; r < cols; ++r) v(r, i) -= f * v(r, j);
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < cols; ++c)
          if (a(r, c) != 0 && (!best || abs(a(r, c)) < abs(a(best->first, best->second)))) best = {r, c};
      if (!best) return {a, u, v};
      swap_rows(t, best->first);
      swap_cols(t, best->second);

      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (a(r, t) == 0) continue;
        sub_row(r, t, a(r, t) / a(t, t));
        if (a(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (a(t, c) == 0) continue;
        sub_col(c, t, a(t, c) / a(t, t));
        if (a(t, c) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility of the trailing block
      std::optional<std::size_t> bad_row;
      for (std::size_t r = t + 1; r < rows && !bad_row; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (a(r, c) % a(t, t) != 0) {
            bad_row = r;
            break;
          }
      if (!bad_row) break;
      sub_row(t, *bad_row, Integer(-1));
    }
    if (a(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) a(t, c) = -a(t, c);
      for (std::size_t c = 0; c < rows; ++c) u(t, c) = -u(t, c);
    }
  }
  return {a, u, v};
}

/// Basis of the kernel lattice of m, as the columns of the returned matrix.
inline IntMatrix kernel_basis(const IntMatrix& m) {
  const SmithForm s = smith_normal_form(m);
  const std::size_t r = s.rank();
  return s.right.column_range(r, m.cols() - r);
}

// ---------------------------------------------------------------------------
// split exact sequences

/// Split exact sequence 0 -> N --embedding--> X --projection--> Y -> 0
/// with a retraction `cosection`: X -> N of the embedding.
struct SplitSequence {
  LatticeMap embedding;   ///< rank(X) x rank(N)
  LatticeMap projection;  ///< rank(Y) x rank(X)
  LatticeMap cosection;   ///< rank(N) x rank(X)

  std::size_t middle_rank() const { return projection.cols(); }
  std::size_t quotient_rank() const { return projection.rows(); }
  std::size_t kernel_rank() const { return cosection.rows(); }

  /// Y -> X with projection o section = id and cosection o section = 0.
  LatticeMap section() const {
    const auto inv = unimodular_inverse(projection.stacked(cosection));
    if (!inv) throw ValidationError("projection and cosection do not form an isomorphism");
    return inv->column_range(0, quotient_rank());
  }
};

/// Derives the embedding of the kernel from projection and cosection.
inline LatticeMap derive_embedding(const LatticeMap& projection, const LatticeMap& cosection) {
  if (projection.cols() != cosection.cols()) throw InputError("projection and cosection have different domains");
  const IntMatrix k = kernel_basis(projection);
  if (k.cols() != cosection.rows())
    throw ValidationError("kernel of the projection has rank " + std::to_string(k.cols()) +
                          " but the cosection targets rank " + std::to_string(cosection.rows()));
  const auto inv = unimodular_inverse(cosection * k);
  if (!inv) throw ValidationError("cosection restricted to the kernel is not an isomorphism");
  return k * *inv;
}

inline SplitSequence make_split(LatticeMap projection, LatticeMap cosection,
                                std::optional<LatticeMap> embedding = std::nullopt) {
  SplitSequence s;
  s.embedding = embedding ? std::move(*embedding) : derive_embedding(projection, cosection);
  s.projection = std::move(projection);
  s.cosection = std::move(cosection);
  return s;
}

struct SplitReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Checks projection o embedding = 0, cosection o embedding = id and that
/// (projection, cosection) is an isomorphism. Throws on rank mismatch.
inline SplitReport verify_splitting(const SplitSequence& s) {
  const std::size_t m = s.projection.cols();
  if (s.cosection.cols() != m || s.embedding.rows() != m || s.embedding.cols() != s.cosection.rows())
    throw InputError("split sequence maps have inconsistent ranks");
  if (s.projection.rows() + s.cosection.rows() != m)
    throw InputError("ranks of kernel and quotient do not add up to the middle rank");
  SplitReport rep;
  if (!(s.projection * s.embedding).is_zero()) rep.violations.push_back("projection o embedding != 0");
  if (!(s.cosection * s.embedding == IntMatrix::identity(s.cosection.rows())))
    rep.violations.push_back("cosection o embedding != id");
  const Integer det = determinant(s.projection.stacked(s.cosection));
  if (det != 1 && det != -1) rep.violations.push_back("(projection, cosection) has determinant " + det.str());
  rep.ok = rep.violations.empty();
  return rep;
}

}  // namespace divfan
