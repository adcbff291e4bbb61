#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "divfan/errors.hpp"

namespace divfan {

/// Finite Weyl group, enumerated from a faithful integer representation.
///
/// Elements are indexed 0..size()-1 with the identity at 0 and stored in
/// shortlex order. Each element carries its lexicographically smallest
/// reduced word over single-character generator names.
class WeylGroup {
 public:
  using Matrix = std::vector<std::int64_t>;  // row-major, n x n

  static constexpr std::size_t default_bound = 1'000'000;

  /// Trivial group.
  WeylGroup() : words_{""}, matrices_{Matrix{}}, right_{{}} {}

  /// Cartan types such as "A1", "A2", "B3", "A1xA1". Acts on the root
  /// lattice in the basis of simple roots.
  static WeylGroup from_cartan_type(const std::string& type, std::vector<std::string> names = {},
                                    std::size_t bound = default_bound) {
    const auto cartan = cartan_matrix(type);
    const std::size_t r = cartan.size();
    if (names.empty())
      for (std::size_t k = 0; k < r; ++k) names.emplace_back(1, static_cast<char>('a' + k));
    if (names.size() != r) throw InputError("Cartan type " + type + " needs " + std::to_string(r) + " generator names");
    std::vector<Matrix> gens;
    for (std::size_t i = 0; i < r; ++i) {
      Matrix m(r * r, 0);
      for (std::size_t k = 0; k < r; ++k) m[k * r + k] = 1;
      for (std::size_t j = 0; j < r; ++j) m[i * r + j] -= cartan[i][j];
      gens.push_back(std::move(m));
    }
    WeylGroup w = from_generators(r, gens, names, true, bound);
    w.type_ = type;
    return w;
  }

  /// Group generated by the given n x n integer matrices (rows listed first).
  static WeylGroup from_matrices(std::size_t n, const std::vector<Matrix>& gens, std::vector<std::string> names,
                                 std::size_t bound = default_bound) {
    if (names.size() != gens.size()) throw InputError("one name per generator matrix required");
    for (const auto& g : gens)
      if (g.size() != n * n) throw InputError("generator matrix has wrong size");
    return from_generators(n, gens, names, false, bound);
  }

  std::size_t size() const noexcept { return words_.size(); }
  std::size_t rank() const noexcept { return names_.size(); }
  const std::string& type() const noexcept { return type_; }
  const std::vector<std::string>& generator_names() const noexcept { return names_; }
  const std::vector<Matrix>& generator_matrices() const noexcept { return gen_matrices_; }
  std::size_t representation_dim() const noexcept { return n_; }
  bool has_root_system() const noexcept { return roots_; }

  static constexpr std::size_t identity() noexcept { return 0; }

  /// Reduced word; empty for the identity.
  const std::string& word(std::size_t e) const { return words_.at(e); }
  /// Reduced word, with "1" for the identity.
  std::string display(std::size_t e) const { return words_.at(e).empty() ? "1" : words_[e]; }
  std::size_t length(std::size_t e) const { return words_.at(e).size(); }

  /// Element index of a generator.
  std::size_t generator(std::size_t k) const { return right_[0].at(k); }

  std::optional<std::size_t> generator_index(char name) const {
    for (std::size_t k = 0; k < names_.size(); ++k)
      if (names_[k].size() == 1 && names_[k][0] == name) return k;
    return std::nullopt;
  }

  std::optional<std::size_t> generator_index(const std::string& name) const {
    if (name.size() != 1) return std::nullopt;
    return generator_index(name[0]);
  }

  /// Product a * b.
  std::size_t multiply(std::size_t a, std::size_t b) const {
    std::size_t x = a;
    for (char c : words_.at(b)) x = right_[x][*generator_index(c)];
    return x;
  }

  std::size_t inverse(std::size_t a) const {
    std::string w = words_.at(a);
    std::reverse(w.begin(), w.end());
    return element(w);
  }

  /// Element of an arbitrary word ("1" or "" for the identity).
  std::size_t element(const std::string& w) const {
    std::size_t x = 0;
    if (w == "1") return x;
    for (char c : w) {
      const auto k = generator_index(c);
      if (!k) throw InputError("unknown Weyl generator '" + std::string(1, c) + "' in word '" + w + "'");
      x = right_[x][*k];
    }
    return x;
  }

  const Matrix& matrix(std::size_t e) const { return matrices_.at(e); }

  /// Whether w maps the simple root with index k to a positive root.
  bool maps_to_positive_root(std::size_t w, std::size_t k) const {
    if (!roots_) throw InputError("Weyl group given by matrices has no root system");
    const auto& m = matrices_.at(w);
    bool nonzero = false;
    for (std::size_t r = 0; r < n_; ++r) {
      if (m[r * n_ + k] < 0) return false;
      nonzero |= m[r * n_ + k] != 0;
    }
    return nonzero;
  }

  /// Elements of the subgroup generated by the given generator indices.
  std::vector<std::size_t> parabolic_subgroup(const std::set<std::size_t>& gens) const {
    std::set<std::size_t> seen{0};
    std::deque<std::size_t> todo{0};
    while (!todo.empty()) {
      const std::size_t x = todo.front();
      todo.pop_front();
      for (std::size_t k : gens) {
        const std::size_t y = right_[x].at(k);
        if (seen.insert(y).second) todo.push_back(y);
      }
    }
    return {seen.begin(), seen.end()};
  }

  /// Minimal-length representatives of the left cosets w W_I, in shortlex order.
  std::vector<std::size_t> min_coset_reps(const std::set<std::size_t>& gens) const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < size(); ++w) {
      const bool minimal = std::all_of(gens.begin(), gens.end(),
                                       [&](std::size_t k) { return length(right_[w][k]) > length(w); });
      if (minimal) out.push_back(w);
    }
    return out;
  }

  /// The left coset w W_I, in shortlex order.
  std::vector<std::size_t> coset(std::size_t w, const std::set<std::size_t>& gens) const {
    std::vector<std::size_t> out;
    for (std::size_t u : parabolic_subgroup(gens)) out.push_back(multiply(w, u));
    std::sort(out.begin(), out.end());
    return out;
  }

  static std::vector<std::vector<std::int64_t>> cartan_matrix(const std::string& type) {
    std::vector<std::vector<std::int64_t>> total;
    std::string rest = type;
    std::vector<std::string> parts;
    for (;;) {
      const auto pos = rest.find_first_of("xX*");
      parts.push_back(rest.substr(0, pos));
      if (pos == std::string::npos) break;
      rest = rest.substr(pos + 1);
    }
    for (const auto& part : parts) {
      const auto block = simple_cartan(part);
      const std::size_t off = total.size(), r = block.size();
      for (auto& row : total) row.resize(off + r, 0);
      for (std::size_t i = 0; i < r; ++i) {
        std::vector<std::int64_t> row(off + r, 0);
        for (std::size_t j = 0; j < r; ++j) row[off + j] = block[i][j];
        total.push_back(std::move(row));
      }
    }
    return total;
  }

 private:
  static std::vector<std::vector<std::int64_t>> simple_cartan(const std::string& part) {
    if (part.size() < 2) throw InputError("malformed Cartan type component '" + part + "'");
    const char family = static_cast<char>(std::toupper(static_cast<unsigned char>(part[0])));
    std::size_t n = 0;
    try {
      n = std::stoul(part.substr(1));
    } catch (const std::exception&) {
      throw InputError("malformed Cartan type component '" + part + "'");
    }
    if (n == 0) throw InputError("Cartan type of rank zero");
    std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n, 0));
    auto link = [&](std::size_t i, std::size_t j) { a[i][j] = a[j][i] = -1; };
    for (std::size_t i = 0; i < n; ++i) a[i][i] = 2;
    switch (family) {
      case 'A':
        for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1);
        break;
      case 'B':
      case 'C':
        if (n < 2) throw InputError("types B and C need rank at least 2");
        for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1);
        (family == 'B' ? a[n - 1][n - 2] : a[n - 2][n - 1]) = -2;
        break;
      case 'D':
        if (n < 4) throw InputError("type D needs rank at least 4");
        for (std::size_t i = 0; i + 2 < n; ++i) link(i, i + 1);
        link(n - 3, n - 1);
        break;
      case 'E':
        if (n < 6 || n > 8) throw InputError("type E needs rank 6, 7 or 8");
        link(0, 2);
        link(1, 3);
        for (std::size_t i = 2; i + 1 < n; ++i) link(i, i + 1);
        break;
      case 'F':
        if (n != 4) throw InputError("type F needs rank 4");
        link(0, 1);
        link(1, 2);
        link(2, 3);
        a[1][2] = -2;
        break;
      case 'G':
        if (n != 2) throw InputError("type G needs rank 2");
        link(0, 1);
        a[1][0] = -3;
        break;
      default:
        throw InputError("unknown Cartan type '" + part + "'");
    }
    return a;
  }

  static Matrix multiply_matrices(std::size_t n, const Matrix& x, const Matrix& y) {
    Matrix z(n * n, 0);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k) {
        if (x[r * n + k] == 0) continue;
        for (std::size_t c = 0; c < n; ++c) z[r * n + c] += x[r * n + k] * y[k * n + c];
      }
    return z;
  }

  static WeylGroup from_generators(std::size_t n, const std::vector<Matrix>& gens, std::vector<std::string> names,
                                   bool roots, std::size_t bound) {
    std::set<std::string> uniq;
    for (const auto& s : names) {
      if (s.size() != 1) throw InputError("Weyl generator names must be single characters, got '" + s + "'");
      if (s == "1") throw InputError("'1' is reserved for the identity");
      if (!uniq.insert(s).second) throw InputError("duplicate Weyl generator name '" + s + "'");
    }
    WeylGroup w;
    w.n_ = n;
    w.names_ = std::move(names);
    w.gen_matrices_ = gens;
    w.roots_ = roots;
    w.words_.clear();
    w.matrices_.clear();
    w.right_.clear();
    Matrix id(n * n, 0);
    for (std::size_t k = 0; k < n; ++k) id[k * n + k] = 1;
    std::map<Matrix, std::size_t> index{{id, 0}};
    w.words_.push_back("");
    w.matrices_.push_back(id);
    // breadth first over right multiplication gives shortlex-minimal words
    for (std::size_t x = 0; x < w.words_.size(); ++x) {
      std::vector<std::size_t> row;
      for (std::size_t k = 0; k < gens.size(); ++k) {
        Matrix y = multiply_matrices(n, w.matrices_[x], gens[k]);
        auto it = index.find(y);
        if (it == index.end()) {
          if (w.words_.size() >= bound)
            throw InputError("Weyl group exceeds the enumeration bound of " + std::to_string(bound));
          it = index.emplace(y, w.words_.size()).first;
          w.words_.push_back(w.words_[x] + w.names_[k]);
          w.matrices_.push_back(std::move(y));
        }
        row.push_back(it->second);
      }
      w.right_.push_back(std::move(row));
    }
    return w;
  }

  std::size_t n_ = 0;
  std::string type_;
  std::vector<std::string> names_;
  std::vector<Matrix> gen_matrices_;
  bool roots_ = false;
  std::vector<std::string> words_;
  std::vector<Matrix> matrices_;
  std::vector<std::vector<std::size_t>> right_;
};

}  // namespace divfan
