#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "divfan/lattice.hpp"
#include "divfan/polyhedron.hpp"

namespace divfan::testing {

inline IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline RatVector rv(std::initializer_list<const char*> xs) {
  RatVector v;
  for (const char* x : xs) v.push_back(parse_rational(x));
  return v;
}

inline Rational q(const char* x) { return parse_rational(x); }

inline IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVector> rs;
  std::size_t cols = 0;
  for (const auto& r : rows) {
    rs.push_back(iv(r));
    cols = r.size();
  }
  return IntMatrix::from_rows(cols, rs);
}

// Rank-one polyhedron from its endpoints; "-inf" and "inf" for unbounded ends.
inline Polyhedron interval(const std::string& lo, const std::string& hi) {
  std::vector<HalfSpace> ineqs;
  if (lo != "-inf") ineqs.push_back({RatVector{Rational(1)}, parse_rational(lo)});
  if (hi != "inf") ineqs.push_back({RatVector{Rational(-1)}, -parse_rational(hi)});
  return Polyhedron::from_inequalities(1, ineqs, {});
}

inline Polyhedron point1(const std::string& x) { return interval(x, x); }

}  // namespace divfan::testing
