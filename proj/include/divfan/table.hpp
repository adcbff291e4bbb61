#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "divfan/divisorial.hpp"

namespace divfan {

struct TableOptions {
  std::map<std::string, std::string> weyl_display;  ///< word -> printed name
  std::vector<std::string> row_order;               ///< label keys listed first, in this order
};

/// Rank-one layout: each row is a divisor whose slice is one point v
/// subdividing the line, columns are tail cones, cells list the charts whose
/// coefficient equals v + column. Without that shape, rows list cells.
struct Table {
  bool point_layout = false;
  std::vector<std::string> columns;
  struct Row {
    std::string label;
    std::optional<Rational> v;
    std::vector<std::vector<std::string>> cells;  ///< point layout: one entry per column
    std::vector<std::pair<std::string, std::vector<std::string>>> generic;
  };
  std::vector<Row> rows;
};

namespace detail {

inline std::string chart_name(const DivisorialFan& f, std::size_t k, const TableOptions& o) {
  const auto& l = f.maximal()[k].label();
  auto word = [&](const std::string& w) {
    const auto it = o.weyl_display.find(w.empty() ? "1" : w);
    return it != o.weyl_display.end() ? it->second : (w.empty() ? std::string("1") : w);
  };
  if (!l || (l->weyl.empty() && l->coset.empty())) return f.id(k);
  if (l->coset.size() > 1) {
    std::string s = "{";
    for (std::size_t i = 0; i < l->coset.size(); ++i) s += (i ? "," : "") + word(l->coset[i]);
    return s + "}";
  }
  return word(l->weyl);
}

inline std::vector<DivisorLabel> ordered_labels(const DivisorialFan& f, const TableOptions& o) {
  std::vector<DivisorLabel> out;
  const auto all = f.labels();
  for (const auto& key : o.row_order)
    for (const auto& l : all)
      if (l.key() == key) out.push_back(l);
  for (const auto& l : all)
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  return out;
}

}  // namespace detail

inline Table make_table(const DivisorialFan& f, const TableOptions& o = {}) {
  Table t;
  const auto labels = detail::ordered_labels(f, o);
  std::vector<Cone> tails;
  for (const auto& d : f.maximal())
    if (std::find(tails.begin(), tails.end(), d.tail()) == tails.end()) tails.push_back(d.tail());
  std::sort(tails.begin(), tails.end(), [](const Cone& a, const Cone& b) {
    return Polyhedron::from_cone(a).to_string() < Polyhedron::from_cone(b).to_string();
  });
  std::map<DivisorLabel, std::optional<RatVector>> shift;
  t.point_layout = f.rank() == 1;
  for (const auto& l : labels) {
    std::optional<RatVector> v;
    for (const auto& d : f.maximal()) {
      const Polyhedron p = d.coefficient(l);
      if (p.is_empty()) continue;
      const auto vs = p.vertices();
      if (vs.size() != 1 || !(p == Polyhedron::from_cone(d.tail()).translate(vs[0])) || (v && *v != vs[0])) {
        t.point_layout = false;
        break;
      }
      v = vs[0];
    }
    shift[l] = v;
    if (!t.point_layout) break;
  }
  if (t.point_layout) {
    for (const auto& c : tails) t.columns.push_back(Polyhedron::from_cone(c).to_string());
    for (const auto& l : labels) {
      Table::Row row{l.key(), shift[l] ? std::optional<Rational>((*shift[l])[0]) : std::optional<Rational>(Rational(0)), {}, {}};
      for (const auto& c : tails) {
        const Polyhedron cell = Polyhedron::from_cone(c).translate(RatVector{*row.v});
        std::vector<std::string> names;
        for (std::size_t k = 0; k < f.maximal().size(); ++k)
          if (f.maximal()[k].tail() == c && f.maximal()[k].coefficient(l) == cell)
            names.push_back(detail::chart_name(f, k, o));
        row.cells.push_back(std::move(names));
      }
      t.rows.push_back(std::move(row));
    }
    return t;
  }
  for (const auto& l : labels) {
    Table::Row row{l.key(), std::nullopt, {}, {}};
    std::map<Polyhedron, std::vector<std::string>> cells;
    for (std::size_t k = 0; k < f.maximal().size(); ++k)
      cells[f.maximal()[k].coefficient(l)].push_back(detail::chart_name(f, k, o));
    for (auto& [p, names] : cells) row.generic.emplace_back(p.to_string(), std::move(names));
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline std::string render_table(const Table& t) {
  auto join = [](const std::vector<std::string>& xs) {
    std::string s;
    for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? "," : "") + xs[k];
    return s;
  };
  std::vector<std::vector<std::string>> grid;
  if (t.point_layout) {
    std::vector<std::string> head{"", "v"};
    head.insert(head.end(), t.columns.begin(), t.columns.end());
    grid.push_back(head);
    for (const auto& r : t.rows) {
      std::vector<std::string> line{r.label, r.v ? r.v->str() : ""};
      for (const auto& c : r.cells) line.push_back(join(c));
      grid.push_back(line);
    }
  } else {
    grid.push_back({"", "coefficient", "charts"});
    for (const auto& r : t.rows)
      for (std::size_t k = 0; k < r.generic.size(); ++k)
        grid.push_back({k ? "" : r.label, r.generic[k].first, join(r.generic[k].second)});
  }
  // column widths in code points so UTF-8 labels line up
  auto width = [](const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
  };
  std::vector<std::size_t> w;
  for (const auto& line : grid)
    for (std::size_t k = 0; k < line.size(); ++k) {
      if (w.size() <= k) w.push_back(0);
      w[k] = std::max(w[k], width(line[k]));
    }
  std::string out;
  for (std::size_t r = 0; r < grid.size(); ++r) {
    std::string line;
    for (std::size_t k = 0; k < grid[r].size(); ++k) {
      line += (k ? " | " : "") + grid[r][k];
      if (k + 1 < grid[r].size()) line += std::string(w[k] - width(grid[r][k]), ' ');
    }
    out += line + "\n";
    if (r == 0) {
      std::string rule;
      for (std::size_t k = 0; k < w.size(); ++k) rule += (k ? "-+-" : "") + std::string(w[k], '-');
      out += rule + "\n";
    }
  }
  return out;
}

}  // namespace divfan
