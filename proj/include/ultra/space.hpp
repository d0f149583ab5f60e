#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rational.hpp"

namespace ultra {

enum class Kind { Invalid, Metric, Ultrametric };

inline std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::Invalid: return "invalid";
    case Kind::Metric: return "metric";
    case Kind::Ultrametric: return "ultrametric";
  }
  return "?";
}

// Witness triple: d(a,b) exceeds the bound obtained through c.
struct Triple {
  size_t a, b, c;
  friend bool operator==(const Triple&, const Triple&) = default;
};

struct ValidationReport {
  Kind kind = Kind::Invalid;
  std::vector<Triple> triangle_violations;  // d(a,b) > d(a,c) + d(c,b)
  std::vector<Triple> strong_violations;    // metric, but d(a,b) > max(d(a,c), d(c,b))

  // Lexicographically first violation of the property that decided `kind`.
  const Triple* witness() const {
    if (!triangle_violations.empty()) return &triangle_violations.front();
    if (!strong_violations.empty()) return &strong_violations.front();
    return nullptr;
  }
};

/// A finite point set with an exact symmetric distance table. Structural
/// defects (asymmetry, nonzero diagonal, zero off-diagonal, duplicate names)
/// are rejected at construction; the triangle/strong-triangle classification
/// is computed once and cached. Instances are immutable.
class Space {
public:
  Space(std::vector<std::string> points, const std::vector<std::vector<Dist>>& table)
      : points_(std::move(points)) {
    const size_t n = points_.size();
    if (n == 0) throw input_error("a space needs at least one point");
    {
      std::map<std::string_view, size_t> seen;
      for (size_t i = 0; i < n; ++i) {
        auto [it, fresh] = seen.emplace(points_[i], i);
        if (!fresh)
          throw input_error("duplicate point name '" + points_[i] + "'");
      }
    }
    if (table.size() != n)
      throw input_error("distance table has " + std::to_string(table.size()) +
                        " rows for " + std::to_string(n) + " points");
    table_.reserve(n * n);
    for (size_t i = 0; i < n; ++i) {
      if (table[i].size() != n)
        throw input_error("row " + std::to_string(i) + " has " +
                          std::to_string(table[i].size()) + " entries, expected " +
                          std::to_string(n));
      table_.insert(table_.end(), table[i].begin(), table[i].end());
    }
    for (size_t i = 0; i < n; ++i) {
      if (!at(i, i).is_zero())
        throw input_error("nonzero diagonal at point '" + points_[i] + "'");
      for (size_t j = i + 1; j < n; ++j) {
        if (at(i, j) != at(j, i))
          throw input_error("asymmetric entries for pair ('" + points_[i] + "', '" +
                            points_[j] + "')");
        if (at(i, j).is_zero())
          throw input_error("zero distance between distinct points ('" + points_[i] +
                            "', '" + points_[j] + "')");
      }
    }
    classify();
    std::vector<Dist> sp;
    sp.push_back(Dist(0));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) sp.push_back(at(i, j));
    std::sort(sp.begin(), sp.end());
    sp.erase(std::unique(sp.begin(), sp.end()), sp.end());
    spectrum_ = std::move(sp);
  }

  size_t size() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const std::string& point_name(size_t i) const { return points_[i]; }

  std::optional<size_t> point_index(std::string_view name) const {
    for (size_t i = 0; i < points_.size(); ++i)
      if (points_[i] == name) return i;
    return std::nullopt;
  }

  const Dist& dist(size_t i, size_t j) const { return at(i, j); }
  Kind kind() const { return report_.kind; }
  const ValidationReport& validation() const { return report_; }

  // Distinct distance values, ascending, 0 included.
  const std::vector<Dist>& spectrum() const { return spectrum_; }
  const Dist& diam() const { return spectrum_.back(); }

private:
  const Dist& at(size_t i, size_t j) const { return table_[i * points_.size() + j]; }

  void classify() {
    const size_t n = points_.size();
    report_.kind = Kind::Ultrametric;
    for (size_t a = 0; a < n; ++a)
      for (size_t b = a + 1; b < n; ++b)
        for (size_t c = 0; c < n; ++c) {
          if (c == a || c == b) continue;
          const Dist& ab = at(a, b);
          const Rat sum = at(a, c).value() + at(c, b).value();
          if (ab.value() > sum) {
            report_.triangle_violations.push_back({a, b, c});
          } else if (ab > std::max(at(a, c), at(c, b))) {
            report_.strong_violations.push_back({a, b, c});
          }
        }
    if (!report_.triangle_violations.empty())
      report_.kind = Kind::Invalid;
    else if (!report_.strong_violations.empty())
      report_.kind = Kind::Metric;
  }

  std::vector<std::string> points_;
  std::vector<Dist> table_;  // n*n, row-major
  ValidationReport report_;
  std::vector<Dist> spectrum_;
};

inline const ValidationReport& validate(const Space& s) { return s.validation(); }
inline const std::vector<Dist>& spectrum(const Space& s) { return s.spectrum(); }

namespace detail {

inline std::vector<size_t> checked_subset(const Space& s, std::span<const size_t> subset,
                                          size_t min_size, const char* op) {
  if (subset.size() < min_size)
    throw precondition_error(std::string(op) + ": subset must have at least " +
                             std::to_string(min_size) + " points");
  std::vector<size_t> v(subset.begin(), subset.end());
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    throw precondition_error(std::string(op) + ": duplicate point in subset");
  if (!v.empty() && v.back() >= s.size())
    throw precondition_error(std::string(op) + ": point index out of range");
  return v;
}

}  // namespace detail

inline Dist diameter(const Space& s, std::span<const size_t> subset) {
  auto v = detail::checked_subset(s, subset, 1, "diameter");
  Dist best(0);
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j) best = std::max(best, s.dist(v[i], v[j]));
  return best;
}

inline Dist diameter(const Space& s) {
  return s.diam();
}

// G_{r,X} (and, for subsets, the diametrical graph of the induced space).
struct LevelGraph {
  std::vector<size_t> vertices;                 // point ids, ascending
  std::vector<std::pair<size_t, size_t>> edges; // point-id pairs, first < second
  Dist level;
  std::optional<std::vector<std::vector<size_t>>> partition;  // X_1..X_k when computed
};

inline LevelGraph level_graph(const Space& s, const Dist& r) {
  if (r.is_zero()) throw precondition_error("level_graph: level must be positive");
  const auto& sp = s.spectrum();
  if (!std::binary_search(sp.begin(), sp.end(), r))
    throw precondition_error("level_graph: " + r.str() + " is not a spectrum value");
  LevelGraph g;
  g.level = r;
  g.vertices.resize(s.size());
  for (size_t i = 0; i < s.size(); ++i) g.vertices[i] = i;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      if (s.dist(i, j) == r) g.edges.push_back({i, j});
  return g;
}

// G': the same graph with isolated vertices dropped.
inline LevelGraph reduced(const LevelGraph& g) {
  LevelGraph out;
  out.level = g.level;
  out.edges = g.edges;
  std::vector<size_t> touched;
  for (auto& [u, v] : g.edges) {
    touched.push_back(u);
    touched.push_back(v);
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  out.vertices = std::move(touched);
  return out;
}

// Splits a subset along its diametrical graph: blocks are the connected
// components of the complement (pairs strictly below the subset diameter),
// ordered by smallest contained point id. Verifies the result is complete
// multipartite with k >= 2 and fails loudly otherwise, which happens exactly
// when the induced space is not ultrametric.
inline LevelGraph diametrical_partition(const Space& s, std::span<const size_t> subset) {
  auto v = detail::checked_subset(s, subset, 2, "diametrical_partition");
  const size_t m = v.size();
  const Dist d = diameter(s, v);

  // complement components via union-find
  std::vector<size_t> parent(m);
  for (size_t i = 0; i < m; ++i) parent[i] = i;
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      if (s.dist(v[i], v[j]) < d) parent[find(i)] = find(j);

  std::map<size_t, std::vector<size_t>> by_root;
  for (size_t i = 0; i < m; ++i) by_root[find(i)].push_back(v[i]);
  std::vector<std::vector<size_t>> blocks;
  for (auto& [root, pts] : by_root) blocks.push_back(std::move(pts));
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  if (blocks.size() < 2)
    throw precondition_error(
        "diametrical_partition: complement graph is connected; the induced space "
        "is not ultrametric");
  std::vector<size_t> block_of(s.size());
  for (size_t b = 0; b < blocks.size(); ++b)
    for (size_t p : blocks[b]) block_of[p] = b;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) {
      const bool same = block_of[v[i]] == block_of[v[j]];
      const bool at_diam = s.dist(v[i], v[j]) == d;
      if (same == at_diam)
        throw precondition_error(
            "diametrical_partition: blocks are not complete multipartite between '" +
            s.point_name(v[i]) + "' and '" + s.point_name(v[j]) +
            "'; the induced space is not ultrametric");
    }

  LevelGraph g;
  g.level = d;
  g.vertices = v;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      if (s.dist(v[i], v[j]) == d) g.edges.push_back({v[i], v[j]});
  g.partition = std::move(blocks);
  return g;
}

inline LevelGraph diametrical_partition(const Space& s) {
  std::vector<size_t> all(s.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;
  return diametrical_partition(s, all);
}

struct GomoryHuRecord {
  size_t spectrum_size;  // 0 counted in
  size_t point_count;
  bool holds;
};

inline GomoryHuRecord gomory_hu_check(const Space& s) {
  if (s.kind() != Kind::Ultrametric)
    throw precondition_error("gomory_hu_check: space is not ultrametric");
  GomoryHuRecord r;
  r.spectrum_size = s.spectrum().size();
  r.point_count = s.size();
  r.holds = r.spectrum_size <= r.point_count;
  return r;
}

inline Space induced(const Space& s, std::span<const size_t> subset) {
  if (subset.empty()) throw precondition_error("induced: empty subset");
  std::vector<std::string> names;
  names.reserve(subset.size());
  for (size_t i : subset) {
    if (i >= s.size()) throw precondition_error("induced: point index out of range");
    names.push_back(s.point_name(i));
  }
  std::vector<std::vector<Dist>> table(subset.size(), std::vector<Dist>(subset.size()));
  for (size_t i = 0; i < subset.size(); ++i)
    for (size_t j = 0; j < subset.size(); ++j) table[i][j] = s.dist(subset[i], subset[j]);
  return Space(std::move(names), table);
}

inline Space scale(const Space& s, const Rat& factor) {
  if (factor <= 0) throw precondition_error("scale: factor must be positive");
  std::vector<std::vector<Dist>> table(s.size(), std::vector<Dist>(s.size()));
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = 0; j < s.size(); ++j) table[i][j] = s.dist(i, j).scaled(factor);
  return Space(s.points(), table);
}

}  // namespace ultra
