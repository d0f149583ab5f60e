#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "balls.hpp"
#include "rigidity.hpp"
#include "space.hpp"

namespace ultra {

namespace detail {

// K_{1,m} test on a diametrical partition: two blocks, one a single point.
inline bool partition_is_star(const LevelGraph& part) {
  const auto& blocks = *part.partition;
  return blocks.size() == 2 && (blocks[0].size() == 1 || blocks[1].size() == 1);
}

}  // namespace detail

struct BallStarCheck {
  bool all_stars;
  std::optional<Ball> violator;  // first ball (size, members order) that is not a star
};

/// Maximal rigidity via Prop-style ball scan: every ball of positive diameter
/// must have a star diametrical graph.
inline BallStarCheck balls_are_stars(const Space& s) {
  if (s.kind() != Kind::Ultrametric)
    throw precondition_error("balls_are_stars: space is not ultrametric");
  if (s.size() < 2) throw precondition_error("balls_are_stars: need at least two points");
  for (const Ball& b : enumerate_balls(s)) {
    if (b.size() < 2) continue;  // diameter 0
    if (!detail::partition_is_star(diametrical_partition(s, b))) return {false, b};
  }
  return {true, std::nullopt};
}

struct LevelStarRecord {
  bool is_star;
  size_t level;  // level of the unique inner node labeled r
  size_t rays;   // |X| - 1 - level
};

/// For a maximally rigid space, the level graph at r with isolated vertices
/// dropped is a star whose ray count is pinned by the level of the node
/// labeled r. The star test is graph isomorphism with K_{1,rays}.
inline LevelStarRecord level_star_check(const Space& s, const Dist& r) {
  if (!is_max_rigid(s).max_rigid)
    throw precondition_error("level_star_check: space is not maximally rigid");
  if (r.is_zero()) throw precondition_error("level_star_check: level must be positive");
  const auto& sp = s.spectrum();
  if (!std::binary_search(sp.begin(), sp.end(), r))
    throw precondition_error("level_star_check: " + r.str() + " is not a spectrum value");

  const ReprTree t = build_tree(s);
  size_t labeled = t.nodes.size();
  for (size_t v = 0; v < t.nodes.size(); ++v) {
    if (t.nodes[v].leaf_point || t.nodes[v].label != r) continue;
    if (labeled != t.nodes.size())
      throw invariant_error("level_star_check: label " + r.str() + " appears twice");
    labeled = v;
  }
  if (labeled == t.nodes.size())
    throw invariant_error("level_star_check: no inner node labeled " + r.str());

  LevelStarRecord rec;
  rec.level = t.nodes[labeled].level;
  rec.rays = s.size() - 1 - rec.level;

  const LevelGraph g = reduced(level_graph(s, r));
  bool star = g.edges.size() == rec.rays && g.vertices.size() == rec.rays + 1;
  if (star && rec.rays > 1) {
    std::map<size_t, size_t> degree;
    for (auto& [u, v] : g.edges) {
      ++degree[u];
      ++degree[v];
    }
    size_t centers = 0, leaves = 0;
    for (auto& [v, d] : degree) {
      if (d == rec.rays) ++centers;
      else if (d == 1) ++leaves;
    }
    star = centers == 1 && leaves == rec.rays;
  }
  rec.is_star = star;
  return rec;
}

struct EdgeBoundRecord {
  size_t edge_count;  // |E(G_X)|
  size_t bound;       // |X| - 1
  bool equality;
  bool is_star;
};

/// |E(G_X)| >= |X|-1 with equality exactly for star diametrical graphs.
inline EdgeBoundRecord diametrical_edge_bound(const Space& s) {
  if (s.kind() != Kind::Ultrametric)
    throw precondition_error("diametrical_edge_bound: space is not ultrametric");
  if (s.size() < 2)
    throw precondition_error("diametrical_edge_bound: need at least two points");
  const LevelGraph part = diametrical_partition(s);
  EdgeBoundRecord r;
  r.edge_count = part.edges.size();
  r.bound = s.size() - 1;
  r.equality = r.edge_count == r.bound;
  r.is_star = detail::partition_is_star(part);
  if (r.edge_count < r.bound)
    throw invariant_error("diametrical_edge_bound: edge bound violated");
  if (r.equality != r.is_star)
    throw invariant_error("diametrical_edge_bound: equality and star shape disagree");
  return r;
}

/// Statement: every subset's diametrical graph has no more edges than any
/// ultrametric space of the same size can have at minimum, i.e. all subset
/// diametrical graphs are stars. Decided through maximal rigidity; verified
/// by subset exhaustion up to the cap.
inline bool edge_minimality_check(const Space& s, size_t exhaustive_cap) {
  if (s.kind() != Kind::Ultrametric)
    throw precondition_error("edge_minimality_check: space is not ultrametric");
  if (s.size() < 2)
    throw precondition_error("edge_minimality_check: need at least two points");
  const bool verdict = is_max_rigid(s).max_rigid;
  const size_t n = s.size();
  if (n <= exhaustive_cap) {
    bool all_minimal = true;
    for (size_t mask = 1; mask < (size_t{1} << n) && all_minimal; ++mask) {
      std::vector<size_t> subset;
      for (size_t i = 0; i < n; ++i)
        if (mask & (size_t{1} << i)) subset.push_back(i);
      if (subset.size() < 2) continue;
      Dist d(0);
      for (size_t i = 0; i < subset.size(); ++i)
        for (size_t j = i + 1; j < subset.size(); ++j)
          d = std::max(d, s.dist(subset[i], subset[j]));
      size_t edges = 0;
      for (size_t i = 0; i < subset.size(); ++i)
        for (size_t j = i + 1; j < subset.size(); ++j)
          if (s.dist(subset[i], subset[j]) == d) ++edges;
      all_minimal = edges == subset.size() - 1;
    }
    if (all_minimal != verdict)
      throw invariant_error("edge_minimality_check: subset scan disagrees with rigidity");
  }
  return verdict;
}

struct HamPath {
  std::vector<size_t> points;
  std::vector<Dist> weights;  // weights[k] = d(points[k], points[k+1])
};

/// The strictly-decreasing Hamiltonian path of a maximally rigid space, read
/// off the tree chain: the lone leaf of each level, then the two last-level
/// leaves in point order. Returns nothing when the space is not maximally
/// rigid.
inline std::optional<HamPath> hamiltonian_decreasing_path(const Space& s) {
  if (s.kind() != Kind::Ultrametric)
    throw precondition_error("hamiltonian_decreasing_path: space is not ultrametric");
  if (s.size() < 2)
    throw precondition_error("hamiltonian_decreasing_path: need at least two points");
  const RigidityReport rep = is_max_rigid(s);
  if (!rep.max_rigid) return std::nullopt;

  const ReprTree t = build_tree(s);
  HamPath path;
  for (size_t k = 0; k < rep.shape_chain.size(); ++k) {
    const ReprNode& inner = t.nodes[rep.shape_chain[k]];
    std::vector<size_t> leaf_children;
    for (size_t c : inner.children)
      if (t.nodes[c].leaf_point) leaf_children.push_back(*t.nodes[c].leaf_point);
    if (k + 1 < rep.shape_chain.size()) {
      path.points.push_back(leaf_children.front());
    } else {
      std::sort(leaf_children.begin(), leaf_children.end());
      path.points.push_back(leaf_children[0]);
      path.points.push_back(leaf_children[1]);
    }
  }
  for (size_t k = 0; k + 1 < path.points.size(); ++k)
    path.weights.push_back(s.dist(path.points[k], path.points[k + 1]));

  if (path.points.size() != s.size())
    throw invariant_error("hamiltonian_decreasing_path: path misses points");
  for (size_t k = 0; k + 1 < path.weights.size(); ++k)
    if (!(path.weights[k] > path.weights[k + 1]))
      throw invariant_error("hamiltonian_decreasing_path: weights not strictly decreasing");
  return path;
}

struct SpanningStar {
  size_t center;
  std::vector<std::pair<size_t, Dist>> rays;  // ascending weights
};

/// Spanning star with pairwise distinct ray weights, centered at the deepest
/// leaf (the reversed Hamiltonian path). Returns nothing when the space is
/// not maximally rigid.
inline std::optional<SpanningStar> distinct_weight_spanning_star(const Space& s) {
  auto path = hamiltonian_decreasing_path(s);
  if (!path) return std::nullopt;
  SpanningStar star;
  star.center = path->points.back();
  for (size_t i = path->points.size() - 1; i-- > 0;)
    star.rays.push_back({path->points[i], s.dist(star.center, path->points[i])});
  for (size_t i = 0; i + 1 < star.rays.size(); ++i)
    if (!(star.rays[i].second < star.rays[i + 1].second))
      throw invariant_error("distinct_weight_spanning_star: ray weights not distinct");
  return star;
}

struct HamCycle {
  std::vector<size_t> points;
  std::vector<Dist> weights;  // weights[k] = d(points[k], points[(k+1) % n])
};

/// Closes the decreasing Hamiltonian path; the returning edge carries the
/// diameter again, so the maximum is attained twice.
inline std::optional<HamCycle> hamiltonian_cycle_check(const Space& s) {
  if (s.size() < 3)
    throw precondition_error("hamiltonian_cycle_check: need at least three points");
  auto path = hamiltonian_decreasing_path(s);
  if (!path) return std::nullopt;
  HamCycle cycle;
  cycle.points = path->points;
  cycle.weights = path->weights;
  cycle.weights.push_back(s.dist(cycle.points.back(), cycle.points.front()));
  const Dist& closing = cycle.weights.back();
  if (closing != cycle.weights.front())
    throw invariant_error("hamiltonian_cycle_check: closing edge is not the diameter");
  for (const Dist& w : cycle.weights)
    if (w > closing) throw invariant_error("hamiltonian_cycle_check: closing edge not maximal");
  return cycle;
}

/// In an ultrametric space the heaviest edge of any cycle is never unique.
inline bool cycle_max_twice(const Space& s, std::span<const size_t> cycle) {
  if (s.kind() != Kind::Ultrametric)
    throw precondition_error("cycle_max_twice: space is not ultrametric");
  if (cycle.size() < 3) throw precondition_error("cycle_max_twice: cycle needs >= 3 points");
  {
    std::vector<size_t> v(cycle.begin(), cycle.end());
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end())
      throw precondition_error("cycle_max_twice: repeated vertex in cycle");
    if (v.back() >= s.size())
      throw precondition_error("cycle_max_twice: point index out of range");
  }
  Dist best(0);
  for (size_t k = 0; k < cycle.size(); ++k)
    best = std::max(best, s.dist(cycle[k], cycle[(k + 1) % cycle.size()]));
  size_t hits = 0;
  for (size_t k = 0; k < cycle.size(); ++k)
    if (s.dist(cycle[k], cycle[(k + 1) % cycle.size()]) == best) ++hits;
  return hits >= 2;
}

struct StarCompletion {
  Space space;
  bool unique;
  std::optional<Space> second_completion;
};

/// Completes a positively weighted star to an ultrametric space by
/// d(y_i, y_j) = max(w_i, w_j). The completion is unique exactly when the
/// weights are pairwise distinct; otherwise a second valid completion with
/// one tied pair lowered to half the tie is exhibited.
inline StarCompletion complete_star(const std::vector<std::pair<std::string, Dist>>& rays,
                                    const std::string& center) {
  if (rays.empty()) throw precondition_error("complete_star: need at least one ray");
  for (const auto& [name, w] : rays)
    if (w.is_zero()) throw precondition_error("complete_star: ray weight must be positive");
  std::vector<std::string> names{center};
  for (const auto& [name, w] : rays) names.push_back(name);
  {
    auto sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw precondition_error("complete_star: duplicate point names");
  }

  const size_t n = names.size();
  std::vector<std::vector<Dist>> table(n, std::vector<Dist>(n, Dist(0)));
  for (size_t i = 0; i < rays.size(); ++i) {
    table[0][i + 1] = table[i + 1][0] = rays[i].second;
    for (size_t j = i + 1; j < rays.size(); ++j)
      table[i + 1][j + 1] = table[j + 1][i + 1] = std::max(rays[i].second, rays[j].second);
  }
  Space completed(names, table);
  if (completed.kind() != Kind::Ultrametric)
    throw invariant_error("complete_star: max completion is not ultrametric");

  StarCompletion out{std::move(completed), true, std::nullopt};
  for (size_t i = 0; i < rays.size() && out.unique; ++i)
    for (size_t j = i + 1; j < rays.size() && out.unique; ++j)
      if (rays[i].second == rays[j].second) {
        out.unique = false;
        auto second = table;
        second[i + 1][j + 1] = second[j + 1][i + 1] = rays[i].second.half();
        Space alt(names, second);
        if (alt.kind() != Kind::Ultrametric)
          throw invariant_error("complete_star: tied alternative is not ultrametric");
        out.second_completion = std::move(alt);
      }
  return out;
}

/// The spanning star pins down the whole space: the star exists with distinct
/// weights and its max completion reproduces the table exactly.
inline bool star_determination_check(const Space& s) {
  if (s.kind() != Kind::Ultrametric)
    throw precondition_error("star_determination_check: space is not ultrametric");
  if (s.size() < 2)
    throw precondition_error("star_determination_check: need at least two points");
  auto star = distinct_weight_spanning_star(s);
  if (!star) return false;

  std::vector<std::pair<std::string, Dist>> rays;
  for (auto& [p, w] : star->rays) rays.push_back({s.point_name(p), w});
  StarCompletion completion = complete_star(rays, s.point_name(star->center));
  if (!completion.unique) return false;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = 0; j < s.size(); ++j) {
      size_t ci = *completion.space.point_index(s.point_name(i));
      size_t cj = *completion.space.point_index(s.point_name(j));
      if (completion.space.dist(ci, cj) != s.dist(i, j)) return false;
    }
  return true;
}

}  // namespace ultra
