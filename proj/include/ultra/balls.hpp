#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "repr_tree.hpp"
#include "space.hpp"

namespace ultra {

// Balls are identified extensionally: a sorted set of point ids. Centers and
// radii are discarded after enumeration.
using Ball = std::vector<size_t>;

namespace detail {

struct BallOrder {
  bool operator()(const Ball& a, const Ball& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

inline bool ball_subset(const Ball& a, const Ball& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace detail

/// Every B_r(t) for t a point and r a spectrum value, deduplicated by member
/// set and ordered by (size, members). Singletons and X are always present.
inline std::vector<Ball> enumerate_balls(const Space& s) {
  if (s.kind() == Kind::Invalid)
    throw precondition_error("enumerate_balls: space is not metric");
  std::set<Ball> seen;
  for (size_t t = 0; t < s.size(); ++t) {
    for (const Dist& r : s.spectrum()) {
      Ball b;
      for (size_t x = 0; x < s.size(); ++x)
        if (s.dist(x, t) <= r) b.push_back(x);
      seen.insert(std::move(b));
    }
  }
  std::vector<Ball> balls(seen.begin(), seen.end());
  std::sort(balls.begin(), balls.end(), detail::BallOrder{});
  return balls;
}

struct GammaGraph {
  std::vector<Ball> vertices;                    // canonical (size, members) order
  std::vector<std::pair<size_t, size_t>> edges;  // vertex indices, first < second
  size_t root_vertex = 0;                        // index of the ball equal to X
};

/// Inclusion-adjacency graph on all balls: {B1,B2} is an edge iff one
/// contains the other with no third ball between them. Connected for every
/// finite metric space; that is asserted here.
inline GammaGraph gamma_graph(const Space& s) {
  GammaGraph g;
  g.vertices = enumerate_balls(s);
  const size_t m = g.vertices.size();
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) {
      if (!detail::ball_subset(g.vertices[i], g.vertices[j])) continue;
      bool covered = false;
      for (size_t k = 0; k < m && !covered; ++k) {
        if (k == i || k == j) continue;
        if (g.vertices[k].size() <= g.vertices[i].size() ||
            g.vertices[k].size() >= g.vertices[j].size())
          continue;
        covered = detail::ball_subset(g.vertices[i], g.vertices[k]) &&
                  detail::ball_subset(g.vertices[k], g.vertices[j]);
      }
      if (!covered) g.edges.push_back({i, j});
    }
  g.root_vertex = m - 1;  // X is the unique largest ball
  if (g.vertices[g.root_vertex].size() != s.size())
    throw invariant_error("gamma_graph: full space missing from ball family");

  std::vector<char> reach(m, 0);
  std::vector<size_t> stack{g.root_vertex};
  reach[g.root_vertex] = 1;
  size_t count = 0;
  while (!stack.empty()) {
    size_t v = stack.back();
    stack.pop_back();
    ++count;
    for (auto& [a, b] : g.edges) {
      size_t other = m;
      if (a == v) other = b;
      else if (b == v) other = a;
      if (other < m && !reach[other]) {
        reach[other] = 1;
        stack.push_back(other);
      }
    }
  }
  if (count != m) throw invariant_error("gamma_graph: graph is not connected");
  return g;
}

struct GammaTreeRecord {
  bool is_tree;
  size_t vertex_count;
  size_t edge_count;
};

// Tree test via |V| = |E| + 1; connectivity is asserted by gamma_graph.
inline GammaTreeRecord gamma_is_tree(const Space& s) {
  GammaGraph g = gamma_graph(s);
  return {g.vertices.size() == g.edges.size() + 1, g.vertices.size(), g.edges.size()};
}

/// Checks the explicit map node -> leaf set is a rooted-graph isomorphism
/// from the unlabeled representing tree onto the ball graph.
inline bool gamma_tree_matches_repr(const Space& s) {
  if (s.kind() != Kind::Ultrametric)
    throw precondition_error("gamma_tree_matches_repr: space is not ultrametric");
  const ReprTree t = build_tree(s);
  const GammaGraph g = gamma_graph(s);
  if (t.nodes.size() != g.vertices.size()) return false;

  std::map<Ball, size_t> index;
  for (size_t i = 0; i < g.vertices.size(); ++i) index[g.vertices[i]] = i;
  std::vector<size_t> image(t.nodes.size());
  std::vector<char> hit(g.vertices.size(), 0);
  for (size_t v = 0; v < t.nodes.size(); ++v) {
    auto it = index.find(t.nodes[v].leaf_set);
    if (it == index.end()) return false;
    if (hit[it->second]) return false;  // not injective
    hit[it->second] = 1;
    image[v] = it->second;
  }
  if (image[t.root] != g.root_vertex) return false;

  std::set<std::pair<size_t, size_t>> gamma_edges(g.edges.begin(), g.edges.end());
  size_t tree_edges = 0;
  for (size_t v = 0; v < t.nodes.size(); ++v)
    for (size_t c : t.nodes[v].children) {
      ++tree_edges;
      auto e = std::minmax(image[v], image[c]);
      if (!gamma_edges.count({e.first, e.second})) return false;
    }
  return tree_edges == g.edges.size();
}

struct GammaEdgeComparison {
  size_t metric_edges;  // |E(Gamma_X)|
  size_t ultra_edges;   // |E(Gamma_Y)|
  bool verdict;         // equality holds iff X is ultrametric
};

/// Edge comparison for a metric space x against an ultrametric space y with
/// the same number of balls.
inline GammaEdgeComparison compare_gamma_edges(const Space& x, const Space& y) {
  if (y.kind() != Kind::Ultrametric)
    throw precondition_error("compare_gamma_edges: second space must be ultrametric");
  if (x.kind() == Kind::Invalid)
    throw precondition_error("compare_gamma_edges: first space is not metric");
  GammaGraph gx = gamma_graph(x);
  GammaGraph gy = gamma_graph(y);
  if (gx.vertices.size() != gy.vertices.size())
    throw precondition_error("compare_gamma_edges: ball counts differ (" +
                             std::to_string(gx.vertices.size()) + " vs " +
                             std::to_string(gy.vertices.size()) + ")");
  GammaEdgeComparison r;
  r.metric_edges = gx.edges.size();
  r.ultra_edges = gy.edges.size();
  if (r.metric_edges < r.ultra_edges)
    throw invariant_error("compare_gamma_edges: edge inequality violated");
  r.verdict = (r.metric_edges == r.ultra_edges) == (x.kind() == Kind::Ultrametric);
  return r;
}

}  // namespace ultra
