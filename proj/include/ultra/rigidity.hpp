#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "balls.hpp"
#include "repr_tree.hpp"
#include "space.hpp"

namespace ultra {

using GroupOrder = BigInt;

/// A self-bijection of the point set that preserves every distance; the
/// preservation check runs at construction.
class Isometry {
public:
  Isometry(const Space& s, std::vector<size_t> mapping) : map_(std::move(mapping)) {
    const size_t n = s.size();
    if (map_.size() != n) throw precondition_error("isometry: mapping size mismatch");
    std::vector<char> hit(n, 0);
    for (size_t v : map_) {
      if (v >= n || hit[v]) throw precondition_error("isometry: mapping is not a bijection");
      hit[v] = 1;
    }
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (s.dist(i, j) != s.dist(map_[i], map_[j]))
          throw precondition_error("isometry: distance not preserved between '" +
                                   s.point_name(i) + "' and '" + s.point_name(j) + "'");
  }

  static Isometry identity(const Space& s) {
    std::vector<size_t> id(s.size());
    std::iota(id.begin(), id.end(), size_t{0});
    return Isometry(s, std::move(id));
  }

  const std::vector<size_t>& mapping() const { return map_; }
  size_t operator()(size_t i) const { return map_[i]; }

  size_t fixed_point_count() const {
    size_t k = 0;
    for (size_t i = 0; i < map_.size(); ++i)
      if (map_[i] == i) ++k;
    return k;
  }

  bool is_identity() const { return fixed_point_count() == map_.size(); }

  friend bool operator==(const Isometry& a, const Isometry& b) { return a.map_ == b.map_; }
  friend bool operator<(const Isometry& a, const Isometry& b) { return a.map_ < b.map_; }

private:
  std::vector<size_t> map_;
};

struct IsoGroupOptions {
  GroupOrder full_list_cap = 10080;  // materialize all elements only below this
};

struct IsoGroup {
  GroupOrder order = 1;
  std::vector<Isometry> generators;
  std::vector<std::vector<size_t>> orbits;  // leaf orbits, blocks sorted by min point
  std::optional<std::vector<Isometry>> full_list;
};

namespace detail {

// Children of v grouped by canonical code, groups in code order, members in
// sibling order.
inline std::vector<std::vector<size_t>> code_classes(const ReprTree& t,
                                                     const std::vector<std::string>& codes,
                                                     size_t v) {
  std::map<std::string, std::vector<size_t>> groups;
  for (size_t c : t.nodes[v].children) groups[codes[c]].push_back(c);
  std::vector<std::vector<size_t>> out;
  for (auto& [code, members] : groups) out.push_back(std::move(members));
  return out;
}

inline GroupOrder factorial(size_t m) {
  GroupOrder f = 1;
  for (size_t i = 2; i <= m; ++i) f *= i;
  return f;
}

// order = prod over classes of m! * (member order)^m; generators are the
// adjacent equal-code sibling transpositions plus, recursively, the
// generators of the first member of each class.
inline void group_walk(const ReprTree& t, const std::vector<std::string>& codes, size_t v,
                       GroupOrder& order, std::vector<std::vector<size_t>>& gens,
                       size_t point_count) {
  if (t.nodes[v].leaf_point) return;
  for (const auto& members : code_classes(t, codes, v)) {
    const size_t m = members.size();
    GroupOrder member_order = 1;
    {
      GroupOrder sub = 1;
      std::vector<std::vector<size_t>> sub_gens;
      group_walk(t, codes, members.front(), sub, sub_gens, point_count);
      member_order = sub;
      for (auto& g : sub_gens) gens.push_back(std::move(g));
    }
    for (size_t i = 0; i < m; ++i) order *= member_order;
    order *= factorial(m);
    for (size_t i = 0; i + 1 < m; ++i) {
      std::vector<size_t> perm(point_count);
      std::iota(perm.begin(), perm.end(), size_t{0});
      match_subtrees(t, codes, members[i], t, codes, members[i + 1], perm);
      match_subtrees(t, codes, members[i + 1], t, codes, members[i], perm);
      gens.push_back(std::move(perm));
    }
  }
}

inline std::vector<std::vector<size_t>> orbits_of(size_t n,
                                                  const std::vector<std::vector<size_t>>& gens) {
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), size_t{0});
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : gens)
    for (size_t i = 0; i < n; ++i) parent[find(i)] = find(g[i]);
  std::map<size_t, std::vector<size_t>> blocks;
  for (size_t i = 0; i < n; ++i) blocks[find(i)].push_back(i);
  std::vector<std::vector<size_t>> out;
  for (auto& [root, pts] : blocks) out.push_back(std::move(pts));
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

}  // namespace detail

/// Isometry group computed from the representing tree: sibling subtrees with
/// equal canonical codes are interchangeable, nothing else moves.
inline IsoGroup isometry_group(const Space& s, const IsoGroupOptions& opts = {}) {
  if (s.kind() != Kind::Ultrametric)
    throw precondition_error("isometry_group: space is not ultrametric");
  const ReprTree t = build_tree(s);
  const auto codes = canonical_codes(t);

  IsoGroup g;
  std::vector<std::vector<size_t>> raw_gens;
  detail::group_walk(t, codes, t.root, g.order, raw_gens, s.size());
  for (auto& perm : raw_gens) g.generators.emplace_back(s, perm);
  g.orbits = detail::orbits_of(s.size(), raw_gens);

  if (g.order <= opts.full_list_cap) {
    std::set<std::vector<size_t>> closure;
    std::vector<size_t> id(s.size());
    std::iota(id.begin(), id.end(), size_t{0});
    closure.insert(id);
    std::vector<std::vector<size_t>> frontier{id};
    while (!frontier.empty()) {
      std::vector<std::vector<size_t>> next;
      for (const auto& p : frontier)
        for (const auto& q : raw_gens) {
          std::vector<size_t> pq(s.size());
          for (size_t i = 0; i < s.size(); ++i) pq[i] = q[p[i]];
          if (closure.insert(pq).second) next.push_back(std::move(pq));
        }
      frontier = std::move(next);
    }
    if (GroupOrder(closure.size()) != g.order)
      throw invariant_error("isometry_group: closure size " + std::to_string(closure.size()) +
                            " disagrees with computed order " + g.order.str());
    g.full_list.emplace();
    for (const auto& p : closure) g.full_list->emplace_back(s, p);
  }
  return g;
}

struct MinFixResult {
  size_t count;
  Isometry witness;
};

/// Minimum number of fixed points over the isometry group: the singleton leaf
/// orbits, witnessed by cyclically shifting every class of equal sibling
/// subtrees and recursing into classes of size one.
inline MinFixResult min_fixed_points(const Space& s) {
  if (s.kind() != Kind::Ultrametric)
    throw precondition_error("min_fixed_points: space is not ultrametric");
  const ReprTree t = build_tree(s);
  const auto codes = canonical_codes(t);

  std::vector<size_t> perm(s.size());
  std::iota(perm.begin(), perm.end(), size_t{0});
  auto walk = [&](auto&& self, size_t v) -> void {
    if (t.nodes[v].leaf_point) return;
    for (const auto& members : detail::code_classes(t, codes, v)) {
      if (members.size() == 1) {
        self(self, members.front());
      } else {
        for (size_t i = 0; i < members.size(); ++i)
          detail::match_subtrees(t, codes, members[i], t, codes,
                                 members[(i + 1) % members.size()], perm);
      }
    }
  };
  walk(walk, t.root);

  std::vector<std::vector<size_t>> raw_gens;
  GroupOrder order = 1;
  detail::group_walk(t, codes, t.root, order, raw_gens, s.size());
  size_t singles = 0;
  for (const auto& orbit : detail::orbits_of(s.size(), raw_gens))
    if (orbit.size() == 1) ++singles;

  Isometry witness(s, std::move(perm));
  if (witness.fixed_point_count() != singles)
    throw invariant_error("min_fixed_points: witness fixes " +
                          std::to_string(witness.fixed_point_count()) + " points, expected " +
                          std::to_string(singles));
  return {singles, std::move(witness)};
}

/// The explicit nonrigidity construction: a cyclic shift on the leaf set of a
/// deepest all-leaf inner node, identity elsewhere. Fixes |X| - |L_v| points.
inline Isometry nonrigid_witness(const Space& s) {
  if (s.kind() != Kind::Ultrametric)
    throw precondition_error("nonrigid_witness: space is not ultrametric");
  if (s.size() < 2) throw precondition_error("nonrigid_witness: need at least two points");
  const ReprTree t = build_tree(s);
  size_t best = t.nodes.size();
  for (size_t v = 0; v < t.nodes.size(); ++v) {
    if (t.nodes[v].leaf_point) continue;
    bool all_leaves = true;
    for (size_t c : t.nodes[v].children)
      if (!t.nodes[c].leaf_point) all_leaves = false;
    if (!all_leaves) continue;
    if (best == t.nodes.size() || t.nodes[v].level > t.nodes[best].level) best = v;
  }
  // best exists: a finite tree always has an all-leaf inner node
  const auto& cell = t.nodes[best].leaf_set;
  std::vector<size_t> perm(s.size());
  std::iota(perm.begin(), perm.end(), size_t{0});
  for (size_t i = 0; i < cell.size(); ++i) perm[cell[i]] = cell[(i + 1) % cell.size()];
  return Isometry(s, std::move(perm));
}

class glue_error : public precondition_error {
public:
  enum class Reason { Overlap, NotABall, NotPartialIsometry };
  glue_error(Reason r, const std::string& what) : precondition_error(what), reason_(r) {}
  Reason reason() const { return reason_; }

private:
  Reason reason_;
};

/// Extends disjoint partial self-isometries of balls by the identity; the
/// result is always a global isometry, verified against the table on return.
inline Isometry glue_partial_isometries(
    const Space& s, const std::vector<std::pair<Ball, std::vector<size_t>>>& parts) {
  const auto balls = enumerate_balls(s);
  std::vector<char> used(s.size(), 0);
  std::vector<size_t> perm(s.size());
  std::iota(perm.begin(), perm.end(), size_t{0});

  // map[k] is the image of ball[k]; the ball may be listed in any order
  for (const auto& [ball, map] : parts) {
    if (ball.empty())
      throw glue_error(glue_error::Reason::NotABall, "glue: empty set is not a ball");
    for (size_t p : ball)
      if (p >= s.size())
        throw glue_error(glue_error::Reason::NotABall, "glue: point index out of range");
    Ball sorted_ball = ball;
    std::sort(sorted_ball.begin(), sorted_ball.end());
    if (std::adjacent_find(sorted_ball.begin(), sorted_ball.end()) != sorted_ball.end())
      throw glue_error(glue_error::Reason::NotABall, "glue: repeated point in set");
    if (!std::binary_search(balls.begin(), balls.end(), sorted_ball, detail::BallOrder{}))
      throw glue_error(glue_error::Reason::NotABall, "glue: a given set is not a ball");
    for (size_t p : sorted_ball) {
      if (used[p])
        throw glue_error(glue_error::Reason::Overlap, "glue: balls overlap at '" +
                                                          s.point_name(p) + "'");
      used[p] = 1;
    }
    if (map.size() != ball.size())
      throw glue_error(glue_error::Reason::NotPartialIsometry,
                       "glue: mapping size does not match ball size");
    Ball image = map;
    std::sort(image.begin(), image.end());
    if (image != sorted_ball)
      throw glue_error(glue_error::Reason::NotPartialIsometry,
                       "glue: mapping is not a self-bijection of its ball");
    for (size_t i = 0; i < ball.size(); ++i)
      for (size_t j = i + 1; j < ball.size(); ++j)
        if (s.dist(ball[i], ball[j]) != s.dist(map[i], map[j]))
          throw glue_error(glue_error::Reason::NotPartialIsometry,
                           "glue: partial map does not preserve distances inside its ball");
    for (size_t i = 0; i < ball.size(); ++i) perm[ball[i]] = map[i];
  }
  return Isometry(s, std::move(perm));
}

struct RigidityReport {
  GroupOrder iso_order = 1;
  size_t min_fix = 0;
  bool max_rigid = false;  // every self-isometry fixes at least |X|-2 points
  bool crit_min_fix = false;
  bool crit_order = false;
  bool crit_tree_shape = false;
  std::optional<Isometry> min_fix_witness;
  std::vector<size_t> shape_chain;             // inner node ids, one per level, when shape holds
  std::optional<size_t> shape_violation_node;  // node breaking the shape otherwise
};

namespace detail {

// Shape test: strictly binary with at most one inner node per level. Together
// with connectivity this is exactly one inner node on every level but the
// deepest.
inline void scan_chain_shape(const ReprTree& t, RigidityReport& r) {
  std::map<size_t, std::vector<size_t>> inner_by_level;
  for (size_t v = 0; v < t.nodes.size(); ++v) {
    if (t.nodes[v].leaf_point) continue;
    if (t.nodes[v].children.size() != 2) {
      r.crit_tree_shape = false;
      r.shape_violation_node = v;
      return;
    }
    inner_by_level[t.nodes[v].level].push_back(v);
  }
  for (auto& [level, nodes] : inner_by_level) {
    if (nodes.size() > 1) {
      r.crit_tree_shape = false;
      r.shape_violation_node = nodes[1];
      return;
    }
  }
  r.crit_tree_shape = true;
  for (auto& [level, nodes] : inner_by_level) r.shape_chain.push_back(nodes.front());
}

}  // namespace detail

/// Evaluates the three equivalent maximal-rigidity criteria (minimum fixed
/// points |X|-2, group order 2, binary-chain tree shape) independently and
/// asserts their agreement.
inline RigidityReport is_max_rigid(const Space& s) {
  if (s.kind() != Kind::Ultrametric)
    throw precondition_error("is_max_rigid: space is not ultrametric");
  if (s.size() < 2) throw precondition_error("is_max_rigid: need at least two points");

  RigidityReport r;
  auto mf = min_fixed_points(s);
  r.min_fix = mf.count;
  r.min_fix_witness = std::move(mf.witness);
  r.crit_min_fix = r.min_fix == s.size() - 2;

  r.iso_order = isometry_group(s).order;
  r.crit_order = r.iso_order == 2;

  detail::scan_chain_shape(build_tree(s), r);

  if (r.crit_min_fix != r.crit_order || r.crit_order != r.crit_tree_shape)
    throw invariant_error("is_max_rigid: the three criteria disagree");
  r.max_rigid = r.crit_order;
  return r;
}

/// Every induced subspace of a maximally rigid space is maximally rigid;
/// checks all subsets exhaustively up to the cap, sampled deletion chains
/// beyond it.
inline bool hereditary_rigidity_check(const Space& s, size_t exhaustive_cap) {
  if (!is_max_rigid(s).max_rigid)
    throw precondition_error("hereditary_rigidity_check: space is not maximally rigid");
  const size_t n = s.size();
  if (n <= exhaustive_cap) {
    for (size_t mask = 1; mask < (size_t{1} << n); ++mask) {
      std::vector<size_t> subset;
      for (size_t i = 0; i < n; ++i)
        if (mask & (size_t{1} << i)) subset.push_back(i);
      if (subset.size() < 2) continue;
      if (!is_max_rigid(induced(s, subset)).max_rigid) return false;
    }
    return true;
  }
  std::mt19937_64 rng(0x5eedu);
  for (int chain = 0; chain < 8; ++chain) {
    std::vector<size_t> subset(n);
    std::iota(subset.begin(), subset.end(), size_t{0});
    while (subset.size() > 2) {
      subset.erase(subset.begin() + static_cast<long>(rng() % subset.size()));
      if (!is_max_rigid(induced(s, subset)).max_rigid) return false;
    }
  }
  return true;
}

/// Among ultrametric spaces of the same size, maximally rigid ones have the
/// largest spectrum (and attain |Sp| = |X|).
inline bool spectrum_maximality(const Space& max_rigid_space, const Space& comparison) {
  if (comparison.kind() != Kind::Ultrametric)
    throw precondition_error("spectrum_maximality: comparison space is not ultrametric");
  if (max_rigid_space.size() != comparison.size())
    throw precondition_error("spectrum_maximality: sizes differ");
  if (!is_max_rigid(max_rigid_space).max_rigid)
    throw precondition_error("spectrum_maximality: first space is not maximally rigid");
  if (max_rigid_space.spectrum().size() != max_rigid_space.size())
    throw invariant_error("spectrum_maximality: maximally rigid space misses |Sp| = |X|");
  if (comparison.spectrum().size() > max_rigid_space.spectrum().size())
    throw invariant_error("spectrum_maximality: comparison spectrum exceeds the maximum");
  return true;
}

}  // namespace ultra
