#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "space.hpp"

namespace ultra {

struct ReprNode {
  Dist label;                         // 0 iff leaf
  std::vector<size_t> children;       // node ids, ordered by smallest contained point
  std::optional<size_t> leaf_point;   // set iff leaf
  size_t level = 0;                   // root is 0
  std::vector<size_t> leaf_set;       // point ids under this node, ascending
};

/// Labeled rooted tree of a finite ultrametric space: inner nodes are the
/// recursive diametrical-graph blocks labeled by block diameter, leaves are
/// single points. Leaf ids index into point_names.
struct ReprTree {
  std::vector<ReprNode> nodes;
  size_t root = 0;
  std::vector<std::string> point_names;

  const ReprNode& node(size_t id) const { return nodes[id]; }
  size_t size() const { return nodes.size(); }
  bool is_leaf(size_t id) const { return nodes[id].leaf_point.has_value(); }
  size_t leaf_count() const { return point_names.size(); }
};

// Recomputes levels and leaf sets from root/children structure. Call after
// assembling a tree by hand; build_tree and random_tree do it themselves.
inline void finalize_tree(ReprTree& t) {
  if (t.nodes.empty()) throw precondition_error("finalize_tree: empty tree");
  if (t.root >= t.nodes.size()) throw precondition_error("finalize_tree: bad root id");
  // iterative post-order for leaf sets, pre-order for levels
  std::vector<std::pair<size_t, bool>> stack{{t.root, false}};
  t.nodes[t.root].level = 0;
  std::vector<char> seen(t.nodes.size(), 0);
  while (!stack.empty()) {
    auto [id, done] = stack.back();
    stack.pop_back();
    ReprNode& nd = t.nodes[id];
    if (done) {
      nd.leaf_set.clear();
      if (nd.leaf_point) {
        nd.leaf_set.push_back(*nd.leaf_point);
      } else {
        for (size_t c : nd.children) {
          const auto& cs = t.nodes[c].leaf_set;
          nd.leaf_set.insert(nd.leaf_set.end(), cs.begin(), cs.end());
        }
        std::sort(nd.leaf_set.begin(), nd.leaf_set.end());
      }
      continue;
    }
    if (seen[id]) throw precondition_error("finalize_tree: node " + std::to_string(id) +
                                           " reached twice; not a tree");
    seen[id] = 1;
    stack.push_back({id, true});
    for (size_t c : nd.children) {
      if (c >= t.nodes.size())
        throw precondition_error("finalize_tree: bad child id at node " + std::to_string(id));
      t.nodes[c].level = nd.level + 1;
      stack.push_back({c, false});
    }
  }
}

// Validates every structural invariant: reachability, leaf <=> label 0 <=>
// carries a point, inner nodes have >= 2 children, strict label decrease,
// levels consistent, leaves in bijection with point_names.
inline void check_tree(const ReprTree& t) {
  if (t.nodes.empty()) throw precondition_error("check_tree: empty tree");
  if (t.root >= t.nodes.size()) throw precondition_error("check_tree: bad root id");
  if (t.nodes[t.root].level != 0)
    throw precondition_error("check_tree: root level is not 0");
  std::vector<char> reached(t.nodes.size(), 0);
  std::vector<char> leaf_used(t.point_names.size(), 0);
  size_t visited = 0;
  std::vector<size_t> stack{t.root};
  while (!stack.empty()) {
    size_t id = stack.back();
    stack.pop_back();
    if (reached[id])
      throw precondition_error("check_tree: node " + std::to_string(id) + " reached twice");
    reached[id] = 1;
    ++visited;
    const ReprNode& nd = t.nodes[id];
    const bool leaf = nd.leaf_point.has_value();
    if (leaf != nd.children.empty())
      throw precondition_error("check_tree: node " + std::to_string(id) +
                               " mixes leaf point and children");
    if (leaf != nd.label.is_zero())
      throw precondition_error("check_tree: node " + std::to_string(id) +
                               " label/leaf mismatch (leaf iff label 0)");
    if (leaf) {
      if (*nd.leaf_point >= t.point_names.size())
        throw precondition_error("check_tree: node " + std::to_string(id) +
                                 " references unknown point");
      if (leaf_used[*nd.leaf_point])
        throw precondition_error("check_tree: point repeated at node " + std::to_string(id));
      leaf_used[*nd.leaf_point] = 1;
    } else {
      if (nd.children.size() < 2)
        throw precondition_error("check_tree: inner node " + std::to_string(id) +
                                 " has fewer than 2 children");
      for (size_t c : nd.children) {
        if (c >= t.nodes.size())
          throw precondition_error("check_tree: bad child id at node " + std::to_string(id));
        if (t.nodes[c].label >= nd.label)
          throw precondition_error("check_tree: label does not strictly decrease at node " +
                                   std::to_string(c));
        if (t.nodes[c].level != nd.level + 1)
          throw precondition_error("check_tree: level mismatch at node " + std::to_string(c));
        stack.push_back(c);
      }
    }
  }
  if (visited != t.nodes.size())
    throw precondition_error("check_tree: unreachable nodes present");
  for (size_t p = 0; p < leaf_used.size(); ++p)
    if (!leaf_used[p])
      throw precondition_error("check_tree: point '" + t.point_names[p] + "' has no leaf");
}

inline ReprTree build_tree(const Space& s) {
  if (s.kind() != Kind::Ultrametric) {
    std::string msg = "build_tree: space is not ultrametric";
    if (const Triple* w = s.validation().witness())
      msg += " (witness: '" + s.point_name(w->a) + "', '" + s.point_name(w->b) + "', '" +
             s.point_name(w->c) + "')";
    throw precondition_error(msg);
  }
  ReprTree t;
  t.point_names = s.points();
  // recursive split; children blocks already come ordered by smallest point id
  auto build = [&](auto&& self, const std::vector<size_t>& pts, size_t level) -> size_t {
    const size_t id = t.nodes.size();
    t.nodes.emplace_back();
    t.nodes[id].level = level;
    if (pts.size() == 1) {
      t.nodes[id].label = Dist(0);
      t.nodes[id].leaf_point = pts.front();
      t.nodes[id].leaf_set = pts;
      return id;
    }
    LevelGraph part = diametrical_partition(s, pts);
    t.nodes[id].label = part.level;
    t.nodes[id].leaf_set = pts;
    for (const auto& block : *part.partition) {
      size_t child = self(self, block, level + 1);
      t.nodes[id].children.push_back(child);
    }
    return id;
  };
  std::vector<size_t> all(s.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::sort(all.begin(), all.end());
  t.root = build(build, all, 0);
  return t;
}

inline std::vector<size_t> tree_parents(const ReprTree& t) {
  std::vector<size_t> parent(t.nodes.size(), t.root);
  for (size_t id = 0; id < t.nodes.size(); ++id)
    for (size_t c : t.nodes[id].children) parent[c] = id;
  return parent;
}

inline std::vector<size_t> leaf_nodes_by_point(const ReprTree& t) {
  std::vector<size_t> leaf_of(t.point_names.size(), t.nodes.size());
  for (size_t id = 0; id < t.nodes.size(); ++id)
    if (t.nodes[id].leaf_point) leaf_of[*t.nodes[id].leaf_point] = id;
  return leaf_of;
}

// Maximum label along the leaf-to-leaf path; with strictly decreasing labels
// this is the label of the lowest common ancestor.
inline Dist recover_distance(const ReprTree& t, size_t a, size_t b) {
  if (a >= t.point_names.size() || b >= t.point_names.size())
    throw precondition_error("recover_distance: unknown point");
  if (a == b) return Dist(0);
  const auto parent = tree_parents(t);
  const auto leaf_of = leaf_nodes_by_point(t);
  size_t u = leaf_of[a], v = leaf_of[b];
  Dist best(0);
  while (u != v) {
    if (t.nodes[u].level >= t.nodes[v].level) {
      u = parent[u];
      best = std::max(best, t.nodes[u].label);
    } else {
      v = parent[v];
      best = std::max(best, t.nodes[v].label);
    }
  }
  return best;
}

inline Space space_from_tree(const ReprTree& t) {
  check_tree(t);
  const size_t n = t.point_names.size();
  std::vector<std::vector<Dist>> table(n, std::vector<Dist>(n, Dist(0)));
  for (const ReprNode& nd : t.nodes) {
    if (nd.leaf_point) continue;
    for (size_t i = 0; i < nd.children.size(); ++i)
      for (size_t j = i + 1; j < nd.children.size(); ++j)
        for (size_t p : t.nodes[nd.children[i]].leaf_set)
          for (size_t q : t.nodes[nd.children[j]].leaf_set)
            table[p][q] = table[q][p] = nd.label;
  }
  Space s(t.point_names, table);
  if (s.kind() != Kind::Ultrametric)
    throw invariant_error("space_from_tree: produced a non-ultrametric table");
  return s;
}

namespace detail {

inline void subtree_codes(const ReprTree& t, size_t id, std::vector<std::string>& out) {
  const ReprNode& nd = t.nodes[id];
  std::vector<std::string> kids;
  for (size_t c : nd.children) {
    subtree_codes(t, c, out);
    kids.push_back(out[c]);
  }
  std::sort(kids.begin(), kids.end());
  std::string code = "(" + nd.label.str() + ":";
  for (auto& k : kids) code += k;
  code += ")";
  out[id] = std::move(code);
}

}  // namespace detail

// Per-node canonical codes; nodes with equal codes root isomorphic labeled
// subtrees (bottom-up sort of child codes, labels in lowest terms).
inline std::vector<std::string> canonical_codes(const ReprTree& t) {
  std::vector<std::string> codes(t.nodes.size());
  detail::subtree_codes(t, t.root, codes);
  return codes;
}

inline std::string canonical_code(const ReprTree& t) {
  return canonical_codes(t)[t.root];
}

namespace detail {

// Shape-only code: labels ignored, used for unlabeled rooted-tree isomorphism.
inline std::string shape_code(const ReprTree& t, size_t id) {
  std::vector<std::string> kids;
  for (size_t c : t.nodes[id].children) kids.push_back(shape_code(t, c));
  std::sort(kids.begin(), kids.end());
  std::string code = "(";
  for (auto& k : kids) code += k;
  code += ")";
  return code;
}

}  // namespace detail

inline std::string canonical_shape_code(const ReprTree& t) {
  return detail::shape_code(t, t.root);
}

namespace detail {

// Fills map[point of tx under vx] = point of ty under vy for two subtrees
// with equal canonical codes: equal-code sibling groups are zipped in
// canonical order, leaves pair left-to-right.
inline void match_subtrees(const ReprTree& tx, const std::vector<std::string>& cx, size_t vx,
                           const ReprTree& ty, const std::vector<std::string>& cy, size_t vy,
                           std::vector<size_t>& map) {
  const ReprNode& nx = tx.nodes[vx];
  const ReprNode& ny = ty.nodes[vy];
  if (nx.leaf_point) {
    map[*nx.leaf_point] = *ny.leaf_point;
    return;
  }
  std::vector<size_t> xs = nx.children, ys = ny.children;
  auto by_code_x = [&](size_t a, size_t b) { return cx[a] < cx[b]; };
  auto by_code_y = [&](size_t a, size_t b) { return cy[a] < cy[b]; };
  std::stable_sort(xs.begin(), xs.end(), by_code_x);
  std::stable_sort(ys.begin(), ys.end(), by_code_y);
  for (size_t i = 0; i < xs.size(); ++i)
    match_subtrees(tx, cx, xs[i], ty, cy, ys[i], map);
}

}  // namespace detail

struct IsometryCheck {
  bool isometric = false;
  std::optional<std::vector<size_t>> witness;  // point of x -> point of y
};

/// Decides isometry by canonical-code equality of the representing trees and,
/// when isometric, assembles one witness bijection.
inline IsometryCheck isometric(const Space& x, const Space& y) {
  if (x.kind() != Kind::Ultrametric || y.kind() != Kind::Ultrametric)
    throw precondition_error("isometric: both spaces must be ultrametric");
  ReprTree tx = build_tree(x), ty = build_tree(y);
  auto cx = canonical_codes(tx), cy = canonical_codes(ty);
  if (cx[tx.root] != cy[ty.root]) return {};
  std::vector<size_t> map(x.size());
  detail::match_subtrees(tx, cx, tx.root, ty, cy, ty.root, map);
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = i + 1; j < x.size(); ++j)
      if (x.dist(i, j) != y.dist(map[i], map[j]))
        throw invariant_error("isometric: assembled witness does not preserve distances");
  return {true, std::move(map)};
}

struct RandomTreeOptions {
  size_t max_children = 0;  // 0 = unbounded
  bool chain = false;       // binary chain shape with pairwise distinct labels
};

/// Deterministic-in-seed generator of valid representing trees. Labels are
/// drawn from the pool so that every child label falls strictly below its
/// parent's; chain mode emits the one-inner-node-per-level binary shape.
inline ReprTree random_tree(size_t leaf_count, std::vector<Dist> label_pool, uint64_t seed,
                            const RandomTreeOptions& opts = {}) {
  if (leaf_count < 1) throw precondition_error("random_tree: need at least one leaf");
  std::sort(label_pool.begin(), label_pool.end());
  label_pool.erase(std::unique(label_pool.begin(), label_pool.end()), label_pool.end());
  if (leaf_count > 1) {
    if (label_pool.empty() || label_pool.front().is_zero())
      throw precondition_error("random_tree: label pool must be nonempty and positive");
  }

  ReprTree t;
  for (size_t i = 0; i < leaf_count; ++i) t.point_names.push_back("x" + std::to_string(i + 1));
  if (leaf_count == 1) {
    t.nodes.push_back(ReprNode{Dist(0), {}, 0, 0, {0}});
    t.root = 0;
    return t;
  }

  std::mt19937_64 rng(seed);
  size_t next_point = 0;

  if (opts.chain) {
    if (label_pool.size() < leaf_count - 1)
      throw precondition_error("random_tree: label pool too shallow for a chain of " +
                               std::to_string(leaf_count) + " leaves");
    // pick leaf_count-1 distinct labels, descending down the chain
    std::vector<Dist> labels = label_pool;
    for (size_t i = labels.size(); i > 1; --i) std::swap(labels[i - 1], labels[rng() % i]);
    labels.resize(leaf_count - 1);
    std::sort(labels.begin(), labels.end(), std::greater<>());
    auto make_leaf = [&](size_t level) {
      size_t id = t.nodes.size();
      t.nodes.push_back(ReprNode{Dist(0), {}, next_point, level, {next_point}});
      ++next_point;
      return id;
    };
    size_t parent = t.nodes.size();
    t.nodes.push_back(ReprNode{labels[0], {}, std::nullopt, 0, {}});
    t.root = parent;
    for (size_t k = 0; k + 1 < leaf_count - 1; ++k) {
      size_t leaf = make_leaf(k + 1);
      size_t inner = t.nodes.size();
      t.nodes.push_back(ReprNode{labels[k + 1], {}, std::nullopt, k + 1, {}});
      t.nodes[parent].children = {leaf, inner};
      parent = inner;
    }
    size_t a = make_leaf(leaf_count - 1);
    size_t b = make_leaf(leaf_count - 1);
    t.nodes[parent].children = {a, b};
    finalize_tree(t);
    check_tree(t);
    return t;
  }

  auto build = [&](auto&& self, size_t m, std::span<const Dist> avail, size_t level) -> size_t {
    if (m == 1) {
      size_t id = t.nodes.size();
      t.nodes.push_back(ReprNode{Dist(0), {}, next_point, level, {next_point}});
      ++next_point;
      return id;
    }
    if (avail.empty())
      throw precondition_error("random_tree: label pool too shallow for requested depth");
    const Dist label = avail[rng() % avail.size()];
    auto below_end = std::lower_bound(avail.begin(), avail.end(), label);
    std::span<const Dist> below(avail.begin(), below_end);

    size_t k;
    const size_t max_k = opts.max_children == 0 ? m : std::min(m, opts.max_children);
    if (below.empty()) {
      if (m > max_k)
        throw precondition_error("random_tree: label pool too shallow for requested branching");
      k = m;  // all children must be leaves
    } else {
      if (max_k < 2)
        throw precondition_error("random_tree: max_children must allow 2 children");
      k = 2 + rng() % (max_k - 1);
    }
    // random composition of m into k positive parts
    std::vector<size_t> cuts;
    {
      std::vector<size_t> all(m - 1);
      for (size_t i = 0; i < all.size(); ++i) all[i] = i + 1;
      for (size_t i = all.size(); i > 1; --i) std::swap(all[i - 1], all[rng() % i]);
      cuts.assign(all.begin(), all.begin() + (k - 1));
      cuts.push_back(0);
      cuts.push_back(m);
      std::sort(cuts.begin(), cuts.end());
    }
    size_t id = t.nodes.size();
    t.nodes.push_back(ReprNode{label, {}, std::nullopt, level, {}});
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      size_t part = cuts[i + 1] - cuts[i];
      size_t child = self(self, part, below, level + 1);
      t.nodes[id].children.push_back(child);
    }
    return id;
  };
  t.root = build(build, leaf_count, label_pool, 0);
  finalize_tree(t);
  check_tree(t);
  return t;
}

}  // namespace ultra
