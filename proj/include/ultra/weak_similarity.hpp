#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "repr_tree.hpp"
#include "rigidity.hpp"
#include "space.hpp"

namespace ultra {

struct RankSpace {
  Space base;
  std::vector<std::pair<Dist, Dist>> ranks;  // positive spectrum value -> 1..k, ascending
};

namespace detail {

inline std::vector<std::pair<Dist, Dist>> rank_map(const Space& s) {
  std::vector<std::pair<Dist, Dist>> ranks;
  size_t next = 1;
  for (const Dist& d : s.spectrum())
    if (!d.is_zero()) ranks.push_back({d, Dist(static_cast<int>(next++))});
  return ranks;
}

}  // namespace detail

/// Replaces every distance by its ascending rank in the spectrum (0 stays 0).
/// The rank map is strictly increasing, so max comparisons survive and the
/// output is ultrametric with spectrum {0, 1, ..., k}.
inline Space rank_transform(const Space& s) {
  if (s.kind() != Kind::Ultrametric)
    throw precondition_error("rank_transform: space is not ultrametric");
  const auto ranks = detail::rank_map(s);
  auto rank_of = [&](const Dist& d) -> Dist {
    if (d.is_zero()) return Dist(0);
    auto it = std::lower_bound(ranks.begin(), ranks.end(), d,
                               [](const auto& p, const Dist& v) { return p.first < v; });
    return it->second;
  };
  std::vector<std::vector<Dist>> table(s.size(), std::vector<Dist>(s.size(), Dist(0)));
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = 0; j < s.size(); ++j) table[i][j] = rank_of(s.dist(i, j));
  Space out(s.points(), table);
  if (out.kind() != Kind::Ultrametric)
    throw invariant_error("rank_transform: rank table is not ultrametric");
  return out;
}

inline RankSpace rank_space(const Space& s) {
  return RankSpace{s, detail::rank_map(s)};
}

struct WeakSimilarity {
  bool similar = false;
  std::optional<std::vector<size_t>> point_map;                 // x point -> y point
  std::optional<std::vector<std::pair<Dist, Dist>>> value_map;  // Sp(X) -> Sp(Y), ascending
};

/// Weak similarity of finite ultrametric spaces: the value bijection is
/// forced to be the sorted-spectra alignment, so the decision reduces to
/// isometry of the rank transforms.
inline WeakSimilarity weakly_similar(const Space& x, const Space& y) {
  if (x.kind() != Kind::Ultrametric || y.kind() != Kind::Ultrametric)
    throw precondition_error("weakly_similar: both spaces must be ultrametric");
  if (x.spectrum().size() != y.spectrum().size()) return {};
  IsometryCheck iso = isometric(rank_transform(x), rank_transform(y));
  if (!iso.isometric) return {};

  WeakSimilarity out;
  out.similar = true;
  out.point_map = *iso.witness;
  std::vector<std::pair<Dist, Dist>> f;
  for (size_t i = 0; i < x.spectrum().size(); ++i)
    f.push_back({x.spectrum()[i], y.spectrum()[i]});
  out.value_map = std::move(f);

  const auto& phi = *out.point_map;
  const auto& fmap = *out.value_map;
  auto apply_f = [&](const Dist& d) {
    auto it = std::lower_bound(fmap.begin(), fmap.end(), d,
                               [](const auto& p, const Dist& v) { return p.first < v; });
    return it->second;
  };
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = i + 1; j < x.size(); ++j)
      if (apply_f(x.dist(i, j)) != y.dist(phi[i], phi[j]))
        throw invariant_error("weakly_similar: witness fails the defining identity");
  return out;
}

/// Weak similarity carries maximal rigidity across.
inline bool weak_similarity_preserves_max_rigidity(const Space& x, const Space& y) {
  if (!is_max_rigid(x).max_rigid)
    throw precondition_error(
        "weak_similarity_preserves_max_rigidity: first space is not maximally rigid");
  if (y.kind() != Kind::Ultrametric)
    throw precondition_error(
        "weak_similarity_preserves_max_rigidity: second space is not ultrametric");
  if (!weakly_similar(x, y).similar)
    throw precondition_error(
        "weak_similarity_preserves_max_rigidity: spaces are not weakly similar");
  if (!is_max_rigid(y).max_rigid)
    throw invariant_error(
        "weak_similarity_preserves_max_rigidity: rigidity not preserved");
  return true;
}

struct ClassSizeCriterion {
  bool weakly_similar;
  bool trees_isomorphic;  // unlabeled rooted trees
  bool sizes_equal;
};

/// For two maximally rigid spaces, weak similarity, unlabeled tree
/// isomorphism and size equality are one condition; computed independently
/// and checked for agreement.
inline ClassSizeCriterion max_rigid_class_criterion(const Space& x, const Space& y) {
  if (!is_max_rigid(x).max_rigid || !is_max_rigid(y).max_rigid)
    throw precondition_error("max_rigid_class_criterion: both spaces must be maximally rigid");
  ClassSizeCriterion r;
  r.weakly_similar = weakly_similar(x, y).similar;
  r.trees_isomorphic =
      canonical_shape_code(build_tree(x)) == canonical_shape_code(build_tree(y));
  r.sizes_equal = x.size() == y.size();
  if (r.weakly_similar != r.trees_isomorphic || r.trees_isomorphic != r.sizes_equal)
    throw invariant_error("max_rigid_class_criterion: the three statements disagree");
  return r;
}

}  // namespace ultra
