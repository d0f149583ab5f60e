#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "characterizations.hpp"
#include "rigidity.hpp"
#include "space.hpp"

// Exhaustive reference computations, deliberately independent of the
// tree-based implementations they gate. Everything here enumerates raw
// permutations or assignments and checks definitions directly against the
// distance table.

namespace ultra {

namespace detail {

inline void require_cap(size_t n, size_t cap, const char* op) {
  if (n > cap)
    throw precondition_error(std::string(op) + ": size " + std::to_string(n) +
                             " exceeds the brute-force cap " + std::to_string(cap));
}

inline bool preserves_distances(const Space& x, const Space& y,
                                const std::vector<size_t>& map) {
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = i + 1; j < x.size(); ++j)
      if (x.dist(i, j) != y.dist(map[i], map[j])) return false;
  return true;
}

}  // namespace detail

inline std::vector<Isometry> oracle_isometries(const Space& s, size_t cap = 8) {
  detail::require_cap(s.size(), cap, "oracle_isometries");
  std::vector<size_t> perm(s.size());
  std::iota(perm.begin(), perm.end(), size_t{0});
  std::vector<Isometry> found;
  do {
    if (detail::preserves_distances(s, s, perm)) found.emplace_back(s, perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return found;
}

inline size_t oracle_min_fixed_points(const Space& s, size_t cap = 8) {
  size_t best = s.size();
  for (const Isometry& g : oracle_isometries(s, cap))
    best = std::min(best, g.fixed_point_count());
  return best;
}

inline bool oracle_isometric(const Space& x, const Space& y, size_t cap = 8) {
  if (x.size() != y.size()) return false;
  detail::require_cap(x.size(), cap, "oracle_isometric");
  std::vector<size_t> perm(x.size());
  std::iota(perm.begin(), perm.end(), size_t{0});
  do {
    if (detail::preserves_distances(x, y, perm)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Definition-level weak similarity for arbitrary finite metric spaces: the
/// value bijection must be the sorted alignment, the point bijection is
/// searched exhaustively.
inline bool oracle_weak_similarity(const Space& x, const Space& y, size_t cap = 7) {
  if (x.size() != y.size()) return false;
  detail::require_cap(x.size(), cap, "oracle_weak_similarity");
  const auto& sx = x.spectrum();
  const auto& sy = y.spectrum();
  if (sx.size() != sy.size()) return false;
  auto f = [&](const Dist& d) {
    auto it = std::lower_bound(sx.begin(), sx.end(), d);
    return sy[static_cast<size_t>(it - sx.begin())];
  };
  std::vector<size_t> perm(x.size());
  std::iota(perm.begin(), perm.end(), size_t{0});
  do {
    bool ok = true;
    for (size_t i = 0; i < x.size() && ok; ++i)
      for (size_t j = i + 1; j < x.size() && ok; ++j)
        ok = f(x.dist(i, j)) == y.dist(perm[i], perm[j]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline std::vector<HamPath> oracle_decreasing_ham_paths(const Space& s, size_t cap = 8) {
  detail::require_cap(s.size(), cap, "oracle_decreasing_ham_paths");
  std::vector<size_t> perm(s.size());
  std::iota(perm.begin(), perm.end(), size_t{0});
  std::vector<HamPath> found;
  do {
    bool ok = true;
    for (size_t k = 0; k + 2 < perm.size() && ok; ++k)
      ok = s.dist(perm[k], perm[k + 1]) > s.dist(perm[k + 1], perm[k + 2]);
    if (ok) {
      HamPath p;
      p.points = perm;
      for (size_t k = 0; k + 1 < perm.size(); ++k)
        p.weights.push_back(s.dist(perm[k], perm[k + 1]));
      found.push_back(std::move(p));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return found;
}

inline std::vector<SpanningStar> oracle_distinct_weight_stars(const Space& s, size_t cap = 8) {
  detail::require_cap(s.size(), cap, "oracle_distinct_weight_stars");
  std::vector<SpanningStar> found;
  for (size_t center = 0; center < s.size(); ++center) {
    std::vector<std::pair<size_t, Dist>> rays;
    for (size_t p = 0; p < s.size(); ++p)
      if (p != center) rays.push_back({p, s.dist(center, p)});
    std::sort(rays.begin(), rays.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    bool distinct = true;
    for (size_t i = 0; i + 1 < rays.size(); ++i)
      if (rays[i].second == rays[i + 1].second) distinct = false;
    if (distinct) found.push_back({center, std::move(rays)});
  }
  return found;
}

/// Every ultrametric completion of a weighted star over a candidate grid of
/// small rationals (the ray weights and their halves), found by backtracking
/// over leaf pairs with incremental strong-triangle pruning.
inline std::vector<Space> oracle_star_completions(
    const std::vector<std::pair<std::string, Dist>>& rays, const std::string& center,
    size_t cap = 6) {
  detail::require_cap(rays.size(), cap, "oracle_star_completions");
  if (rays.empty()) throw precondition_error("oracle_star_completions: no rays");

  std::vector<Dist> candidates;
  for (const auto& [name, w] : rays) {
    candidates.push_back(w);
    candidates.push_back(w.half());
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const size_t m = rays.size();
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) pairs.push_back({i, j});

  std::vector<std::vector<Dist>> leaf(m, std::vector<Dist>(m, Dist(0)));
  std::vector<std::vector<char>> have(m, std::vector<char>(m, 0));
  auto strong_ok = [](const Dist& a, const Dist& b, const Dist& c) {
    return a <= std::max(b, c) && b <= std::max(a, c) && c <= std::max(a, b);
  };

  std::vector<Space> completions;
  auto emit = [&]() {
    std::vector<std::string> names{center};
    for (const auto& [name, w] : rays) names.push_back(name);
    std::vector<std::vector<Dist>> table(m + 1, std::vector<Dist>(m + 1, Dist(0)));
    for (size_t i = 0; i < m; ++i) {
      table[0][i + 1] = table[i + 1][0] = rays[i].second;
      for (size_t j = i + 1; j < m; ++j) table[i + 1][j + 1] = table[j + 1][i + 1] = leaf[i][j];
    }
    Space s(names, table);
    if (s.kind() == Kind::Ultrametric) completions.push_back(std::move(s));
  };

  auto search = [&](auto&& self, size_t at) -> void {
    if (at == pairs.size()) {
      emit();
      return;
    }
    auto [i, j] = pairs[at];
    for (const Dist& v : candidates) {
      // triple with the center prunes most choices immediately
      if (!strong_ok(rays[i].second, rays[j].second, v)) continue;
      bool ok = true;
      for (size_t k = 0; k < m && ok; ++k) {
        if (k == i || k == j) continue;
        if (have[std::min(i, k)][std::max(i, k)] && have[std::min(j, k)][std::max(j, k)])
          ok = strong_ok(leaf[std::min(i, k)][std::max(i, k)],
                         leaf[std::min(j, k)][std::max(j, k)], v);
      }
      if (!ok) continue;
      leaf[i][j] = v;
      have[i][j] = 1;
      self(self, at + 1);
      have[i][j] = 0;
    }
  };
  search(search, 0);
  return completions;
}

}  // namespace ultra
