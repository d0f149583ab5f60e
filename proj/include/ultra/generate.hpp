#pragma once

#include <random>
#include <string>
#include <vector>

#include "repr_tree.hpp"
#include "space.hpp"

namespace ultra {

enum class GenKind { MaxRigidChain, RandomTree, RandomMetricNonUltra };

inline GenKind parse_gen_kind(std::string_view name) {
  if (name == "chain") return GenKind::MaxRigidChain;
  if (name == "tree") return GenKind::RandomTree;
  if (name == "metric") return GenKind::RandomMetricNonUltra;
  throw input_error("unknown generator kind '" + std::string(name) +
                    "' (expected chain, tree or metric)");
}

namespace detail {

inline std::vector<Dist> label_pool_for(size_t n, std::mt19937_64& rng) {
  // distinct positive values, a few non-integers in the mix
  std::vector<Dist> pool;
  for (size_t i = 1; i <= n + 2; ++i) {
    if (rng() % 4 == 0)
      pool.push_back(Dist(Rat(BigInt(2 * i - 1), BigInt(2))));
    else
      pool.push_back(Dist(static_cast<int>(i)));
  }
  return pool;
}

}  // namespace detail

/// Seed-deterministic space generators used by tests and the CLI:
///   chain  - maximally rigid spaces (binary chain trees, distinct labels)
///   tree   - arbitrary ultrametric spaces via random representing trees
///   metric - metric but never ultrametric (shortest-path closure of a random
///            table, resampled until the strong inequality fails somewhere)
inline Space generate_space(GenKind kind, size_t n, uint64_t seed) {
  if (n < 1) throw precondition_error("generate_space: need n >= 1");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  switch (kind) {
    case GenKind::MaxRigidChain: {
      std::vector<Dist> pool;
      for (size_t i = 1; i <= 3 * n + 1; ++i) pool.push_back(Dist(static_cast<int>(i)));
      return space_from_tree(random_tree(n, pool, rng(), {.chain = true}));
    }
    case GenKind::RandomTree: {
      auto pool = detail::label_pool_for(n, rng);
      return space_from_tree(random_tree(n, pool, rng()));
    }
    case GenKind::RandomMetricNonUltra: {
      if (n < 3)
        throw precondition_error("generate_space: non-ultrametric metric needs n >= 3");
      for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<std::vector<Dist>> table(n, std::vector<Dist>(n, Dist(0)));
        std::vector<std::vector<Rat>> w(n, std::vector<Rat>(n, Rat(0)));
        for (size_t i = 0; i < n; ++i)
          for (size_t j = i + 1; j < n; ++j) w[i][j] = w[j][i] = Rat(1 + rng() % 9);
        // shortest-path closure repairs any triangle violations
        for (size_t k = 0; k < n; ++k)
          for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
              if (i == j || i == k || j == k) continue;
              const Rat via(w[i][k] + w[k][j]);
              if (via < w[i][j]) w[i][j] = via;
            }
        for (size_t i = 0; i < n; ++i)
          for (size_t j = 0; j < n; ++j)
            if (i != j) table[i][j] = Dist(w[i][j]);
        std::vector<std::string> names;
        for (size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
        Space s(names, table);
        if (s.kind() == Kind::Metric) return s;
      }
      throw precondition_error("generate_space: could not sample a non-ultrametric metric");
    }
  }
  throw input_error("generate_space: bad kind");
}

}  // namespace ultra
