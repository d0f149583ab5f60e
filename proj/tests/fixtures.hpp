#pragma once

#include <string>
#include <vector>

#include "ultra/space.hpp"

// The shared test spaces. Distance tables are spelled out so every expected
// value in the suites can be traced to a handful of explicit entries.

namespace fixtures {

using ultra::Dist;
using ultra::Space;

inline Space from_rows(std::vector<std::string> names,
                       const std::vector<std::vector<int>>& rows) {
  std::vector<std::vector<Dist>> table;
  for (const auto& row : rows) {
    std::vector<Dist> r;
    for (int v : row) r.push_back(Dist(v));
    table.push_back(std::move(r));
  }
  return Space(std::move(names), table);
}

// two points at distance 1
inline Space p2() { return from_rows({"a", "b"}, {{0, 1}, {1, 0}}); }

// equilateral triangle, side 1
inline Space e3() {
  return from_rows({"a", "b", "c"}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
}

inline Space equilateral(size_t n, int side) {
  std::vector<std::string> names;
  std::vector<std::vector<Dist>> table(n, std::vector<Dist>(n, Dist(side)));
  for (size_t i = 0; i < n; ++i) {
    names.push_back("q" + std::to_string(i + 1));
    table[i][i] = Dist(0);
  }
  return Space(std::move(names), table);
}

// binary-chain ultrametric on 4 points: the smallest maximally rigid shape
inline Space r4() {
  return from_rows({"p1", "p2", "p3", "p4"}, {{0, 3, 3, 3},
                                              {3, 0, 2, 2},
                                              {3, 2, 0, 1},
                                              {3, 2, 1, 0}});
}

// two tight pairs far apart: |Sp| = |X| = 4 yet not maximally rigid
inline Space f3() {
  return from_rows({"a", "b", "c", "d"}, {{0, 1, 4, 4},
                                          {1, 0, 4, 4},
                                          {4, 4, 0, 2},
                                          {4, 4, 2, 0}});
}

// metric but not ultrametric: 4 > max(2, 3)
inline Space nu3() {
  return from_rows({"x1", "x2", "x3"}, {{0, 4, 2}, {4, 0, 3}, {2, 3, 0}});
}

// ultrametric with 6 balls, the partner for nu3 in edge comparisons
inline Space u6() {
  return from_rows({"a", "b", "c", "d"}, {{0, 2, 2, 2},
                                          {2, 0, 2, 2},
                                          {2, 2, 0, 1},
                                          {2, 2, 1, 0}});
}

}  // namespace fixtures
