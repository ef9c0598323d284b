#pragma once

// Hand-built reference posets and small helpers shared by the test binaries.
// These are constructed independently of the library's interval machinery so
// they can serve as oracles for it.

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bruhat/poset.hpp"

namespace testutil {

// Subset lattice of an n-set, ids = bitmasks, ranks = popcount.
inline bruhat::poset::GradedPoset boolean_lattice(int n) {
  int size = 1 << n;
  std::vector<int> ranks(size);
  std::vector<std::string> labels(size);
  std::vector<std::pair<int, int>> covers;
  for (int m = 0; m < size; ++m) {
    ranks[m] = __builtin_popcount(static_cast<unsigned>(m));
    std::string l = "{";
    for (int i = 0; i < n; ++i)
      if (m >> i & 1) {
        if (l.size() > 1) l += ",";
        l += std::to_string(i + 1);
      }
    labels[m] = l + "}";
    for (int i = 0; i < n; ++i)
      if (!(m >> i & 1)) covers.emplace_back(m, m | 1 << i);
  }
  return bruhat::poset::GradedPoset(std::move(ranks), std::move(covers), std::move(labels));
}

// Face lattice of an m-gon: bottom, m vertices, m edges, top. m = 2 gives the
// digon (two vertices joined by two edges).
inline bruhat::poset::GradedPoset polygon_face_lattice(int m) {
  int size = 2 * m + 2;
  std::vector<int> ranks(size);
  std::vector<std::string> labels(size);
  std::vector<std::pair<int, int>> covers;
  int bottom = 0, top = size - 1;
  ranks[bottom] = 0;
  labels[bottom] = "0";
  ranks[top] = 3;
  labels[top] = "1";
  auto vertex = [](int i) { return 1 + i; };
  auto edge = [&](int i) { return 1 + m + i; };
  for (int i = 0; i < m; ++i) {
    ranks[vertex(i)] = 1;
    labels[vertex(i)] = "v" + std::to_string(i);
    ranks[edge(i)] = 2;
    labels[edge(i)] = "e" + std::to_string(i);
    covers.emplace_back(bottom, vertex(i));
    covers.emplace_back(edge(i), top);
    // edge i joins vertices i and i+1 (mod m)
    covers.emplace_back(vertex(i), edge(i));
    covers.emplace_back(vertex((i + 1) % m), edge(i));
  }
  return bruhat::poset::GradedPoset(std::move(ranks), std::move(covers), std::move(labels));
}

// A pool of small Eulerian posets to draw random product factors from.
inline std::vector<bruhat::poset::GradedPoset> eulerian_factor_pool() {
  std::vector<bruhat::poset::GradedPoset> pool;
  for (int n = 1; n <= 3; ++n) pool.push_back(boolean_lattice(n));
  for (int m = 2; m <= 6; ++m) pool.push_back(polygon_face_lattice(m));
  return pool;
}

}  // namespace testutil
