#pragma once
// Exhaustive planarity oracle: tries every rotation system and checks Euler.
// Only usable on small graphs; independent of the Boost-based test.

#include <algorithm>
#include <optional>

#include "i2dp/planarity.hpp"

namespace oracle {

using i2dp::Graph;
using i2dp::RotationSystem;
using i2dp::Vertex;

/// nullopt when the number of rotation systems exceeds `cap`.
inline std::optional<bool> planar_by_enumeration(const Graph& g, double cap = 2e5) {
  const int n = static_cast<int>(g.order());
  double total = 1;
  RotationSystem rot(n);
  for (Vertex v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    rot[v].assign(nb.begin(), nb.end());
    for (int k = 2; k < static_cast<int>(nb.size()); ++k) total *= k;  // (d-1)! cyclic orders
  }
  if (total > cap) return std::nullopt;
  // odometer over the permutations of rot[v][1..]; rot[v][0] stays fixed
  for (;;) {
    if (i2dp::satisfies_euler(g, rot)) return true;
    Vertex v = 0;
    for (; v < n; ++v) {
      if (rot[v].size() >= 3 && std::next_permutation(rot[v].begin() + 1, rot[v].end())) break;
      if (rot[v].size() >= 3) std::sort(rot[v].begin() + 1, rot[v].end());
    }
    if (v == n) return false;
  }
}

}  // namespace oracle
