#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "realg/lattice.hpp"
#include "realg/separators.hpp"
#include "realg/structures.hpp"

namespace support {

using realg::Elem;

struct Rng {
  explicit Rng(std::uint64_t seed) : g(seed) {}
  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(g); }
  bool coin() { return below(2) == 1; }
  std::mt19937_64 g;
};

inline realg::LatticePtr share(realg::FiniteLattice L) {
  return std::make_shared<const realg::FiniteLattice>(std::move(L));
}
inline realg::StructurePtr share(realg::Structure s) {
  return std::make_shared<const realg::Structure>(std::move(s));
}

// Order-only oracles: greatest lower bound / least upper bound found by
// scanning the carrier, -1 if there is none.
inline Elem scan_meet(const std::vector<std::vector<bool>>& le, Elem a, Elem b) {
  const int n = static_cast<int>(le.size());
  for (Elem m = 0; m < n; ++m) {
    if (!le[m][a] || !le[m][b]) continue;
    bool greatest = true;
    for (Elem x = 0; x < n && greatest; ++x)
      if (le[x][a] && le[x][b] && !le[x][m]) greatest = false;
    if (greatest) return m;
  }
  return -1;
}
inline Elem scan_join(const std::vector<std::vector<bool>>& le, Elem a, Elem b) {
  const int n = static_cast<int>(le.size());
  for (Elem m = 0; m < n; ++m) {
    if (!le[a][m] || !le[b][m]) continue;
    bool least = true;
    for (Elem x = 0; x < n && least; ++x)
      if (le[a][x] && le[b][x] && !le[m][x]) least = false;
    if (least) return m;
  }
  return -1;
}

inline std::vector<std::vector<bool>> matrix(const realg::FiniteLattice& L) {
  std::vector<std::vector<bool>> m(L.size(), std::vector<bool>(L.size()));
  for (Elem a = 0; a < L.size(); ++a)
    for (Elem b = 0; b < L.size(); ++b) m[a][b] = L.leq(a, b);
  return m;
}

// Boolean algebra on k atoms with ids as bitmasks.
inline int bmask(int k) { return (1 << k) - 1; }

inline realg::ElemSet set_of(int n, std::initializer_list<Elem> xs) { return realg::ElemSet(n, xs); }

}  // namespace support
