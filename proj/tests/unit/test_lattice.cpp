#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "realg/lattice.hpp"
#include "support.hpp"

using namespace realg;
using support::scan_join;
using support::scan_meet;

namespace {

// Lattices on n points up to isomorphism, by filtering every relation.
std::size_t brute_lattice_count(int n) {
  std::vector<std::pair<int, int>> off;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) off.emplace_back(a, b);
  std::set<std::uint64_t> seen;
  std::vector<int> perm(n);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << off.size()); ++bits) {
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a) le[a][a] = true;
    for (std::size_t i = 0; i < off.size(); ++i)
      if (bits >> i & 1) le[off[i].first][off[i].second] = true;
    bool po = true;
    for (int a = 0; a < n && po; ++a)
      for (int b = 0; b < n && po; ++b) {
        if (a != b && le[a][b] && le[b][a]) po = false;
        for (int c = 0; c < n && po; ++c)
          if (le[a][b] && le[b][c] && !le[a][c]) po = false;
      }
    if (!po) continue;
    bool lat = true;
    for (int a = 0; a < n && lat; ++a)
      for (int b = 0; b < n && lat; ++b)
        if (scan_meet(le, a, b) < 0 || scan_join(le, a, b) < 0) lat = false;
    if (!lat) continue;
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = ~std::uint64_t{0};
    do {
      std::uint64_t code = 0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) code = code << 1 | (le[perm[a]][perm[b]] ? 1 : 0);
      best = std::min(best, code);
    } while (std::next_permutation(perm.begin(), perm.end()));
    seen.insert(best);
  }
  return seen.size();
}

std::vector<std::vector<bool>> rel(int n, std::vector<std::pair<int, int>> lt) {
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a) le[a][a] = true;
  for (auto [a, b] : lt) le[a][b] = true;
  return le;
}

}  // namespace

TEST_CASE("two-chain validates") {
  auto L = validate_lattice(rel(2, {{0, 1}}));
  CHECK(L.size() == 2);
  CHECK(L.bottom() == 0);
  CHECK(L.top() == 1);
  CHECK(L == chain(2));
}

TEST_CASE("antisymmetry violation is reported with its pair") {
  auto le = rel(3, {{0, 1}, {1, 0}, {0, 2}, {1, 2}});
  try {
    validate_lattice(le);
    FAIL("accepted a preorder");
  } catch (const LatticeError& e) {
    CHECK(e.code == LatticeError::Code::NotAPartialOrder);
    CHECK(e.axiom == "antisymmetry");
    REQUIRE(e.witness.size() == 2);
    CHECK(((e.witness[0] == 0 && e.witness[1] == 1) || (e.witness[0] == 1 && e.witness[1] == 0)));
  }
}

TEST_CASE("N-poset is not a lattice") {
  // 0<2, 1<2, 1<3: two maximal elements, no top.
  auto le = rel(4, {{0, 2}, {1, 2}, {1, 3}});
  bool missing = false;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (scan_join(le, a, b) < 0) missing = true;
  REQUIRE(missing);
  try {
    validate_lattice(le);
    FAIL("accepted the N-poset");
  } catch (const LatticeError& e) {
    CHECK(e.code == LatticeError::Code::NotALattice);
  }
}

TEST_CASE("non-transitive relation is rejected") {
  CHECK_THROWS_AS(validate_lattice(rel(3, {{0, 1}, {1, 2}})), LatticeError);
  // the closure of the same pairs is fine
  CHECK(lattice_from_pairs(3, {{0, 1}, {1, 2}}) == chain(3));
}

TEST_CASE("empty relation is rejected") {
  try {
    validate_lattice({});
    FAIL("accepted empty carrier");
  } catch (const LatticeError& e) {
    CHECK(e.code == LatticeError::Code::Empty);
  }
}

TEST_CASE("meets and joins of sets in B4") {
  auto B = boolean_algebra(2);
  const auto& L = B.lattice;
  CHECK(L.meet(ElemSet(4)) == 3);
  CHECK(L.join(ElemSet(4)) == 0);
  CHECK(L.meet(ElemSet(4, {1, 2})) == 0);
  CHECK(L.join(ElemSet(4, {1, 2})) == 3);
  auto c = chain(2);
  CHECK(c.join(ElemSet(2, {0, 1})) == 1);
}

TEST_CASE("binary operations agree with order scans") {
  for (int n = 1; n <= 6; ++n)
    for (const auto& L : enumerate_lattices(n)) {
      auto le = support::matrix(L);
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
          CHECK(L.meet(a, b) == scan_meet(le, a, b));
          CHECK(L.join(a, b) == scan_join(le, a, b));
        }
    }
}

TEST_CASE("boolean algebras") {
  auto b0 = boolean_algebra(0);
  CHECK(b0.lattice.size() == 1);
  CHECK(b0.lattice.top() == b0.lattice.bottom());

  auto b1 = boolean_algebra(1);
  CHECK(b1.lattice == chain(2));
  CHECK(b1.complement[b1.lattice.bottom()] == b1.lattice.top());

  auto b2 = boolean_algebra(2);
  CHECK(b2.complement[1] == 2);
  CHECK(b2.complement[2] == 1);

  for (int k = 0; k <= 5; ++k) {
    auto b = boolean_algebra(k);
    const int n = 1 << k;
    REQUIRE(b.lattice.size() == n);
    for (Elem a = 0; a < n; ++a) {
      CHECK(b.complement[a] == (n - 1 - a));
      for (Elem c = 0; c < n; ++c) {
        CHECK(b.lattice.leq(a, c) == ((a & ~c) == 0));
        CHECK(b.lattice.meet(a, c) == (a & c));
        CHECK(b.lattice.join(a, c) == (a | c));
      }
    }
    CHECK(b.lattice.distributive());
  }
}

TEST_CASE("boolean algebra above the carrier bound") {
  set_max_carrier(16);
  try {
    boolean_algebra(5);
    FAIL("no TooLarge");
  } catch (const LatticeError& e) {
    CHECK(e.code == LatticeError::Code::TooLarge);
  }
  set_max_carrier(64);
}

TEST_CASE("lattice enumeration counts") {
  CHECK(enumerate_lattices(1).size() == 1);
  CHECK(enumerate_lattices(2).size() == 1);
  for (int n = 3; n <= 5; ++n) {
    CAPTURE(n);
    CHECK(enumerate_lattices(n).size() == brute_lattice_count(n));
  }
  std::size_t total = 0;
  for (int n = 1; n <= 5; ++n) total += enumerate_lattices(n).size();
  CHECK(enumerate_lattices_up_to(5).size() == total);
}

TEST_CASE("enumerated lattices are pairwise non-isomorphic") {
  auto v = enumerate_lattices(5);
  std::set<std::vector<int>> sig;
  for (const auto& L : v) {
    // sorted (down-set size, up-set size) pairs are an invariant
    std::vector<int> s;
    for (Elem a = 0; a < L.size(); ++a) s.push_back(L.down_set(a).count() * 16 + L.up_set(a).count());
    std::sort(s.begin(), s.end());
    sig.insert(s);
  }
  CHECK(sig.size() == v.size());
}

TEST_CASE("reversal and covers") {
  auto B = boolean_algebra(2).lattice;
  auto R = B.reversed();
  CHECK(R.top() == B.bottom());
  CHECK(R.bottom() == B.top());
  CHECK(R.reversed() == B);
  auto cv = B.covers();
  std::vector<std::pair<Elem, Elem>> want{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  CHECK(cv == want);
  CHECK(lattice_from_pairs(4, cv) == B);
}

TEST_CASE("labels and lookup") {
  auto L = lattice_from_pairs(3, {{0, 1}, {1, 2}}, {"bot", "mid", "top"});
  CHECK(L.find("mid") == 1);
  CHECK(L.find("2") == 2);
  CHECK(L.find("nope") == -1);
  CHECK(L.find("7") == -1);
}

TEST_CASE("up and down sets") {
  auto B = boolean_algebra(2).lattice;
  CHECK(B.up_set(1) == ElemSet(4, {1, 3}));
  CHECK(B.down_set(1) == ElemSet(4, {0, 1}));
  CHECK(B.up_closure(ElemSet(4, {1, 2})) == ElemSet(4, {1, 2, 3}));
}

TEST_CASE("distributivity detection") {
  int nondist = 0;
  for (const auto& L : enumerate_lattices(5)) {
    bool brute = true;
    for (Elem a = 0; a < 5; ++a)
      for (Elem b = 0; b < 5; ++b)
        for (Elem c = 0; c < 5; ++c)
          if (L.meet(a, L.join(b, c)) != L.join(L.meet(a, b), L.meet(a, c))) brute = false;
    CHECK(L.distributive() == brute);
    nondist += !brute;
  }
  CHECK(nondist == 2);  // M3 and N5
}
