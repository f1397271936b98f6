#include "doctest.h"
#include "realg/catalogue.hpp"
#include "realg/encodings.hpp"
#include "realg/separators.hpp"
#include "support.hpp"

using namespace realg;
using support::share;

namespace {

ElemSet mask_set(int n, unsigned mask) {
  ElemSet s(n);
  for (int i = 0; i < n; ++i)
    if (mask >> i & 1) s.insert(i);
  return s;
}

// Least separator as the intersection of every valid superset.
ElemSet least_by_search(const Structure& s, const ElemSet& gens, bool classical) {
  const int n = s.size();
  ElemSet acc = ElemSet::full(n);
  for (unsigned m = 0; m < (1u << n); ++m) {
    ElemSet c = mask_set(n, m);
    if (!gens.subset_of(c)) continue;
    if (!check_separator_report(s, c, classical).ok) continue;
    acc &= c;
  }
  return acc;
}

std::vector<StructurePtr> small(int nmax, std::size_t cap = 40) {
  std::vector<StructurePtr> out;
  for (const auto& L : enumerate_lattices_up_to(nmax))
    for (Kind k : {Kind::Implicative, Kind::Disjunctive, Kind::Conjunctive})
      for (auto& s : enumerate_structures(k, share(L), cap)) out.push_back(share(std::move(s)));
  return out;
}

}  // namespace

TEST_CASE("separator examples on Boolean B4") {
  auto d = share(boolean_disjunctive(2));
  auto top = check_separator(d, ElemSet(4, {3}));
  CHECK(top.size() == 1);
  CHECK(top.consistent());
  CHECK(top.classical());
  auto up_p = check_separator(d, ElemSet(4, {1, 3}));
  CHECK(up_p.size() == 2);

  auto r = check_separator_report(*d, ElemSet(4, {1}), false);
  CHECK_FALSE(r.ok);
  CHECK(r.axiom == "upward-closure");
  try {
    check_separator(d, ElemSet(4, {1}));
    FAIL("accepted");
  } catch (const ClauseViolation& e) {
    CHECK(e.clause() == "upward-closure");
  }
  // an up-closed set that is not a filter
  auto r2 = check_separator_report(*d, ElemSet(4, {1, 2, 3}), false);
  CHECK_FALSE(r2.ok);
  CHECK(r2.axiom == "modus-ponens");
}

TEST_CASE("generation examples") {
  auto i4 = share(boolean_implicative(2));
  CHECK(generate_separator(i4, ElemSet(4), true).members() == ElemSet(4, {3}));
  for (const auto& sp : small(3)) {
    auto g = generate_separator(sp, ElemSet(sp->size(), {sp->bottom()}));
    CHECK(g.members() == ElemSet::full(sp->size()));
    CHECK_FALSE(g.consistent());
  }
  auto dc = share(dummy_conjunctive(share(chain(2))));
  auto g = generate_separator(dc, ElemSet(2));
  CHECK(g.contains(1));
  for (auto nm : {"TS1", "TS2", "TS3", "TS4", "TS5"}) CHECK(combinator(*dc, nm) == 1);
}

TEST_CASE("generation is the least separator above the generators") {
  for (const auto& sp : small(4, 25)) {
    const int n = sp->size();
    for (unsigned g = 0; g < (1u << n); g += 3)
      for (bool cl : {false, true}) {
        ElemSet gens = mask_set(n, g);
        auto sep = generate_separator(sp, gens, cl);
        CHECK(check_separator_report(*sp, sep.members(), cl).ok);
        CHECK(sep.members() == least_by_search(*sp, gens, cl));
      }
  }
}

TEST_CASE("generation is monotone and idempotent") {
  support::Rng rng(11);
  auto cat = structure_catalogue(6, 2, 1, 2);
  for (int iter = 0; iter < 300; ++iter) {
    const auto& sp = cat[rng.below(static_cast<int>(cat.size()))].structure;
    const int n = sp->size();
    ElemSet a(n), b(n);
    for (Elem x = 0; x < n; ++x) {
      if (rng.below(5) == 0) a.insert(x);
      if (a.contains(x) || rng.below(5) == 0) b.insert(x);
    }
    bool cl = rng.coin();
    auto ga = generate_separator(sp, a, cl);
    auto gb = generate_separator(sp, b, cl);
    CHECK(ga.members().subset_of(gb.members()));
    CHECK(generate_separator(sp, ga.members(), cl).members() == ga.members());
  }
}

TEST_CASE("flags") {
  auto c4 = share(boolean_conjunctive(2));
  auto s = generate_separator(c4, ElemSet(4));
  CHECK(s.classical());
  CHECK(s.consistent());
  auto dc = share(dummy_conjunctive(share(chain(3))));
  // neg neg of anything is top, so only the full set is classical
  CHECK_FALSE(Separator(dc, ElemSet(3, {2})).classical());
  CHECK(Separator(dc, ElemSet::full(3)).classical());
}

TEST_CASE("Boolean separators are the filters") {
  for (int k = 0; k <= 3; ++k)
    for (Kind kd : {Kind::Implicative, Kind::Disjunctive, Kind::Conjunctive}) {
      auto s = share(kd == Kind::Implicative ? boolean_implicative(k)
                     : kd == Kind::Disjunctive ? boolean_disjunctive(k)
                                               : boolean_conjunctive(k));
      const int n = s->size();
      for (unsigned m = 0; m < (1u << n); ++m) {
        auto c = mask_set(n, m);
        CHECK(check_separator_report(*s, c, false).ok == is_filter(s->lattice(), c));
      }
    }
}

TEST_CASE("classical completion") {
  auto c4 = share(boolean_conjunctive(2));
  auto top = generate_separator(c4, ElemSet(4));
  CHECK(classical_completion(top).members() == top.members());

  for (const auto& L : enumerate_lattices_up_to(5)) {
    auto dc = share(dummy_conjunctive(share(L)));
    for (Elem a = 0; a < L.size(); ++a) {
      if (a == L.top()) continue;
      auto up = L.up_set(a);
      if (!check_separator_report(*dc, up, false).ok) continue;
      CHECK(classical_completion(Separator(dc, up)).members() == ElemSet::full(L.size()));
    }
  }
  for (const auto& na : algebra_catalogue(5, 4, 2, 2)) {
    if (na.separator.kind() != Kind::Conjunctive) continue;
    auto c1 = classical_completion(na.separator);
    CHECK(na.separator.members().subset_of(c1.members()));
    CHECK(c1.classical());
    CHECK(check_separator_report(c1.structure(), c1.members(), true).ok);
    CHECK(classical_completion(c1).members() == c1.members());
  }
  CHECK_THROWS_AS(classical_completion(generate_separator(share(boolean_disjunctive(1)), ElemSet(2))), KindMismatch);
}

TEST_CASE("indexed deduction") {
  auto d4 = share(boolean_disjunctive(2));
  auto S = generate_separator(d4, ElemSet(4));
  // singleton and constant families against plain modus ponens
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) {
      bool mp = !(S.contains(a) && S.contains(d4->arrow(a, b))) || S.contains(b);
      CHECK(indexed_deduction(S, {a}, {b}) == mp);
      CHECK(indexed_deduction(S, {a, a, a}, {b, b, b}) == mp);
    }
  // every pair of families over two indices
  for (Elem a0 = 0; a0 < 4; ++a0)
    for (Elem a1 = 0; a1 < 4; ++a1)
      for (Elem b0 = 0; b0 < 4; ++b0)
        for (Elem b1 = 0; b1 < 4; ++b1) CHECK(indexed_deduction(S, {a0, a1}, {b0, b1}));
  CHECK_THROWS(indexed_deduction(S, {0}, {0, 1}));
}

TEST_CASE("indexed deduction holds on catalogued algebras") {
  support::Rng rng(5);
  for (const auto& na : algebra_catalogue(5, 1, 2, 2)) {
    const int n = na.separator.structure().size();
    for (int t = 0; t < 40; ++t) {
      const int ni = 1 + rng.below(3);
      std::vector<Elem> a(ni), b(ni);
      for (int i = 0; i < ni; ++i) {
        a[i] = rng.below(n);
        b[i] = rng.below(n);
      }
      CHECK(indexed_deduction(na.separator, a, b));
    }
  }
}

TEST_CASE("lambda closure of separators") {
  for (const auto& na : algebra_catalogue(4, 8, 2, 2)) {
    const auto& S = na.separator;
    const Structure& s = S.structure();
    CAPTURE(na.name);
    if (s.kind() == Kind::Disjunctive) {
      for (auto nm : {"K", "S", "cc"}) CHECK(S.contains(combinator(s, nm)));
    }
    if (s.kind() == Kind::Conjunctive) {
      CHECK(S.contains(interpret_lambda(s, lambda_K())));
      CHECK(S.contains(interpret_lambda(s, lambda_S())));
      for (Elem a = 0; a < s.size(); ++a)
        for (Elem b = 0; b < s.size(); ++b) {
          if (S.contains(a) && S.contains(b)) CHECK(S.contains(app_conjunctive(s, a, b)));
          if (S.classical() && S.contains(a) && S.contains(arrow_conjunctive(s, a, b))) CHECK(S.contains(b));
        }
    }
  }
}

TEST_CASE("required combinators") {
  CHECK(required_combinators(Kind::Implicative, false).size() == 2);
  CHECK(required_combinators(Kind::Implicative, true).size() == 3);
  CHECK(required_combinators(Kind::Disjunctive, false).size() == 5);
  CHECK(required_combinators(Kind::Conjunctive, true).size() == 5);
}
