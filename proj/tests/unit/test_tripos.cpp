#include <map>

#include "doctest.h"
#include "realg/catalogue.hpp"
#include "realg/encodings.hpp"
#include "realg/tripos.hpp"
#include "support.hpp"

using namespace realg;
using support::share;

namespace {

Separator top_sep(Structure s) {
  auto p = share(std::move(s));
  return generate_separator(p, ElemSet(p->size()));
}

// S[I] straight from its definition.
bool uniform_by_definition(const Separator& S, const Family& a) {
  const Structure& s = S.structure();
  for (Elem x = 0; x < s.size(); ++x) {
    if (!S.contains(x)) continue;
    bool below = true;
    for (Elem ai : a)
      if (!s.leq(x, ai)) below = false;
    if (below) return true;
  }
  return false;
}

int brute_classes(const Separator& S) {
  const int n = S.structure().size();
  std::vector<int> cls(n, -1);
  int k = 0;
  for (Elem a = 0; a < n; ++a) {
    if (cls[a] >= 0) continue;
    for (Elem b = a; b < n; ++b)
      if (equivalent(S, a, b)) cls[b] = k;
    ++k;
  }
  return k;
}

std::vector<Separator> tripos_pool() {
  std::vector<Separator> out;
  for (const auto& na : algebra_catalogue(4, 21, 1, 1)) {
    if (na.separator.kind() == Kind::Conjunctive && !na.separator.classical()) continue;
    out.push_back(na.separator);
  }
  return out;
}

}  // namespace

TEST_CASE("quotient examples") {
  auto S = top_sep(boolean_implicative(2));
  auto q = quotient(S);
  CHECK(q.classes == 4);
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) CHECK(q.leq(q.class_of[a], q.class_of[b]) == S.structure().leq(a, b));

  for (const auto& na : algebra_catalogue(4, 1, 1, 1)) {
    const auto& sp = na.separator.structure_ptr();
    Separator full(sp, ElemSet::full(sp->size()));
    CHECK(quotient(full).classes == 1);
  }
}

TEST_CASE("quotient class counts agree with pairwise entailment") {
  for (const auto& S : tripos_pool()) {
    auto q = quotient(S);
    CHECK(q.classes == brute_classes(S));
    CHECK(check_heyting(S, q).ok);
    for (int c = 0; c < q.classes; ++c)
      for (Elem m : q.members[c]) CHECK(equivalent(S, m, q.rep(c)));
  }
  auto dc = share(dummy_conjunctive(share(boolean_algebra(2).lattice)));
  auto g = generate_separator(dc, ElemSet(4), true);
  CHECK(quotient(g).classes == brute_classes(g));
}

TEST_CASE("uniform membership") {
  auto S = top_sep(boolean_implicative(2));
  FiniteTripos t(S);
  CHECK(t.uniform_member({3, 3, 3}));
  CHECK(t.uniform_member({}));
  CHECK_FALSE(t.uniform_member({1, 2}));
  CHECK_FALSE(t.product_member({1, 2}));
  for (const auto& Sp : tripos_pool()) {
    FiniteTripos tp(Sp);
    for (int ni = 0; ni <= 2; ++ni)
      for (const auto& a : all_families(Sp.structure().size(), ni)) {
        bool u = uniform_by_definition(Sp, a);
        CHECK(tp.uniform_member(a) == u);
        CHECK(tp.uniform_member_fast(a) == u);
        if (u) CHECK(tp.product_member(a));
      }
  }
}

TEST_CASE("families and maps are enumerated in full") {
  CHECK(all_families(3, 0).size() == 1);
  CHECK(all_families(3, 2).size() == 9);
  CHECK(all_families(4, 3).size() == 64);
  CHECK(all_maps(2, 3).size() == 9);
  CHECK(all_maps(0, 3).size() == 1);
  CHECK(all_maps(2, 0).empty());
}

TEST_CASE("reindexing") {
  support::Rng rng(3);
  for (const auto& S : tripos_pool()) {
    FiniteTripos t(S);
    const int n = t.size();
    for (const auto& a : all_families(n, 2)) {
      CHECK(t.reindex({0, 1}, a) == a);
      CHECK(t.reindex({1, 1, 1}, a) == Family(3, a[1]));
    }
    for (int it = 0; it < 20; ++it) {
      const int ni = 1 + rng.below(3), nj = 1 + rng.below(3), nk = 1 + rng.below(3);
      IndexMap f(nj), g(nk);
      for (auto& x : f) x = rng.below(ni);
      for (auto& x : g) x = rng.below(nj);
      IndexMap fg(nk);
      for (int k = 0; k < nk; ++k) fg[k] = f[g[k]];
      Family a(ni);
      for (auto& x : a) x = rng.below(n);
      CHECK(t.reindex(g, t.reindex(f, a)) == t.reindex(fg, a));
      // well defined on classes
      CHECK(t.canonical(t.reindex(f, a)) == t.canonical(t.reindex(f, t.canonical(a))));
    }
  }
}

TEST_CASE("quantifier examples") {
  for (const auto& S : tripos_pool()) {
    FiniteTripos t(S);
    const int n = t.size();
    for (const auto& a : all_families(n, 2)) {
      CHECK(t.equivalent(t.exists_along(a, 2, 1), a));
      CHECK(t.equivalent(t.forall_along(a, 2, 1), a));
      Family wide = t.weaken(a, 2);
      CHECK(t.equivalent(t.exists_along(wide, 2, 2), a));
      CHECK(t.equivalent(t.forall_along(wide, 2, 2), a));
    }
  }
}

TEST_CASE("Boolean adjunction tables by brute force") {
  auto S = top_sep(boolean_implicative(2));
  FiniteTripos t(S);
  const auto& s = S.structure();
  int pairs = 0;
  for (const auto& phi : all_families(4, 4))
    for (const auto& psi : all_families(4, 2)) {
      // order is pointwise in a Boolean algebra with S = {top}
      bool lhs = true, rhs_e = true, lhs_f = true, rhs_f = true;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          lhs = lhs && s.leq(phi[i * 2 + j], psi[i]);
          lhs_f = lhs_f && s.leq(psi[i], phi[i * 2 + j]);
        }
      auto ex = t.exists_along(phi, 2, 2);
      auto fa = t.forall_along(phi, 2, 2);
      for (int i = 0; i < 2; ++i) {
        CHECK(ex[i] == (phi[i * 2] | phi[i * 2 + 1]));
        CHECK(fa[i] == (phi[i * 2] & phi[i * 2 + 1]));
        rhs_e = rhs_e && s.leq(ex[i], psi[i]);
        rhs_f = rhs_f && s.leq(psi[i], fa[i]);
      }
      CHECK(lhs == rhs_e);
      CHECK(lhs_f == rhs_f);
      CHECK(t.entails(phi, t.weaken(psi, 2)) == t.entails(ex, psi));
      ++pairs;
    }
  CHECK(pairs == 256 * 16);
}

TEST_CASE("equality predicate") {
  auto S = top_sep(boolean_implicative(2));
  FiniteTripos t(S);
  CHECK(t.equality(2) == Family{3, 0, 0, 3});
  // the variant with bot -> top off the diagonal is top everywhere
  CHECK(t.equality_bot_top(2) == Family{3, 3, 3, 3});
  CHECK(check_equality(t, 2).ok);
  CHECK_FALSE(check_equality(t, 2, true).ok);
  CHECK(check_equality(t, 1).ok);
  for (const auto& Sp : tripos_pool()) {
    FiniteTripos tp(Sp);
    for (int ni = 0; ni <= 2; ++ni) CHECK(check_equality(tp, ni).ok);
  }
}

TEST_CASE("generic predicate") {
  for (const auto& S : tripos_pool()) {
    FiniteTripos t(S);
    CHECK(t.generic().size() == static_cast<std::size_t>(t.size()));
    for (int ni = 0; ni <= 2; ++ni) CHECK(check_generic_predicate(t, ni).ok);
    // the classifying map of a family pulls tr back to the family itself
    for (const auto& a : all_families(t.size(), 2)) CHECK(t.reindex(a, t.generic()) == a);
  }
}

TEST_CASE("Beck-Chevalley") {
  auto S = top_sep(boolean_implicative(1));
  FiniteTripos t(S);
  CHECK(check_beck_chevalley(t, {0, 1}, 2, 2).ok);
  CHECK(check_beck_chevalley(t, {0, 0, 0}, 1, 2).ok);
  support::Rng rng(9);
  for (const auto& Sp : tripos_pool()) {
    FiniteTripos tp(Sp);
    IndexMap s(3);
    for (auto& x : s) x = rng.below(2);
    CHECK(check_beck_chevalley(tp, s, 2, 2).ok);
  }
}

TEST_CASE("one-point index recovers the quotient") {
  for (const auto& S : tripos_pool()) {
    FiniteTripos t(S);
    auto q = quotient(S);
    std::map<Family, int> canon;
    for (Elem a = 0; a < t.size(); ++a) canon.emplace(t.canonical({a}), q.class_of[a]);
    CHECK(static_cast<int>(canon.size()) == q.classes);
    for (Elem a = 0; a < t.size(); ++a)
      for (Elem b = 0; b < t.size(); ++b) CHECK(t.entails({a}, {b}) == q.leq(q.class_of[a], q.class_of[b]));
  }
}

TEST_CASE("uniform separator sits inside the product") {
  for (const auto& S : tripos_pool()) {
    FiniteTripos t(S);
    for (int ni = 0; ni <= 3; ++ni)
      for (const auto& a : all_families(t.size(), ni))
        if (t.uniform_member(a)) CHECK(t.product_member(a));
  }
}

TEST_CASE("all hyperdoctrine clauses on small algebras") {
  for (const auto& S : tripos_pool()) {
    if (S.structure().size() > 3) continue;
    FiniteTripos t(S);
    for (const auto& c : check_tripos(t, 2)) {
      CAPTURE(c.clause);
      CAPTURE(c.witness);
      CHECK(c.ok);
    }
  }
}

TEST_CASE("non-classical conjunctive separators are refused") {
  auto dc = share(dummy_conjunctive(share(chain(3))));
  Separator s(dc, ElemSet(3, {2}));
  REQUIRE_FALSE(s.classical());
  CHECK_THROWS_AS(FiniteTripos{s}, std::invalid_argument);
}
