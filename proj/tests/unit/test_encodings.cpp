#include "doctest.h"
#include "realg/catalogue.hpp"
#include "realg/encodings.hpp"
#include "realg/separators.hpp"
#include "support.hpp"

using namespace realg;
using support::share;

namespace {

Elem meet_where(const Structure& s, const std::function<bool(Elem)>& keep, const std::function<Elem(Elem)>& val) {
  Elem r = s.top();
  for (Elem c = 0; c < s.size(); ++c)
    if (keep(c)) r = s.meet(r, val(c));
  return r;
}

std::vector<StructurePtr> small_structures(Kind k, int nmax, std::size_t cap = 0) {
  std::vector<StructurePtr> out;
  for (const auto& L : enumerate_lattices_up_to(nmax))
    for (auto& s : enumerate_structures(k, share(L), cap)) out.push_back(share(std::move(s)));
  return out;
}

Separator top_only(const StructurePtr& s) { return generate_separator(s, ElemSet(s->size())); }

}  // namespace

TEST_CASE("application and abstraction match their defining meets") {
  for (Kind k : {Kind::Implicative, Kind::Disjunctive, Kind::Conjunctive})
    for (const auto& sp : small_structures(k, 3)) {
      const Structure& s = *sp;
      for (Elem a = 0; a < s.size(); ++a)
        for (Elem b = 0; b < s.size(); ++b) {
          if (k == Kind::Conjunctive) {
            Elem want = meet_where(
                s, [&](Elem c) { return s.leq(a, arrow_conjunctive(s, b, c)); },
                [&](Elem c) { return s.neg(s.neg(c)); });
            CHECK(app_conjunctive(s, a, b) == want);
          } else {
            Elem want = meet_where(s, [&](Elem c) { return s.leq(a, s.arrow(b, c)); }, [](Elem c) { return c; });
            CHECK(app_implicative(s, a, b) == want);
          }
        }
      auto id = abs_meet(s, [](Elem x) { return x; });
      CHECK(id == meet_where(s, [](Elem) { return true; }, [&](Elem x) { return s.arrow(x, x); }));
    }
}

TEST_CASE("identity and K in Boolean algebras") {
  auto b2 = boolean_implicative(1);
  CHECK(interpret_lambda(b2, lambda_I()) == b2.top());
  auto b4 = boolean_implicative(2);
  CHECK(interpret_lambda(b4, lambda_K()) == b4.top());
  CHECK(interpret_lambda(b4, lambda_S()) == b4.top());
  CHECK(app_implicative(b4, 1, 1) == 1);
  auto c4 = boolean_conjunctive(2);
  CHECK(interpret_lambda(c4, lambda_I()) == c4.top());
}

TEST_CASE("K and S equal their principal types") {
  for (const auto& sp : small_structures(Kind::Implicative, 3)) {
    const Structure& s = *sp;
    const int n = s.size();
    Elem k = s.top(), sv = s.top();
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        k = s.meet(k, s.arrow(a, s.arrow(b, a)));
        for (Elem c = 0; c < n; ++c)
          sv = s.meet(sv, s.arrow(s.arrow(a, s.arrow(b, c)), s.arrow(s.arrow(a, b), s.arrow(a, c))));
      }
    CHECK(interpret_lambda(s, lambda_K()) == k);
    CHECK(interpret_lambda(s, lambda_S()) == sv);
    CHECK(combinator(s, "K") == k);
    CHECK(combinator(s, "S") == sv);
  }
}

TEST_CASE("conjunctive application in the dummy and at bottom") {
  for (const auto& L : enumerate_lattices_up_to(4)) {
    auto d = dummy_conjunctive(share(L));
    for (Elem a = 0; a < d.size(); ++a)
      for (Elem b = 0; b < d.size(); ++b) CHECK(app_conjunctive(d, a, b) == d.top());
  }
  for (const auto& sp : small_structures(Kind::Conjunctive, 3)) {
    const Structure& c = *sp;
    Elem nn = c.top();
    for (Elem x = 0; x < c.size(); ++x) nn = c.meet(nn, c.neg(c.neg(x)));
    for (Elem b = 0; b < c.size(); ++b) CHECK(app_conjunctive(c, c.bottom(), b) == nn);
  }
}

TEST_CASE("lambda terms with open indices are rejected") {
  CHECK_FALSE(is_closed(lvar(0)));
  CHECK(is_closed(llam(lvar(0))));
  CHECK_THROWS_AS(interpret_lambda(boolean_implicative(1), lvar(0)), OpenTerm);
  CHECK(interpret_lambda(boolean_implicative(2), lapp(lambda_I(), lparam(2))) == 2);
}

TEST_CASE("named combinators on Boolean structures") {
  auto d = boolean_disjunctive(2);
  for (auto nm : {"PS1", "PS2", "PS3", "PS4", "PS5", "K", "S", "cc"}) CHECK(combinator(d, nm) == d.top());
  auto c = boolean_conjunctive(2);
  for (auto nm : {"TS1", "TS2", "TS3", "TS4", "TS5"}) CHECK(combinator(c, nm) == c.top());
  CHECK(combinator(boolean_implicative(1), "cc") == 1);
  CHECK_THROWS_AS(combinator(c, "PS1"), KindMismatch);
  CHECK_THROWS_AS(combinator(d, "TS1"), KindMismatch);
}

TEST_CASE("cc equals its meet formula") {
  for (const auto& sp : small_structures(Kind::Implicative, 3)) {
    const Structure& s = *sp;
    Elem want = s.top();
    for (Elem a = 0; a < s.size(); ++a)
      for (Elem b = 0; b < s.size(); ++b) want = s.meet(want, s.arrow(s.arrow(s.arrow(a, b), a), a));
    CHECK(combinator(s, "cc") == want);
  }
}

TEST_CASE("formula examples") {
  auto i4 = boolean_implicative(2);
  CHECK(interpret_formula(i4, fforall("X", farrow(fvar("X"), fvar("X")))) == 3);
  for (const auto& sp : small_structures(Kind::Conjunctive, 3)) {
    CHECK(interpret_formula(*sp, fexists("X", fvar("X"))) == sp->top());
  }
  auto dd = dummy_disjunctive(share(boolean_algebra(2).lattice));
  CHECK(interpret_formula(dd, fneg(fforall("X", fvar("X")))) == dd.bottom());
  CHECK_THROWS_AS(interpret_formula(i4, fvar("Y")), OpenTerm);
  CHECK_THROWS_AS(interpret_formula(i4, fpar(fparam(0), fparam(1))), KindMismatch);
  CHECK_THROWS_AS(interpret_formula(boolean_disjunctive(2), ftens(fparam(0), fparam(1))), KindMismatch);
  CHECK(interpret_formula(i4, fvar("Y"), {{"Y", 2}}) == 2);
}

TEST_CASE("formula substitution avoids capture") {
  auto f = fforall("Y", farrow(fvar("X"), fvar("Y")));
  auto g = subst_formula(f, "X", fvar("Y"));
  CHECK(free_type_vars(g) == std::set<std::string>{"Y"});
  CHECK_FALSE(alpha_equal(g, fforall("Y", farrow(fvar("Y"), fvar("Y")))));
  CHECK(alpha_equal(fforall("A", fvar("A")), fforall("B", fvar("B"))));
}

TEST_CASE("entailment examples") {
  auto b4 = share(boolean_disjunctive(2));
  auto S = top_only(b4);
  REQUIRE(S.members() == ElemSet(4, {3}));
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) CHECK(entails(S, a, b) == b4->leq(a, b));

  auto dc = share(dummy_conjunctive(share(chain(3))));
  Separator all(dc, ElemSet::full(3));
  for (Elem a = 0; a < 3; ++a)
    for (Elem b = 0; b < 3; ++b) {
      CHECK(entails(all, a, b));
      CHECK(entails_neg(all, a, b));
    }
  Separator tops(dc, ElemSet(3, {2}));
  for (Elem a = 0; a < 3; ++a)
    for (Elem b = 0; b < 3; ++b) CHECK(entails_neg(tops, a, b));

  auto c4 = share(boolean_conjunctive(2));
  auto T = top_only(c4);
  CHECK(entails_neg(T, 1, 2));
  CHECK_FALSE(entails_neg(T, 3, 3));
}

TEST_CASE("entailment is a preorder on catalogued algebras") {
  for (const auto& na : algebra_catalogue(4, 3, 2, 2)) {
    const auto& S = na.separator;
    const int n = S.structure().size();
    for (Elem a = 0; a < n; ++a) {
      CHECK(entails(S, a, a));
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (entails(S, a, b) && entails(S, b, c)) CHECK(entails(S, a, c));
    }
  }
}

TEST_CASE("Boolean connectives collapse to the lattice") {
  for (Kind k : {Kind::Implicative, Kind::Disjunctive, Kind::Conjunctive}) {
    auto s = share(k == Kind::Implicative ? boolean_implicative(2)
                   : k == Kind::Disjunctive ? boolean_disjunctive(2)
                                            : boolean_conjunctive(2));
    auto S = top_only(s);
    for (Elem a = 0; a < 4; ++a)
      for (Elem b = 0; b < 4; ++b) {
        auto h = heyting_ops(*s, a, b);
        CHECK(equivalent(S, h.product, a & b));
        CHECK(equivalent(S, h.sum, a | b));
        CHECK(equivalent(S, h.arrow, (3 ^ a) | b));
        CHECK(equivalent(S, h.negation, 3 ^ a));
      }
  }
}

TEST_CASE("connective entailments on catalogued algebras") {
  for (const auto& na : algebra_catalogue(4, 5, 2, 2)) {
    const auto& S = na.separator;
    const Structure& s = S.structure();
    const int n = s.size();
    if (s.kind() == Kind::Conjunctive && !S.classical()) continue;
    CAPTURE(na.name);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        auto h = heyting_ops(s, a, b);
        CHECK(entails(S, h.product, a));
        CHECK(entails(S, h.product, b));
        CHECK(entails(S, a, h.sum));
        CHECK(entails(S, b, h.sum));
        if (s.kind() == Kind::Disjunctive) {
          CHECK(entails(S, s.par(a, b), h.sum));
          CHECK(entails(S, h.sum, s.par(a, b)));
        }
        for (Elem c = 0; c < n; ++c) CHECK(entails(S, a, heyting_ops(s, b, c).arrow) == entails(S, heyting_ops(s, a, b).product, c));
      }
  }
}

TEST_CASE("double negation") {
  for (const auto& na : algebra_catalogue(4, 9, 2, 2)) {
    const auto& S = na.separator;
    const Structure& s = S.structure();
    if (s.kind() == Kind::Implicative) continue;
    if (s.kind() == Kind::Conjunctive && !S.classical()) continue;
    CAPTURE(na.name);
    for (Elem a = 0; a < s.size(); ++a) {
      CHECK(entails(S, s.neg(s.neg(a)), a));
      CHECK(entails(S, a, s.neg(s.neg(a))));
      if (s.kind() == Kind::Conjunctive) CHECK(equivalent(S, s.neg(a), arrow_conjunctive(s, a, s.bottom())));
    }
  }
}

TEST_CASE("diamond examples and adjunction") {
  for (const auto& L : enumerate_lattices_up_to(4)) {
    auto d = dummy_conjunctive(share(L));
    for (Elem a = 0; a < d.size(); ++a)
      for (Elem b = 0; b < d.size(); ++b) CHECK(diamond(d, a, b) == d.top());
  }
  auto c4 = boolean_conjunctive(2);
  CHECK(diamond(c4, 1, 2) == 3);
  CHECK(diamond(c4, 3, 3) == 0);
  for (const auto& sp : small_structures(Kind::Conjunctive, 4, 200)) {
    const Structure& c = *sp;
    for (Elem a = 0; a < c.size(); ++a)
      for (Elem b = 0; b < c.size(); ++b) {
        Elem d = diamond(c, a, b);
        for (Elem x = 0; x < c.size(); ++x) CHECK(c.leq(x, d) == c.leq(a, c.neg(c.tensor(b, x))));
      }
  }
}

TEST_CASE("combinator list") {
  auto names = combinator_names();
  CHECK(names.size() == 13);
  CHECK(names.front() == "K");
}
