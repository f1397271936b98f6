#include <functional>

#include "doctest.h"
#include "realg/calculi.hpp"
#include "realg/corpus.hpp"
#include "support.hpp"

using namespace realg;
using support::share;

namespace {

const std::string fixtures = REALG_FIXTURE_DIR;

LTerm P(Polarity p, const std::string& src, Sort s = Sort::Command) { return parse_subject(p, s, src); }

std::vector<StructurePtr> pool(Kind k, int nmax) {
  std::vector<StructurePtr> out;
  for (const auto& L : enumerate_lattices_up_to(nmax))
    for (auto& s : enumerate_structures(k, share(L))) out.push_back(share(std::move(s)));
  return out;
}

// Binder values from their definitions, for a pole predicate `in` on the
// bound element(s).
Elem join_where(const Structure& s, const std::function<bool(Elem)>& in, const std::function<Elem(Elem)>& v) {
  Elem r = s.bottom();
  for (Elem a = 0; a < s.size(); ++a)
    if (in(a)) r = s.join(r, v(a));
  return r;
}
Elem meet_where(const Structure& s, const std::function<bool(Elem)>& in, const std::function<Elem(Elem)>& v) {
  Elem r = s.top();
  for (Elem a = 0; a < s.size(); ++a)
    if (in(a)) r = s.meet(r, v(a));
  return r;
}

}  // namespace

TEST_CASE("one-step reductions") {
  auto p = Polarity::Par;
  auto r1 = step(p, P(p, "(cmd (mubox x (cmd x a)) (box (par 1)))"));
  CHECK(alpha_equal(r1, P(p, "(cmd (par 1) a)")));

  auto t = Polarity::Tens;
  auto r2 = step(t, P(t, "(cmd (pair (par 0) (par 1)) (mupair x y (cmd y a)))"));
  CHECK(alpha_equal(r2, P(t, "(cmd (par 1) a)")));

  auto r3 = try_step(p, P(p, "(cmd y (pair (mut x (cmd x a)) b))"));
  REQUIRE(r3);
  CHECK(r3->rule == "expand");
  CHECK(alpha_equal(r3->next, P(p, "(cmd (mu p (cmd (mu q (cmd y (pair p q))) b)) (mut x (cmd x a)))")));
}

TEST_CASE("stuck commands") {
  auto p = Polarity::Par;
  auto c = P(p, "(cmd x a)");
  CHECK_FALSE(try_step(p, c));
  CHECK_THROWS_AS(step(p, c), Stuck);
  auto tr = normalize(p, c, 10);
  CHECK(tr.commands.size() == 1);
  CHECK_FALSE(tr.out_of_fuel);
}

TEST_CASE("fuel runs out on a looping command") {
  // omega under call-by-name
  auto p = Polarity::Par;
  auto w = P(p, "(lam x (app x x))", Sort::Term);
  auto tr = normalize(p, cmd(app(p, w, w), covar("a")), 30);
  CHECK(tr.out_of_fuel);
  CHECK(tr.commands.size() == 31);
}

TEST_CASE("fixture corpora") {
  for (Polarity p : {Polarity::Par, Polarity::Tens}) {
    auto c = load_corpus(fixtures + "/" + polarity_name(p) + ".sexp");
    CHECK(c.polarity == p);
    CHECK(c.steps.size() >= 20);
    for (const auto& f : c.steps) {
      CAPTURE(f.line);
      CHECK(check_step(p, f) == "");
    }
    for (const auto& f : c.laws) {
      CAPTURE(f.name);
      CHECK(check_law(p, f) == "");
    }
    for (const auto& j : c.judges) {
      CAPTURE(j.name);
      CHECK_NOTHROW(typecheck(p, j.seq));
    }
  }
}

TEST_CASE("a wrong step fixture is reported") {
  auto c = parse_corpus("(calculus par)\n(step mu (cmd (mu b (cmd y b)) a) (cmd y c))\n");
  REQUIRE(c.steps.size() == 1);
  CHECK(check_step(Polarity::Par, c.steps[0]) != "");
  CHECK_THROWS_AS(parse_corpus("(calculus par)\n(step mu (cmd"), ParseError);
}

TEST_CASE("typing") {
  auto p = Polarity::Par;
  TypedSequent ax{{{"x", fvar("A")}}, {}, var("x"), fvar("A")};
  CHECK(typecheck(p, ax).rule == "Ax_r");

  TypedSequent id{{}, {}, embed_cbn(lambda_I()), farrow(fvar("A"), fvar("A"))};
  auto d = typecheck(p, id);
  CHECK(d.size() > 1);

  TypedSequent bad{{{"x", fvar("A")}}, {{"a", fvar("B")}}, cmd(var("x"), covar("a")), nullptr};
  try {
    typecheck(p, bad);
    FAIL("accepted");
  } catch (const IllTyped& e) {
    CHECK(e.rule == "Cut");
  }
  CHECK(alpha_equal(expand_arrows(p, farrow(fvar("A"), fvar("B"))), fpar(fneg(fvar("A")), fvar("B"))));
}

TEST_CASE("lambda macros") {
  auto p = Polarity::Par;
  CHECK(alpha_equal(embed_cbn(lambda_I()), lam(p, "x", var("x"))));
  CHECK(alpha_equal(lam(p, "x", var("x")), P(p, "(mupair a b (cmd (mubox x (cmd x b)) a))", Sort::Term)));
  for (Polarity q : {Polarity::Par, Polarity::Tens}) {
    auto t = var("t"), u = var("u");
    auto expect = mu("k", cmd(t, stack(q, u, covar("k"))));
    CHECK(alpha_equal(app(q, t, u), expect));
  }
  CHECK(alpha_equal(stack(p, var("u"), covar("e")), pair(box(var("u")), covar("e"))));
}

TEST_CASE("identity applied to itself under call-by-value") {
  auto t = Polarity::Tens;
  auto ii = embed_cbv(lapp(lambda_I(), lambda_I()));
  auto tr = normalize(t, cmd(ii, covar("k")), 50);
  CHECK_FALSE(tr.out_of_fuel);
  const auto& last = tr.commands.back();
  CHECK(is_value(t, last->a));
  CHECK(alpha_equal(last->a, embed_cbv(lambda_I())));
}

TEST_CASE("embedding commutes with substitution") {
  // (\x. x y)[I/y] embeds to the substituted embedding
  Lambda body = llam(lapp(lvar(0), lvar(1)));
  Lambda closed = lapp(llam(body), lambda_I());
  for (Polarity p : {Polarity::Par, Polarity::Tens}) {
    auto e = p == Polarity::Par ? embed_cbn(closed) : embed_cbv(closed);
    CHECK(is_closed(e));
  }
}

TEST_CASE("capture-avoiding substitution") {
  auto p = Polarity::Par;
  auto s = subst_var(P(p, "(cmd z (mut x (cmd y a)))"), "y", var("x"));
  // the binder x must not capture the substituted x
  CHECK(free_names(s).count({'x', "x"}) == 1);
  auto s2 = subst_covar(P(p, "(cmd (mu a (cmd y b)) c)"), "b", covar("a"));
  CHECK(free_names(s2).count({'a', "a"}) == 1);
  CHECK(canonical(P(p, "(cmd (mu a (cmd y a)) b)")) == canonical(P(p, "(cmd (mu c (cmd y c)) b)")));
}

TEST_CASE("printing round-trips through the parser") {
  for (Polarity p : {Polarity::Par, Polarity::Tens})
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto c = random_command(p, seed, 3, 3);
      auto back = parse_subject(p, Sort::Command, to_string(c));
      CHECK(alpha_equal(c, back));
      CHECK(is_closed(c));
    }
}

TEST_CASE("reduction is deterministic on random commands") {
  for (Polarity p : {Polarity::Par, Polarity::Tens})
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      auto tr = normalize(p, random_command(p, seed, 3, 3), 20);
      for (const auto& c : tr.commands) {
        int fired = 0;
        if (try_step(p, c)) ++fired;
        CHECK(fired <= 1);
      }
    }
}

TEST_CASE("interpretation examples") {
  for (const auto& sp : pool(Kind::Disjunctive, 3)) {
    const Structure& s = *sp;
    auto p = Polarity::Par;
    for (Elem e = 0; e < s.size(); ++e) {
      CHECK(interpret(s, p, mut("x", cmd(var("x"), param_context(e)))) == e);
      CHECK(interpret(s, p, mu("a", cmd(param_term(e), covar("a")))) == e);
      CHECK(interpret(s, p, box(param_term(e))) == s.neg(e));
      for (Elem f = 0; f < s.size(); ++f)
        CHECK(interpret(s, p, pair(param_context(e), param_context(f))) == s.par(e, f));
    }
  }
  for (const auto& sp : pool(Kind::Conjunctive, 3)) {
    const Structure& s = *sp;
    auto p = Polarity::Tens;
    for (Elem e = 0; e < s.size(); ++e) {
      CHECK(interpret(s, p, mut("x", cmd(var("x"), param_context(e)))) == e);
      CHECK(interpret(s, p, mu("a", cmd(param_term(e), covar("a")))) == e);
      CHECK(interpret(s, p, box(param_context(e))) == s.neg(e));
    }
  }
  CHECK_THROWS_AS(interpret(boolean_conjunctive(1), Polarity::Par, param_term(0)), KindMismatch);
  CHECK_THROWS_AS(interpret(boolean_disjunctive(1), Polarity::Par, var("x")), OpenTerm);
}

TEST_CASE("binders match their defining joins and meets") {
  // bodies mention a free parameter element so that the pole predicate varies
  for (const auto& sp : pool(Kind::Disjunctive, 3)) {
    const Structure& s = *sp;
    auto p = Polarity::Par;
    for (Elem q = 0; q < s.size(); ++q) {
      auto in_t = [&](Elem a) { return s.leq(q, s.par(a, q)); };
      CHECK(interpret(s, p, mu("a", cmd(param_term(q), pair(covar("a"), param_context(q))))) ==
            meet_where(s, in_t, [](Elem a) { return a; }));
      auto in_x = [&](Elem a) { return s.leq(q, s.neg(a)); };
      CHECK(interpret(s, p, mut("x", cmd(param_term(q), box(var("x"))))) ==
            join_where(s, in_x, [](Elem a) { return a; }));
      CHECK(interpret(s, p, mubox(p, "x", cmd(param_term(q), box(var("x"))))) ==
            meet_where(s, in_x, [&](Elem a) { return s.neg(a); }));
      Elem want = s.top();
      for (Elem a = 0; a < s.size(); ++a)
        for (Elem b = 0; b < s.size(); ++b)
          if (s.leq(q, s.par(b, a))) want = s.meet(want, s.par(a, b));
      CHECK(interpret(s, p, mupair(p, "a", "b", cmd(param_term(q), pair(covar("b"), covar("a"))))) == want);
    }
  }
  for (const auto& sp : pool(Kind::Conjunctive, 3)) {
    const Structure& s = *sp;
    auto p = Polarity::Tens;
    for (Elem q = 0; q < s.size(); ++q) {
      auto in_x = [&](Elem a) { return s.leq(s.tensor(a, q), q); };
      CHECK(interpret(s, p, mubox(p, "a", cmd(box(covar("a")), param_context(q)))) ==
            join_where(s, [&](Elem a) { return s.leq(s.neg(a), q); }, [&](Elem a) { return s.neg(a); }));
      CHECK(interpret(s, p, mut("x", cmd(pair(var("x"), param_term(q)), param_context(q)))) ==
            join_where(s, in_x, [](Elem a) { return a; }));
      Elem want = s.bottom();
      for (Elem a = 0; a < s.size(); ++a)
        for (Elem b = 0; b < s.size(); ++b)
          if (s.leq(s.tensor(b, a), q)) want = s.join(want, s.tensor(a, b));
      CHECK(interpret(s, p, mupair(p, "x", "y", cmd(pair(var("y"), var("x")), param_context(q)))) == want);
    }
  }
}

TEST_CASE("binder beta and eta relations") {
  for (const auto& sp : pool(Kind::Disjunctive, 3)) {
    const Structure& s = *sp;
    auto p = Polarity::Par;
    for (Elem t = 0; t < s.size(); ++t) {
      // eta for pairs and boxes holds as an inequality
      CHECK(s.leq(t, interpret(s, p, mupair(p, "a", "b", cmd(param_term(t), pair(covar("a"), covar("b")))))));
      CHECK(s.leq(t, interpret(s, p, mubox(p, "x", cmd(param_term(t), box(var("x")))))));
      for (Elem e = 0; e < s.size(); ++e) {
        // beta: c(e) in the pole gives <mu a.c || e> in the pole
        auto body = cmd(param_term(t), pair(covar("a"), param_context(e)));
        auto m = interpret(s, p, mu("a", body));
        if (s.leq(t, s.par(e, e))) CHECK(s.leq(m, e));
        auto mx = interpret(s, p, mut("x", cmd(var("x"), pair(param_context(e), param_context(t)))));
        if (s.leq(t, s.par(e, t))) CHECK(s.leq(t, mx));
      }
    }
  }
}

TEST_CASE("binder variance over every pole predicate") {
  // mu-tilde is a join over the predicate and mu a meet: the join grows and
  // the meet shrinks as the predicate grows.
  for (const auto& sp : pool(Kind::Disjunctive, 3)) {
    const Structure& s = *sp;
    const int n = s.size();
    for (unsigned f = 0; f < (1u << n); ++f)
      for (unsigned g = f;; g = (g + 1) | f) {
        auto in_f = [&](Elem a) { return (f >> a & 1) != 0; };
        auto in_g = [&](Elem a) { return (g >> a & 1) != 0; };
        auto id = [](Elem a) { return a; };
        CHECK(s.leq(join_where(s, in_f, id), join_where(s, in_g, id)));
        CHECK(s.leq(meet_where(s, in_g, id), meet_where(s, in_f, id)));
        if (g == (1u << n) - 1) break;
      }
  }
}

TEST_CASE("command order") {
  auto s = boolean_disjunctive(2);
  for (Elem t = 0; t < 4; ++t)
    for (Elem e = 0; e < 4; ++e) {
      CHECK(command_order(s, {t, e}, {t, e}));
      for (Elem t2 = 0; t2 < 4; ++t2)
        for (Elem e2 = 0; e2 < 4; ++e2) {
          if (s.leq(t2, t) && s.leq(e, e2)) CHECK(command_order(s, {t, e}, {t2, e2}));
          if (!in_pole(s, {t, e})) CHECK(command_order(s, {t, e}, {t2, e2}));
        }
    }
}

TEST_CASE("compiled evaluation agrees with direct interpretation") {
  for (Polarity p : {Polarity::Par, Polarity::Tens}) {
    auto structs = pool(p == Polarity::Par ? Kind::Disjunctive : Kind::Conjunctive, 3);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      auto c = random_command(p, seed, 3, 2);
      CompiledSubject cs(p, c);
      for (const auto& sp : structs) {
        if (sp->size() < 2) continue;
        CHECK(cs.eval_command(*sp) == interpret_command(*sp, p, c));
      }
    }
  }
}

TEST_CASE("adequacy examples") {
  auto s = boolean_disjunctive(2);
  auto p = Polarity::Par;
  TypedSequent ax{{{"x", fvar("A")}}, {}, var("x"), fvar("A")};
  std::size_t valid = 0;
  CHECK(check_adequacy_all(s, p, ax, &valid).ok);
  CHECK(valid > 0);
  // sigma outside the context is vacuous
  Valuation v;
  v.vars["x"] = 3;
  v.types["A"] = 0;
  auto r = check_adequacy(s, p, ax, v);
  CHECK(r.ok);
  CHECK_FALSE(r.sigma_valid);
}

TEST_CASE("lambda sanity on Boolean algebras") {
  auto lc = load_corpus(fixtures + "/lambda.sexp");
  for (int k = 1; k <= 2; ++k) {
    auto s = boolean_disjunctive(k);
    auto imp = implicative_from_disjunctive(s);
    for (const auto& t : lc.lambdas) {
      CAPTURE(t.name);
      CHECK(interpret_lambda_implicative(imp, t.term) == interpret(s, Polarity::Par, embed_cbn(t.term)));
    }
  }
}
