// Found witnesses: each case pins a concrete instance where a tempting
// reading fails, next to the reading we keep.
#include "doctest.h"
#include "realg/calculi.hpp"
#include "realg/io.hpp"
#include "realg/tripos.hpp"
#include "support.hpp"

using namespace realg;
using support::share;

namespace {

const std::string wdir = std::string(REALG_FIXTURE_DIR) + "/witnesses/";

}  // namespace

TEST_CASE("reduction can leave the pole") {
  auto s = dummy_disjunctive(share(chain(2)));
  auto p = Polarity::Par;
  auto c1 = parse_subject(p, Sort::Command, "(cmd (par 0) (mut x (cmd (par 1) (par 0))))");
  auto c2 = step(p, c1);
  CHECK(alpha_equal(c2, parse_subject(p, Sort::Command, "(cmd (par 1) (par 0))")));
  auto v1 = interpret_command(s, p, c1), v2 = interpret_command(s, p, c2);
  CHECK(in_pole(s, v1));
  CHECK_FALSE(in_pole(s, v2));
  // so c1 is not below c2 in the command order, but anti-reduction holds
  CHECK_FALSE(command_order(s, v1, v2));
  CHECK(command_order(s, v2, v1));
}

TEST_CASE("equality with bot -> top off the diagonal") {
  for (int k = 1; k <= 2; ++k) {
    auto sp = share(boolean_implicative(k));
    FiniteTripos t(generate_separator(sp, ElemSet(sp->size())));
    auto bad = check_equality(t, 2, true);
    CHECK_FALSE(bad.ok);
    CHECK(check_equality(t, 2).ok);
  }
}

TEST_CASE("pointwise join of a class is not a representative") {
  auto S = separator_of(load_document(wdir + "exists_join.txt"));
  const auto& s = S.structure();
  FiniteTripos t(S);
  Family f{0, 1}, g{0, 2};
  REQUIRE(t.equivalent(f, g));
  Family j(2, s.bottom());
  for (const auto& b : all_families(s.size(), 2))
    if (t.equivalent(f, b))
      for (int i = 0; i < 2; ++i) j[i] = s.join(j[i], b[i]);
  CHECK(j == Family{3, 3});
  CHECK_FALSE(t.equivalent(f, j));
  // the lexicographic least member stays in the class
  CHECK(t.equivalent(f, t.canonical(f)));
  CHECK(t.canonical(f) == t.canonical(g));
}

TEST_CASE("existential as a plain join breaks its adjunction") {
  auto S = separator_of(load_document(wdir + "exists_join.txt"));
  const auto& s = S.structure();
  FiniteTripos t(S);
  CHECK(s.arrow(s.join(1, 2), 0) != s.meet(s.arrow(1, 0), s.arrow(2, 0)));
  Family phi{1, 2}, psi{0};
  const bool left = t.entails(phi, t.weaken(psi, 2));
  CHECK(left != t.entails({s.join(1, 2)}, psi));
  CHECK(left == t.entails(t.exists_along(phi, 1, 2), psi));
  CHECK(check_exists_adjunction(t, 1, 2).ok);
  CHECK(check_exists_adjunction(t, 2, 2).ok);
}

TEST_CASE("uniform separator strictly inside the product") {
  auto S = separator_of(load_document(wdir + "uniform_strict.txt"));
  REQUIRE(S.classical());
  FiniteTripos t(S);
  Family a{1, 2};
  CHECK(t.product_member(a));
  CHECK_FALSE(t.uniform_member(a));
}

TEST_CASE("conjunctive arrow does not distribute over meets") {
  auto d = load_document(wdir + "conj_arrow.txt");
  const Structure& c = *d.structure;
  REQUIRE(check_structure(c).ok);
  const Elem a = 2;
  Elem lhs = c.top();
  for (Elem b : {1, 2}) lhs = c.meet(lhs, arrow_conjunctive(c, a, b));
  Elem rhs = arrow_conjunctive(c, a, c.meet(1, 2));
  CHECK(lhs == 3);
  CHECK(rhs == 0);
  CHECK_FALSE(c.leq(lhs, rhs));
}
