// Seeded random sweeps. Each generator draws a lattice, a structure on it
// and whatever elements or functions the property needs.
#include "doctest.h"
#include "realg/calculi.hpp"
#include "realg/encodings.hpp"
#include "realg/tripos.hpp"
#include "support.hpp"

using namespace realg;
using support::share;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Gen {
  support::Rng rng{kSeed};
  std::vector<FiniteLattice> lattices = enumerate_lattices_up_to(5);

  LatticePtr lattice(int nmax) {
    while (true) {
      const auto& L = lattices[rng.below(static_cast<int>(lattices.size()))];
      if (L.size() <= nmax) return share(L);
    }
  }
  StructurePtr structure(Kind k, int nmax) {
    auto L = lattice(nmax);
    auto all = enumerate_structures(k, L, 400);
    return share(all[rng.below(static_cast<int>(all.size()))]);
  }
  std::vector<Elem> function(int n) {
    std::vector<Elem> f(n);
    for (auto& x : f) x = rng.below(n);
    return f;
  }
  ElemSet subset(int n) {
    ElemSet s(n);
    for (Elem x = 0; x < n; ++x)
      if (rng.coin()) s.insert(x);
    return s;
  }
};

}  // namespace

TEST_CASE("derived unit laws") {
  Gen g;
  for (int it = 0; it < 200; ++it) {
    auto d = g.structure(Kind::Disjunctive, 5);
    auto c = g.structure(Kind::Conjunctive, 5);
    CHECK(d->neg(d->top()) == d->bottom());
    CHECK(c->neg(c->bottom()) == c->top());
    for (Elem a = 0; a < d->size(); ++a) {
      CHECK(d->par(d->top(), a) == d->top());
      CHECK(d->par(a, d->top()) == d->top());
    }
    for (Elem a = 0; a < c->size(); ++a) {
      CHECK(c->tensor(c->bottom(), a) == c->bottom());
      CHECK(c->tensor(a, c->bottom()) == c->bottom());
    }
  }
}

TEST_CASE("conjunctive arrow turns joins on the left into meets") {
  Gen g;
  for (int it = 0; it < 150; ++it) {
    auto c = g.structure(Kind::Conjunctive, 5);
    const int n = c->size();
    auto A = g.subset(n);
    Elem b = g.rng.below(n);
    Elem want = c->top();
    A.for_each([&](Elem a) { want = c->meet(want, arrow_conjunctive(*c, a, b)); });
    CHECK(arrow_conjunctive(*c, c->lattice().join(A), b) == want);
  }
}

TEST_CASE("implicative beta") {
  Gen g;
  for (int it = 0; it < 300; ++it) {
    Kind k = g.rng.coin() ? Kind::Implicative : Kind::Disjunctive;
    auto s = g.structure(k, 5);
    auto f = g.function(s->size());
    Elem lam = abs_meet(*s, [&](Elem x) { return f[x]; });
    for (Elem a = 0; a < s->size(); ++a) CHECK(s->leq(app_implicative(*s, lam, a), f[a]));
  }
}

TEST_CASE("conjunctive beta up to double negation") {
  Gen g;
  for (int it = 0; it < 300; ++it) {
    auto c = g.structure(Kind::Conjunctive, 5);
    auto f = g.function(c->size());
    Elem lam = abs_meet(*c, [&](Elem x) { return f[x]; });
    for (Elem a = 0; a < c->size(); ++a) CHECK(c->leq(app_conjunctive(*c, lam, a), c->neg(c->neg(f[a]))));
  }
}

TEST_CASE("diamond adjunction") {
  Gen g;
  for (int it = 0; it < 200; ++it) {
    auto c = g.structure(Kind::Conjunctive, 5);
    const int n = c->size();
    Elem a = g.rng.below(n), b = g.rng.below(n), x = g.rng.below(n);
    CHECK(c->leq(x, diamond(*c, a, b)) == c->leq(a, c->neg(c->tensor(b, x))));
  }
}

TEST_CASE("subject reduction by anti-reduction on random traces") {
  Gen g;
  for (Polarity p : {Polarity::Par, Polarity::Tens}) {
    Kind k = p == Polarity::Par ? Kind::Disjunctive : Kind::Conjunctive;
    for (int it = 0; it < 60; ++it) {
      auto s = g.structure(k, 4);
      auto tr = normalize(p, random_command(p, g.rng.g(), 3, s->size()), 8);
      for (std::size_t i = 0; i + 1 < tr.commands.size(); ++i) {
        auto v1 = interpret_command(*s, p, tr.commands[i]);
        auto v2 = interpret_command(*s, p, tr.commands[i + 1]);
        CHECK(command_order(*s, v2, v1));
      }
    }
  }
}

TEST_CASE("separator closure under the structure operations") {
  Gen g;
  for (int it = 0; it < 150; ++it) {
    Kind k = static_cast<Kind>(g.rng.below(3));
    auto s = g.structure(k, 5);
    const int n = s->size();
    ElemSet gens(n);
    for (Elem x = 0; x < n; ++x)
      if (g.rng.below(4) == 0) gens.insert(x);
    auto S = generate_separator(s, gens, g.rng.coin());
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        if (S.contains(a) && s->leq(a, b)) CHECK(S.contains(b));
        if (k != Kind::Conjunctive && S.contains(a) && S.contains(s->arrow(a, b))) CHECK(S.contains(b));
        if (k == Kind::Conjunctive && S.contains(a) && S.contains(b)) CHECK(S.contains(s->tensor(a, b)));
      }
  }
}

TEST_CASE("reindexing commutes with the pointwise Heyting operations") {
  Gen g;
  for (int it = 0; it < 40; ++it) {
    Kind k = g.rng.coin() ? Kind::Implicative : Kind::Disjunctive;
    auto s = g.structure(k, 4);
    FiniteTripos t(generate_separator(s, ElemSet(s->size())));
    const int ni = 1 + g.rng.below(3), nj = 1 + g.rng.below(3);
    IndexMap f(nj);
    for (auto& x : f) x = g.rng.below(ni);
    Family a(ni), b(ni);
    for (auto& x : a) x = g.rng.below(s->size());
    for (auto& x : b) x = g.rng.below(s->size());
    CHECK(t.equivalent(t.reindex(f, t.meet_h(a, b)), t.meet_h(t.reindex(f, a), t.reindex(f, b))));
    CHECK(t.equivalent(t.reindex(f, t.join_h(a, b)), t.join_h(t.reindex(f, a), t.reindex(f, b))));
    CHECK(t.equivalent(t.reindex(f, t.imp_h(a, b)), t.imp_h(t.reindex(f, a), t.reindex(f, b))));
  }
}
