#include "realg/duality.hpp"

#include <memory>

#include "realg/encodings.hpp"

namespace realg {

std::string direction_name(Direction d) { return d == Direction::Pa2Ta ? "pa2ta" : "ta2pa"; }

Direction parse_direction(const std::string& s) {
  if (s == "pa2ta") return Direction::Pa2Ta;
  if (s == "ta2pa") return Direction::Ta2Pa;
  throw std::invalid_argument("unknown direction: " + s);
}

namespace {

Structure flip(const Structure& s, Kind to) {
  auto L = std::make_shared<const FiniteLattice>(s.lattice().reversed());
  return Structure(to, std::move(L), s.law_table(), s.neg_table());
}

std::string fam(const Family& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

Family negate(const Structure& s, const Family& a) {
  Family out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s.neg(a[i]);
  return out;
}

}  // namespace

Structure reverse_disjunctive(const Structure& d) {
  if (d.kind() != Kind::Disjunctive) throw KindMismatch("reverse_disjunctive needs a disjunctive structure");
  return flip(d, Kind::Conjunctive);
}

Structure reverse_conjunctive(const Structure& c) {
  if (c.kind() != Kind::Conjunctive) throw KindMismatch("reverse_conjunctive needs a conjunctive structure");
  return flip(c, Kind::Disjunctive);
}

Structure reverse(const Structure& s) {
  switch (s.kind()) {
    case Kind::Disjunctive: return reverse_disjunctive(s);
    case Kind::Conjunctive: return reverse_conjunctive(s);
    default: throw KindMismatch("implicative structures have no direct dual");
  }
}

ElemSet neg_preimage(const Separator& sep) {
  const Structure& s = sep.structure();
  ElemSet m(s.size());
  for (Elem a = 0; a < s.size(); ++a)
    if (sep.contains(s.neg(a))) m.insert(a);
  return m;
}

DualityWitness transport_separator(const Separator& sep, Direction d) {
  Kind want = d == Direction::Pa2Ta ? Kind::Disjunctive : Kind::Conjunctive;
  if (sep.kind() != want)
    throw KindMismatch(direction_name(d) + " needs a " + kind_name(want) + " algebra");
  auto dual = std::make_shared<const Structure>(reverse(sep.structure()));
  ElemSet m = neg_preimage(sep);
  DualityWitness w;
  w.source = sep;
  w.direction = d;
  w.target_structure = check_structure(*dual);
  w.target_separator = check_separator_report(*dual, m, d == Direction::Pa2Ta);
  w.target = Separator(dual, std::move(m));
  return w;
}

AxiomReport key_lemma(const Separator& conj, const Separator& disj) {
  const Structure& c = conj.structure();
  const Structure& p = disj.structure();
  if (c.kind() != Kind::Conjunctive || p.kind() != Kind::Disjunctive)
    throw KindMismatch("key lemma needs a conjunctive and a disjunctive algebra");
  if (c.size() != p.size()) throw PreconditionBroken("carriers differ");
  for (Elem a = 0; a < c.size(); ++a)
    for (Elem b = 0; b < c.size(); ++b)
      if (entails(conj, a, b) != entails(disj, c.neg(a), c.neg(b)))
        return AxiomReport::fail("key-lemma", {a, b},
                                 entails(conj, a, b) ? "a |- b but not neg a |- neg b"
                                                     : "neg a |- neg b but not a |- b");
  return AxiomReport::pass();
}

Separator double_transport(const Separator& conj) {
  auto once = transport_separator(conj, Direction::Ta2Pa);
  auto twice = transport_separator(once.target, Direction::Pa2Ta);
  return twice.target;
}

IsoReport tripos_iso(const Separator& a, const Separator& abar, int ni, int jmax) {
  if (a.kind() != Kind::Disjunctive || abar.kind() != Kind::Conjunctive)
    throw PreconditionBroken("tripos_iso needs a disjunctive algebra and its conjunctive dual");
  auto w = transport_separator(a, Direction::Pa2Ta);
  if (!(abar.structure() == w.target.structure()) || !(abar.members() == w.target.members()))
    throw PreconditionBroken("second algebra is not the dual of the first");
  FiniteTripos T(a);
  FiniteTripos Tbar(abar);
  const Structure& s = a.structure();
  auto fams = all_families(s.size(), ni);

  ClauseResult wd{"well-defined"}, ord{"order"}, inj{"injective"}, sur{"surjective"},
      nat{"natural"};
  for (const auto& x : fams) {
    Family nx = negate(s, x);
    // [x] = [neg neg x] in A^I / S[I], i.e. phi([neg x]) = [x]
    ++sur.checked;
    if (sur.ok && !T.equivalent(negate(s, nx), x)) {
      sur.ok = false;
      sur.witness = "a=" + fam(x);
    }
    for (const auto& y : fams) {
      Family ny = negate(s, y);
      bool bar_le = Tbar.entails(x, y);
      bool le = T.entails(nx, ny);
      ++ord.checked;
      ++wd.checked;
      ++inj.checked;
      if (ord.ok && bar_le != le) {
        ord.ok = false;
        ord.witness = "a=" + fam(x) + " b=" + fam(y);
      }
      bool bar_eq = Tbar.equivalent(x, y), eq = T.equivalent(nx, ny);
      if (wd.ok && bar_eq && !eq) {
        wd.ok = false;
        wd.witness = "a=" + fam(x) + " b=" + fam(y);
      }
      if (inj.ok && eq && !bar_eq) {
        inj.ok = false;
        inj.witness = "a=" + fam(x) + " b=" + fam(y);
      }
    }
  }
  for (int nj = 0; nj <= jmax; ++nj)
    for (const auto& f : all_maps(nj, ni))
      for (const auto& x : fams) {
        ++nat.checked;
        Family left = negate(s, Tbar.reindex(f, x));  // phi_J . Tbar(f)
        Family right = T.reindex(f, negate(s, x));    // T(f) . phi_I
        if (nat.ok && !T.equivalent(left, right)) {
          nat.ok = false;
          nat.witness = "f=" + fam(f) + " a=" + fam(x);
        }
      }
  return {{wd, ord, inj, sur, nat}};
}

}  // namespace realg
