#include "realg/separators.hpp"

#include "realg/encodings.hpp"

namespace realg {

Separator::Separator(StructurePtr s, ElemSet members)
    : s_(std::move(s)), m_(std::move(members)) {
  classical_ = classical_set(*s_, m_);
}

std::vector<std::string> required_combinators(Kind k, bool classical) {
  switch (k) {
    case Kind::Implicative:
      if (classical) return {"K", "S", "cc"};
      return {"K", "S"};
    case Kind::Disjunctive: return {"PS1", "PS2", "PS3", "PS4", "PS5"};
    case Kind::Conjunctive: return {"TS1", "TS2", "TS3", "TS4", "TS5"};
  }
  return {};
}

bool classical_set(const Structure& s, const ElemSet& m) {
  if (s.kind() != Kind::Conjunctive) return m.contains(combinator(s, "cc"));
  for (Elem a = 0; a < s.size(); ++a)
    if (m.contains(s.neg(s.neg(a))) && !m.contains(a)) return false;
  return true;
}

AxiomReport check_separator_report(const Structure& s, const ElemSet& m, bool classical) {
  const int n = s.size();
  auto fail = [](std::string c, std::vector<Elem> w, std::string msg) {
    return AxiomReport::fail(std::move(c), std::move(w), std::move(msg));
  };
  if (m.universe() != n) return fail("carrier", {}, "member set has the wrong universe");
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (m.contains(a) && s.leq(a, b) && !m.contains(b))
        return fail("upward-closure", {a, b}, "a in S, a <= b, b not in S");
  for (const auto& c : required_combinators(s.kind(), classical)) {
    Elem v = combinator(s, c);
    if (!m.contains(v)) return fail("combinator:" + c, {v}, c + " not in S");
  }
  if (s.kind() != Kind::Conjunctive) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (m.contains(a) && m.contains(s.arrow(a, b)) && !m.contains(b))
          return fail("modus-ponens", {a, b}, "a -> b and a in S, b not in S");
    if (classical && s.kind() == Kind::Disjunctive) {
      Elem v = combinator(s, "cc");
      if (!m.contains(v)) return fail("classical", {v}, "cc not in S");
    }
    return AxiomReport::pass();
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (m.contains(a) && m.contains(s.neg(s.tensor(a, b))) && !m.contains(s.neg(b)))
        return fail("neg-deduction", {a, b}, "neg(a tensor b) and a in S, neg b not in S");
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (m.contains(a) && m.contains(b) && !m.contains(s.tensor(a, b)))
        return fail("tensor-closure", {a, b}, "a, b in S, a tensor b not in S");
  if (classical)
    for (Elem a = 0; a < n; ++a)
      if (m.contains(s.neg(s.neg(a))) && !m.contains(a))
        return fail("classical", {a}, "neg neg a in S, a not in S");
  return AxiomReport::pass();
}

Separator check_separator(StructurePtr s, ElemSet m, bool classical) {
  auto r = check_separator_report(*s, m, classical);
  if (!r.ok) throw ClauseViolation(r);
  return Separator(std::move(s), std::move(m));
}

Separator generate_separator(StructurePtr sp, const ElemSet& generators, bool classical) {
  const Structure& s = *sp;
  const int n = s.size();
  ElemSet m = generators;
  std::vector<Elem> combs;
  for (const auto& c : required_combinators(s.kind(), classical)) combs.push_back(combinator(s, c));
  if (classical && s.kind() == Kind::Disjunctive) combs.push_back(combinator(s, "cc"));
  for (int round = 0; round <= n + 1; ++round) {
    ElemSet before = m;
    for (Elem c : combs) m.insert(c);
    m = s.lattice().up_closure(m);
    if (s.kind() != Kind::Conjunctive) {
      for (Elem a = 0; a < n; ++a)
        if (m.contains(a))
          for (Elem b = 0; b < n; ++b)
            if (m.contains(s.arrow(a, b))) m.insert(b);
    } else {
      for (Elem a = 0; a < n; ++a)
        if (m.contains(a))
          for (Elem b = 0; b < n; ++b)
            if (m.contains(s.neg(s.tensor(a, b)))) m.insert(s.neg(b));
      auto cur = m.elements();
      for (Elem a : cur)
        for (Elem b : cur) m.insert(s.tensor(a, b));
      if (classical)
        for (Elem a = 0; a < n; ++a)
          if (m.contains(s.neg(s.neg(a)))) m.insert(a);
    }
    if (m == before) break;
  }
  return Separator(std::move(sp), std::move(m));
}

Separator classical_completion(const Separator& sep) {
  const Structure& s = sep.structure();
  if (s.kind() != Kind::Conjunctive) throw KindMismatch("classical completion needs a conjunctive separator");
  ElemSet m(s.size());
  for (Elem a = 0; a < s.size(); ++a)
    if (sep.contains(s.neg(s.neg(a)))) m.insert(a);
  return Separator(sep.structure_ptr(), std::move(m));
}

bool indexed_deduction(const Separator& sep, const std::vector<Elem>& a, const std::vector<Elem>& b) {
  const Structure& s = sep.structure();
  const auto& L = s.lattice();
  if (a.size() != b.size()) throw std::invalid_argument("families over different index sets");
  Elem ma = L.meet(a.begin(), a.end());
  Elem mb = L.meet(b.begin(), b.end());
  if (s.kind() != Kind::Conjunctive) {
    Elem arr = s.top();
    for (std::size_t i = 0; i < a.size(); ++i) arr = s.meet(arr, s.arrow(a[i], b[i]));
    return !(sep.contains(arr) && sep.contains(ma)) || sep.contains(mb);
  }
  Elem nt = s.top(), nb = s.top(), tt = s.top();
  for (std::size_t i = 0; i < a.size(); ++i) {
    nt = s.meet(nt, s.neg(s.tensor(a[i], b[i])));
    nb = s.meet(nb, s.neg(b[i]));
    tt = s.meet(tt, s.tensor(a[i], b[i]));
  }
  bool neg_rule = !(sep.contains(nt) && sep.contains(ma)) || sep.contains(nb);
  bool tens_rule = !(sep.contains(ma) && sep.contains(mb)) || sep.contains(tt);
  return neg_rule && tens_rule;
}

bool is_filter(const FiniteLattice& L, const ElemSet& m) {
  if (!m.contains(L.top())) return false;
  if (!(L.up_closure(m) == m)) return false;
  bool ok = true;
  m.for_each([&](Elem a) {
    m.for_each([&](Elem b) {
      if (!m.contains(L.meet(a, b))) ok = false;
    });
  });
  return ok;
}

}  // namespace realg
