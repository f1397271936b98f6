#include "realg/structures.hpp"

#include <functional>
#include <sstream>

namespace realg {

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Implicative: return "implicative";
    case Kind::Disjunctive: return "disjunctive";
    case Kind::Conjunctive: return "conjunctive";
  }
  return "?";
}

Kind parse_kind(const std::string& s) {
  if (s == "implicative") return Kind::Implicative;
  if (s == "disjunctive") return Kind::Disjunctive;
  if (s == "conjunctive") return Kind::Conjunctive;
  throw std::invalid_argument("unknown structure kind '" + s + "'");
}

std::string AxiomReport::describe() const {
  if (ok) return "ok";
  std::ostringstream os;
  os << axiom << ": " << message << " [witness";
  for (Elem w : witness) os << ' ' << w;
  os << ']';
  return os.str();
}

Structure::Structure(Kind kind, LatticePtr lat, std::vector<Elem> law, std::vector<Elem> neg)
    : kind_(kind), lat_(std::move(lat)), n_(lat_->size()), law_(std::move(law)), neg_(std::move(neg)) {
  const int n = n_;
  if (static_cast<int>(law_.size()) != n * n)
    throw std::invalid_argument("law table must have n*n entries");
  for (Elem x : law_)
    if (x < 0 || x >= n) throw std::invalid_argument("law table entry out of range");
  if (kind_ == Kind::Implicative) {
    neg_.assign(n, 0);
    for (Elem a = 0; a < n; ++a) neg_[a] = law_[a * n + lat_->bottom()];
  } else {
    if (static_cast<int>(neg_.size()) != n)
      throw std::invalid_argument("negation table must have n entries");
    for (Elem x : neg_)
      if (x < 0 || x >= n) throw std::invalid_argument("negation entry out of range");
  }
  arrow_.assign(n * n, 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      switch (kind_) {
        case Kind::Implicative: arrow_[a * n + b] = law_[a * n + b]; break;
        case Kind::Disjunctive: arrow_[a * n + b] = law_[neg_[a] * n + b]; break;
        case Kind::Conjunctive: arrow_[a * n + b] = neg_[law_[a * n + neg_[b]]]; break;
      }
    }
}

Elem Structure::par(Elem a, Elem b) const {
  if (kind_ != Kind::Disjunctive) throw std::logic_error("par needs a disjunctive structure");
  return law(a, b);
}

Elem Structure::tensor(Elem a, Elem b) const {
  if (kind_ != Kind::Conjunctive) throw std::logic_error("tensor needs a conjunctive structure");
  return law(a, b);
}

AxiomReport check_implicative_report(const FiniteLattice& L, const std::vector<Elem>& arrow) {
  const int n = L.size();
  if (static_cast<int>(arrow.size()) != n * n)
    return AxiomReport::fail("shape", {}, "arrow table must have n*n entries");
  auto ar = [&](Elem a, Elem b) { return arrow[a * n + b]; };
  const Elem T = L.top();
  for (Elem a = 0; a < n; ++a)
    if (ar(a, T) != T)
      return AxiomReport::fail("distributivity-nullary", {a}, "a->top must equal top");
  for (Elem a = 0; a < n; ++a)
    for (Elem b1 = 0; b1 < n; ++b1)
      for (Elem b2 = b1 + 1; b2 < n; ++b2)
        if (ar(a, L.meet(b1, b2)) != L.meet(ar(a, b1), ar(a, b2)))
          return AxiomReport::fail("distributivity-binary", {a, b1, b2},
                                   "a->(b1 meet b2) must equal (a->b1) meet (a->b2)");
  for (Elem a0 = 0; a0 < n; ++a0)
    for (Elem a = 0; a < n; ++a) {
      if (!L.leq(a0, a)) continue;
      for (Elem b = 0; b < n; ++b)
        if (!L.leq(ar(a, b), ar(a0, b)))
          return AxiomReport::fail("variance", {a0, a, b, b},
                                   "a0<=a must give (a->b)<=(a0->b)");
    }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem b0 = 0; b0 < n; ++b0)
        if (L.leq(b, b0) && !L.leq(ar(a, b), ar(a, b0)))
          return AxiomReport::fail("variance", {a, a, b, b0},
                                   "b<=b0 must give (a->b)<=(a->b0)");
  return AxiomReport::pass();
}

namespace {

// Shared body for the disjunctive axioms; the conjunctive ones are the same
// statements on the reversed lattice, with the names adjusted.
struct Names {
  std::string op, unit, neg_unit_msg, op_meet, neg_meet, neg_unit, op_mon;
  std::string unit_left_msg, unit_right_msg, op_left_msg, op_right_msg, neg_msg;
};

AxiomReport polar_laws(const FiniteLattice& L, const std::vector<Elem>& op,
                       const std::vector<Elem>& neg, const Names& nm) {
  const int n = L.size();
  if (static_cast<int>(op.size()) != n * n || static_cast<int>(neg.size()) != n)
    return AxiomReport::fail("shape", {}, "law tables have the wrong size");
  auto f = [&](Elem a, Elem b) { return op[a * n + b]; };
  const Elem T = L.top(), B = L.bottom();
  // nullary
  for (Elem a = 0; a < n; ++a)
    if (f(T, a) != T) return AxiomReport::fail(nm.op + "-" + nm.unit + "-left", {a}, nm.unit_left_msg);
  for (Elem a = 0; a < n; ++a)
    if (f(a, T) != T) return AxiomReport::fail(nm.op + "-" + nm.unit + "-right", {a}, nm.unit_right_msg);
  if (neg[T] != B) return AxiomReport::fail("commutation-nullary", {T}, nm.neg_unit_msg);
  // binary
  for (Elem b1 = 0; b1 < n; ++b1)
    for (Elem b2 = b1 + 1; b2 < n; ++b2)
      for (Elem a = 0; a < n; ++a)
        if (f(L.meet(b1, b2), a) != L.meet(f(b1, a), f(b2, a)))
          return AxiomReport::fail(nm.op_meet + "-left", {b1, b2, a}, nm.op_left_msg);
  for (Elem a = 0; a < n; ++a)
    for (Elem b1 = 0; b1 < n; ++b1)
      for (Elem b2 = b1 + 1; b2 < n; ++b2)
        if (f(a, L.meet(b1, b2)) != L.meet(f(a, b1), f(a, b2)))
          return AxiomReport::fail(nm.op_meet + "-right", {a, b1, b2}, nm.op_right_msg);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b)
      if (neg[L.meet(a, b)] != L.join(neg[a], neg[b]))
        return AxiomReport::fail("commutation-binary", {a, b}, nm.neg_msg);
  // variance
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (L.leq(a, b) && !L.leq(neg[b], neg[a]))
        return AxiomReport::fail("neg-antitone", {a, b}, "a<=b must give neg b<=neg a");
  for (Elem a0 = 0; a0 < n; ++a0)
    for (Elem a1 = 0; a1 < n; ++a1) {
      if (!L.leq(a0, a1)) continue;
      for (Elem b = 0; b < n; ++b) {
        if (!L.leq(f(a0, b), f(a1, b)))
          return AxiomReport::fail(nm.op_mon, {a0, a1, b}, "must be monotone on the left");
        if (!L.leq(f(b, a0), f(b, a1)))
          return AxiomReport::fail(nm.op_mon, {b, a0, a1}, "must be monotone on the right");
      }
    }
  return AxiomReport::pass();
}

const Names kParNames{"par", "top", "neg top must be bot", "par-distributivity",
                      "commutation", "neg-top", "par-monotone",
                      "top par a must be top", "a par top must be top",
                      "(b1 meet b2) par a must equal (b1 par a) meet (b2 par a)",
                      "a par (b1 meet b2) must equal (a par b1) meet (a par b2)",
                      "neg(a meet b) must equal neg a join neg b"};

const Names kTensorNames{"tensor", "bot", "neg bot must be top", "tensor-distributivity",
                         "commutation", "neg-bot", "tensor-monotone",
                         "bot tensor a must be bot", "a tensor bot must be bot",
                         "(b1 join b2) tensor a must equal (b1 tensor a) join (b2 tensor a)",
                         "a tensor (b1 join b2) must equal (a tensor b1) join (a tensor b2)",
                         "neg(a join b) must equal neg a meet neg b"};

}  // namespace

AxiomReport check_disjunctive_report(const FiniteLattice& L, const std::vector<Elem>& par,
                                     const std::vector<Elem>& neg) {
  return polar_laws(L, par, neg, kParNames);
}

AxiomReport check_conjunctive_report(const FiniteLattice& L, const std::vector<Elem>& tensor,
                                     const std::vector<Elem>& neg) {
  // Same statements in the opposite order.
  return polar_laws(L.reversed(), tensor, neg, kTensorNames);
}

AxiomReport check_structure(const Structure& s) {
  switch (s.kind()) {
    case Kind::Implicative: return check_implicative_report(s.lattice(), s.law_table());
    case Kind::Disjunctive: return check_disjunctive_report(s.lattice(), s.law_table(), s.neg_table());
    case Kind::Conjunctive: return check_conjunctive_report(s.lattice(), s.law_table(), s.neg_table());
  }
  return AxiomReport::pass();
}

Structure check_implicative(LatticePtr L, std::vector<Elem> arrow) {
  auto r = check_implicative_report(*L, arrow);
  if (!r.ok) throw AxiomViolation(r);
  return Structure(Kind::Implicative, std::move(L), std::move(arrow), {});
}

Structure check_disjunctive(LatticePtr L, std::vector<Elem> par, std::vector<Elem> neg) {
  auto r = check_disjunctive_report(*L, par, neg);
  if (!r.ok) throw AxiomViolation(r);
  return Structure(Kind::Disjunctive, std::move(L), std::move(par), std::move(neg));
}

Structure check_conjunctive(LatticePtr L, std::vector<Elem> tensor, std::vector<Elem> neg) {
  auto r = check_conjunctive_report(*L, tensor, neg);
  if (!r.ok) throw AxiomViolation(r);
  return Structure(Kind::Conjunctive, std::move(L), std::move(tensor), std::move(neg));
}

AxiomReport full_subset_sweep(const Structure& s) {
  const FiniteLattice& L = s.lattice();
  const int n = L.size();
  if (n > 12) throw std::invalid_argument("full subset sweep limited to 12 elements");
  const unsigned total = 1u << n;
  std::vector<Elem> mt(total), jn(total);
  for (unsigned m = 0; m < total; ++m) {
    Elem a = L.top(), b = L.bottom();
    for (int i = 0; i < n; ++i)
      if (m & (1u << i)) {
        a = L.meet(a, i);
        b = L.join(b, i);
      }
    mt[m] = a;
    jn[m] = b;
  }
  auto members = [&](unsigned m) {
    std::vector<Elem> v;
    for (int i = 0; i < n; ++i)
      if (m & (1u << i)) v.push_back(i);
    return v;
  };
  for (unsigned m = 0; m < total; ++m) {
    for (Elem a = 0; a < n; ++a) {
      switch (s.kind()) {
        case Kind::Implicative: {
          Elem acc = L.top();
          for (int i = 0; i < n; ++i)
            if (m & (1u << i)) acc = L.meet(acc, s.law(a, i));
          if (s.law(a, mt[m]) != acc) {
            auto w = members(m);
            w.insert(w.begin(), a);
            return AxiomReport::fail("subset-distributivity", w, "a->meet(B) differs from meet of a->b");
          }
          break;
        }
        case Kind::Disjunctive: {
          Elem l = L.top(), r = L.top();
          for (int i = 0; i < n; ++i)
            if (m & (1u << i)) {
              l = L.meet(l, s.law(i, a));
              r = L.meet(r, s.law(a, i));
            }
          if (s.law(mt[m], a) != l || s.law(a, mt[m]) != r) {
            auto w = members(m);
            w.insert(w.begin(), a);
            return AxiomReport::fail("subset-distributivity", w, "par does not commute with meet(B)");
          }
          break;
        }
        case Kind::Conjunctive: {
          Elem l = L.bottom(), r = L.bottom();
          for (int i = 0; i < n; ++i)
            if (m & (1u << i)) {
              l = L.join(l, s.law(i, a));
              r = L.join(r, s.law(a, i));
            }
          if (s.law(jn[m], a) != l || s.law(a, jn[m]) != r) {
            auto w = members(m);
            w.insert(w.begin(), a);
            return AxiomReport::fail("subset-distributivity", w, "tensor does not commute with join(B)");
          }
          break;
        }
      }
    }
    if (s.kind() == Kind::Disjunctive) {
      Elem acc = L.bottom();
      for (int i = 0; i < n; ++i)
        if (m & (1u << i)) acc = L.join(acc, s.neg(i));
      if (s.neg(mt[m]) != acc)
        return AxiomReport::fail("subset-commutation", members(m), "neg(meet B) differs from join of neg b");
    } else if (s.kind() == Kind::Conjunctive) {
      Elem acc = L.top();
      for (int i = 0; i < n; ++i)
        if (m & (1u << i)) acc = L.meet(acc, s.neg(i));
      if (s.neg(jn[m]) != acc)
        return AxiomReport::fail("subset-commutation", members(m), "neg(join B) differs from meet of neg b");
    }
  }
  return AxiomReport::pass();
}

Structure implicative_from_disjunctive(const Structure& d) {
  if (d.kind() != Kind::Disjunctive) throw std::invalid_argument("expected a disjunctive structure");
  const int n = d.size();
  std::vector<Elem> arrow(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) arrow[a * n + b] = d.law(d.neg(a), b);
#ifndef NDEBUG
  auto r = check_implicative_report(d.lattice(), arrow);
  if (!r.ok) throw AxiomViolation(r);
#endif
  return Structure(Kind::Implicative, d.lattice_ptr(), std::move(arrow), {});
}

Elem arrow_conjunctive(const Structure& c, Elem a, Elem b) {
  if (c.kind() != Kind::Conjunctive) throw std::invalid_argument("expected a conjunctive structure");
  return c.neg(c.law(a, c.neg(b)));
}

Structure dummy_disjunctive(LatticePtr L) {
  const int n = L->size();
  std::vector<Elem> par(n * n, L->top()), neg(n, L->bottom());
  return check_disjunctive(std::move(L), std::move(par), std::move(neg));
}

Structure dummy_conjunctive(LatticePtr L) {
  const int n = L->size();
  std::vector<Elem> tens(n * n, L->bottom()), neg(n, L->top());
  return check_conjunctive(std::move(L), std::move(tens), std::move(neg));
}

Structure top_arrow_implicative(LatticePtr L) {
  const int n = L->size();
  std::vector<Elem> arrow(n * n, L->top());
  return check_implicative(std::move(L), std::move(arrow));
}

Structure heyting_implicative(LatticePtr L) {
  if (!L->distributive()) throw std::invalid_argument("Heyting implication needs a distributive lattice");
  const int n = L->size();
  std::vector<Elem> arrow(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      Elem best = L->bottom();
      for (Elem c = 0; c < n; ++c)
        if (L->leq(L->meet(a, c), b)) best = L->join(best, c);
      arrow[a * n + b] = best;
    }
  return check_implicative(std::move(L), std::move(arrow));
}

Structure boolean_implicative(int atoms) {
  auto B = boolean_algebra(atoms);
  const int n = B.lattice.size();
  auto L = std::make_shared<const FiniteLattice>(B.lattice);
  std::vector<Elem> arrow(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) arrow[a * n + b] = L->join(B.complement[a], b);
  return check_implicative(std::move(L), std::move(arrow));
}

Structure boolean_disjunctive(int atoms) {
  auto B = boolean_algebra(atoms);
  const int n = B.lattice.size();
  auto L = std::make_shared<const FiniteLattice>(B.lattice);
  std::vector<Elem> par(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) par[a * n + b] = L->join(a, b);
  return check_disjunctive(std::move(L), std::move(par), B.complement);
}

Structure boolean_conjunctive(int atoms) {
  auto B = boolean_algebra(atoms);
  const int n = B.lattice.size();
  auto L = std::make_shared<const FiniteLattice>(B.lattice);
  std::vector<Elem> tens(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) tens[a * n + b] = L->meet(a, b);
  return check_conjunctive(std::move(L), std::move(tens), B.complement);
}

namespace {

// All maps f with f(top)=top and f(a meet b) = f(a) meet f(b).
std::vector<std::vector<Elem>> meet_preserving_maps(const FiniteLattice& L) {
  const int n = L.size();
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> f(n, -1);
  std::function<void(int)> go = [&](int a) {
    if (a == n) {
      out.push_back(f);
      return;
    }
    for (Elem v = 0; v < n; ++v) {
      if (a == L.top() && v != L.top()) continue;
      f[a] = v;
      bool ok = true;
      for (Elem x = 0; x <= a && ok; ++x)
        for (Elem y = x; y <= a && ok; ++y) {
          Elem m = L.meet(x, y);
          if (m > a || (x != a && y != a && m != a)) continue;
          if (f[m] != L.meet(f[x], f[y])) ok = false;
        }
      if (ok) go(a + 1);
    }
    f[a] = -1;
  };
  go(0);
  return out;
}

// Maps with neg(top)=bot and neg(a meet b) = neg a join neg b.
std::vector<std::vector<Elem>> meet_to_join_maps(const FiniteLattice& L) {
  const int n = L.size();
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> f(n, -1);
  std::function<void(int)> go = [&](int a) {
    if (a == n) {
      out.push_back(f);
      return;
    }
    for (Elem v = 0; v < n; ++v) {
      if (a == L.top() && v != L.bottom()) continue;
      f[a] = v;
      bool ok = true;
      for (Elem x = 0; x <= a && ok; ++x)
        for (Elem y = x; y <= a && ok; ++y) {
          Elem m = L.meet(x, y);
          if (m > a || (x != a && y != a && m != a)) continue;
          if (f[m] != L.join(f[x], f[y])) ok = false;
        }
      if (ok) go(a + 1);
    }
    f[a] = -1;
  };
  go(0);
  return out;
}

// Visits every par table whose rows and columns are all meet-preserving.
template <class Visit>
bool for_each_par_table(const FiniteLattice& L, Visit&& visit) {
  const int n = L.size();
  auto rows = meet_preserving_maps(L);
  std::vector<int> choice(n, -1);
  std::function<bool(int)> go = [&](int a) -> bool {
    if (a == n) {
      std::vector<Elem> t(n * n);
      for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) t[x * n + y] = rows[choice[x]][y];
      return visit(t);
    }
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      const auto& row = rows[r];
      if (a == L.top()) {
        bool all_top = true;
        for (Elem y = 0; y < n; ++y)
          if (row[y] != L.top()) all_top = false;
        if (!all_top) continue;
      }
      choice[a] = r;
      bool ok = true;
      for (Elem x = 0; x <= a && ok; ++x)
        for (Elem z = x; z <= a && ok; ++z) {
          Elem m = L.meet(x, z);
          if (m > a || (x != a && z != a && m != a)) continue;
          const auto& rm = rows[choice[m]];
          const auto& rx = rows[choice[x]];
          const auto& rz = rows[choice[z]];
          for (Elem y = 0; y < n && ok; ++y)
            if (rm[y] != L.meet(rx[y], rz[y])) ok = false;
        }
      if (ok && !go(a + 1)) return false;
    }
    choice[a] = -1;
    return true;
  };
  return go(0);
}

// Arrow tables: rows meet-preserving, antitone in the row index.
template <class Visit>
bool for_each_arrow_table(const FiniteLattice& L, Visit&& visit) {
  const int n = L.size();
  auto rows = meet_preserving_maps(L);
  std::vector<int> choice(n, -1);
  std::function<bool(int)> go = [&](int a) -> bool {
    if (a == n) {
      std::vector<Elem> t(n * n);
      for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) t[x * n + y] = rows[choice[x]][y];
      return visit(t);
    }
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      const auto& row = rows[r];
      bool ok = true;
      for (Elem b = 0; b < a && ok; ++b) {
        const auto& rb = rows[choice[b]];
        for (Elem y = 0; y < n && ok; ++y) {
          if (L.leq(b, a) && !L.leq(row[y], rb[y])) ok = false;
          if (L.leq(a, b) && !L.leq(rb[y], row[y])) ok = false;
        }
      }
      if (!ok) continue;
      choice[a] = r;
      if (!go(a + 1)) return false;
    }
    choice[a] = -1;
    return true;
  };
  return go(0);
}

}  // namespace

std::vector<Structure> enumerate_structures(Kind k, LatticePtr L, std::size_t limit) {
  if (L->size() > 5) throw std::invalid_argument("structure enumeration limited to 5 elements");
  std::vector<Structure> out;
  auto full = [&] { return limit != 0 && out.size() >= limit; };
  if (k == Kind::Implicative) {
    for_each_arrow_table(*L, [&](const std::vector<Elem>& t) {
      out.emplace_back(Kind::Implicative, L, t, std::vector<Elem>{});
      return !full();
    });
    return out;
  }
  // Conjunctive structures are disjunctive ones on the reversed order.
  auto base = k == Kind::Disjunctive ? L : std::make_shared<const FiniteLattice>(L->reversed());
  auto negs = meet_to_join_maps(*base);
  for_each_par_table(*base, [&](const std::vector<Elem>& t) {
    for (const auto& ng : negs) {
      out.emplace_back(k, L, t, ng);
      if (full()) return false;
    }
    return true;
  });
  return out;
}

std::size_t count_structures(Kind k, const LatticePtr& L) {
  std::size_t count = 0;
  if (k == Kind::Implicative) {
    for_each_arrow_table(*L, [&](const std::vector<Elem>&) {
      ++count;
      return true;
    });
    return count;
  }
  auto base = k == Kind::Disjunctive ? L : std::make_shared<const FiniteLattice>(L->reversed());
  std::size_t negs = meet_to_join_maps(*base).size();
  for_each_par_table(*base, [&](const std::vector<Elem>&) {
    ++count;
    return true;
  });
  return count * negs;
}

}  // namespace realg
