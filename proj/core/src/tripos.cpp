#include "realg/tripos.hpp"

#include <algorithm>
#include <initializer_list>

#include "realg/encodings.hpp"

namespace realg {

namespace {

struct OpTables {
  int n = 0;
  std::vector<Elem> prod, sum, arrow;
};

OpTables op_tables(const Structure& s) {
  OpTables t;
  t.n = s.size();
  t.prod.resize(t.n * t.n);
  t.sum.resize(t.n * t.n);
  t.arrow.resize(t.n * t.n);
  for (Elem a = 0; a < t.n; ++a)
    for (Elem b = 0; b < t.n; ++b) {
      auto h = heyting_ops(s, a, b);
      t.prod[a * t.n + b] = h.product;
      t.sum[a * t.n + b] = h.sum;
      t.arrow[a * t.n + b] = h.arrow;
    }
  return t;
}

// Odometer over base-n digits; false once it wraps.
bool next(std::vector<Elem>& v, int n) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (++v[i] < n) return true;
    v[i] = 0;
  }
  return false;
}

bool next_map(std::vector<int>& v, int n) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (++v[i] < n) return true;
    v[i] = 0;
  }
  return false;
}

std::string fam(const std::vector<Elem>& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(a[i]);
  }
  return s + ")";
}

std::string sizes(std::initializer_list<int> xs) {
  std::string s = "[";
  bool first = true;
  for (int x : xs) {
    if (!first) s += ",";
    s += std::to_string(x);
    first = false;
  }
  return s + "]";
}

}  // namespace

AxiomReport check_heyting(const Separator& sep, const QuotientHA& q) {
  const Structure& s = sep.structure();
  const int n = s.size();
  const int k = q.classes;
  auto t = op_tables(s);
  auto fail = [](std::string law, std::vector<Elem> w, std::string msg) {
    return AxiomReport::fail(std::move(law), std::move(w), std::move(msg));
  };
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (equivalent(sep, a, b) != (q.class_of[a] == q.class_of[b]))
        return fail("partition", {a, b}, "classes disagree with mutual entailment");
  // operations respect the classes
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      int ca = q.class_of[a], cb = q.class_of[b];
      if (q.class_of[t.prod[a * n + b]] != q.meet[ca * k + cb])
        return fail("meet-congruence", {a, b}, "product not constant on classes");
      if (q.class_of[t.sum[a * n + b]] != q.join[ca * k + cb])
        return fail("join-congruence", {a, b}, "sum not constant on classes");
      if (q.class_of[t.arrow[a * n + b]] != q.imp[ca * k + cb])
        return fail("imp-congruence", {a, b}, "arrow not constant on classes");
    }
  for (int x = 0; x < k; ++x) {
    if (!q.leq(x, q.top)) return fail("top", {q.rep(x)}, "class above top");
    if (!q.leq(q.bottom, x)) return fail("bottom", {q.rep(x)}, "class below bottom");
    for (int y = 0; y < k; ++y) {
      if (x != y && q.leq(x, y) && q.leq(y, x))
        return fail("antisymmetry", {q.rep(x), q.rep(y)}, "distinct classes are equivalent");
      for (int z = 0; z < k; ++z) {
        if (q.leq(x, y) && q.leq(y, z) && !q.leq(x, z))
          return fail("transitivity", {q.rep(x), q.rep(y), q.rep(z)}, "order not transitive");
        bool glb = q.leq(z, q.meet[x * k + y]) == (q.leq(z, x) && q.leq(z, y));
        if (!glb) return fail("meet", {q.rep(x), q.rep(y), q.rep(z)}, "product is not a meet");
        bool lub = q.leq(q.join[x * k + y], z) == (q.leq(x, z) && q.leq(y, z));
        if (!lub) return fail("join", {q.rep(x), q.rep(y), q.rep(z)}, "sum is not a join");
        bool adj = q.leq(q.meet[x * k + z], y) == q.leq(z, q.imp[x * k + y]);
        if (!adj)
          return fail("adjunction", {q.rep(x), q.rep(y), q.rep(z)},
                      "x and z <= y differs from z <= x -> y");
      }
    }
  }
  return AxiomReport::pass();
}

QuotientHA quotient(const Separator& sep) {
  const Structure& s = sep.structure();
  const int n = s.size();
  QuotientHA q;
  q.class_of.assign(n, -1);
  for (Elem a = 0; a < n; ++a) {
    for (int c = 0; c < q.classes; ++c)
      if (equivalent(sep, a, q.rep(c))) {
        q.class_of[a] = c;
        q.members[c].push_back(a);
        break;
      }
    if (q.class_of[a] < 0) {
      q.class_of[a] = q.classes++;
      q.members.push_back({a});
    }
  }
  const int k = q.classes;
  q.order.assign(k * k, 0);
  q.meet.assign(k * k, 0);
  q.join.assign(k * k, 0);
  q.imp.assign(k * k, 0);
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      Elem a = q.rep(x), b = q.rep(y);
      q.order[x * k + y] = entails(sep, a, b);
      auto h = heyting_ops(s, a, b);
      q.meet[x * k + y] = q.class_of[h.product];
      q.join[x * k + y] = q.class_of[h.sum];
      q.imp[x * k + y] = q.class_of[h.arrow];
    }
  q.top = q.class_of[s.top()];
  q.bottom = q.class_of[s.bottom()];
  auto r = check_heyting(sep, q);
  if (!r.ok) throw LawViolation(r);
  return q;
}

FiniteTripos::FiniteTripos(Separator sep) : sep_(std::move(sep)) {
  const Structure& s = sep_.structure();
  if (s.kind() == Kind::Conjunctive && !sep_.classical())
    throw std::invalid_argument("conjunctive tripos needs a classical separator");
  n_ = s.size();
  auto t = op_tables(s);
  prod_ = std::move(t.prod);
  sum_ = std::move(t.sum);
}

Elem FiniteTripos::meet_of(const Family& a) const {
  return structure().lattice().meet(a.begin(), a.end());
}

bool FiniteTripos::uniform_member(const Family& a) const {
  bool found = false;
  sep_.members().for_each([&](Elem s) {
    if (found) return;
    bool below = true;
    for (Elem x : a)
      if (!structure().leq(s, x)) {
        below = false;
        break;
      }
    found = below;
  });
  return found;
}

bool FiniteTripos::product_member(const Family& a) const {
  for (Elem x : a)
    if (!sep_.contains(x)) return false;
  return true;
}

bool FiniteTripos::entails(const Family& a, const Family& b) const {
  if (a.size() != b.size()) throw std::invalid_argument("families over different index sets");
  const Structure& s = structure();
  Elem m = s.top();
  for (std::size_t i = 0; i < a.size(); ++i) m = s.meet(m, s.arrow(a[i], b[i]));
  return sep_.contains(m);
}

Family FiniteTripos::canonical(const Family& a) const {
  Family c(a.size(), 0);
  do {
    if (equivalent(c, a)) return c;
  } while (next(c, n_));
  return a;
}

Family FiniteTripos::reindex(const IndexMap& f, const Family& a) const {
  Family out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = a.at(f[j]);
  return out;
}

Family FiniteTripos::weaken(const Family& psi, int nj) const {
  Family out(psi.size() * nj);
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (int j = 0; j < nj; ++j) out[i * nj + j] = psi[i];
  return out;
}

Elem FiniteTripos::exists_row(const Elem* row, int nj) const {
  const Structure& s = structure();
  if (s.kind() == Kind::Conjunctive) {
    Elem r = s.bottom();
    for (int j = 0; j < nj; ++j) r = s.join(r, row[j]);
    return r;
  }
  // the join is not enough here: a disjunctive negation need not send joins
  // to meets, so (a v b) -> c can sit strictly below (a -> c) & (b -> c)
  Elem r = s.top();
  for (Elem c = 0; c < n_; ++c) {
    Elem h = s.top();
    for (int j = 0; j < nj; ++j) h = s.meet(h, s.arrow(row[j], c));
    r = s.meet(r, s.arrow(h, c));
  }
  return r;
}

Elem FiniteTripos::forall_row(const Elem* row, int nj) const {
  const Structure& s = structure();
  if (s.kind() == Kind::Conjunctive) {
    Elem r = s.bottom();
    for (int j = 0; j < nj; ++j) r = s.join(r, s.neg(row[j]));
    return s.neg(r);
  }
  Elem r = s.top();
  for (int j = 0; j < nj; ++j) r = s.meet(r, row[j]);
  return r;
}

Family FiniteTripos::exists_along(const Family& a, int ni, int nj) const {
  Family out(ni);
  for (int i = 0; i < ni; ++i) out[i] = exists_row(a.data() + i * nj, nj);
  return out;
}

Family FiniteTripos::forall_along(const Family& a, int ni, int nj) const {
  Family out(ni);
  for (int i = 0; i < ni; ++i) out[i] = forall_row(a.data() + i * nj, nj);
  return out;
}

Family FiniteTripos::diagonal(const Family& a, int ni) const {
  Family out(ni);
  for (int i = 0; i < ni; ++i) out[i] = a[i * ni + i];
  return out;
}

Family FiniteTripos::equality(int ni) const {
  const Structure& s = structure();
  Elem id = s.top();
  for (Elem a = 0; a < n_; ++a) id = s.meet(id, s.arrow(a, a));
  Elem off = s.arrow(s.top(), s.bottom());
  Family out(ni * ni, off);
  for (int i = 0; i < ni; ++i) out[i * ni + i] = id;
  return out;
}

Family FiniteTripos::equality_bot_top(int ni) const {
  Family out = equality(ni);
  const Structure& s = structure();
  for (int i = 0; i < ni; ++i)
    for (int j = 0; j < ni; ++j)
      if (i != j) out[i * ni + j] = s.arrow(s.bottom(), s.top());
  return out;
}

Family FiniteTripos::meet_h(const Family& a, const Family& b) const {
  Family out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = prod_[a[i] * n_ + b[i]];
  return out;
}

Family FiniteTripos::join_h(const Family& a, const Family& b) const {
  Family out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = sum_[a[i] * n_ + b[i]];
  return out;
}

Family FiniteTripos::imp_h(const Family& a, const Family& b) const {
  Family out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = structure().arrow(a[i], b[i]);
  return out;
}

Family FiniteTripos::generic() const {
  Family out(n_);
  for (Elem a = 0; a < n_; ++a) out[a] = a;
  return out;
}

std::vector<Family> all_families(int n, int ni) {
  std::vector<Family> out;
  Family f(ni, 0);
  do {
    out.push_back(f);
  } while (next(f, n));
  return out;
}

std::vector<IndexMap> all_maps(int nj, int ni) {
  std::vector<IndexMap> out;
  if (ni == 0 && nj > 0) return out;
  IndexMap f(nj, 0);
  do {
    out.push_back(f);
  } while (next_map(f, ni));
  return out;
}

ClauseResult check_functoriality(const FiniteTripos& t, int ni, int nj, int nk) {
  ClauseResult r{"functoriality"};
  const int n = t.size();
  IndexMap id(ni);
  for (int i = 0; i < ni; ++i) id[i] = i;
  auto fams = all_families(n, ni);
  auto fs = all_maps(nj, ni);
  auto gs = all_maps(nk, nj);
  for (const auto& a : fams) {
    ++r.checked;
    if (t.reindex(id, a) != a) return {r.clause, false, "T(id) moves " + fam(a), r.checked};
  }
  for (const auto& f : fs)
    for (const auto& g : gs) {
      IndexMap fg(nk);
      for (int k = 0; k < nk; ++k) fg[k] = f[g[k]];
      for (const auto& a : fams) {
        ++r.checked;
        if (t.reindex(g, t.reindex(f, a)) != t.reindex(fg, a))
          return {r.clause, false,
                  "composition f=" + fam(f) + " g=" + fam(g) + " a=" + fam(a), r.checked};
      }
    }
  // monotone, hence well defined on classes
  for (const auto& f : fs)
    for (const auto& a : fams)
      for (const auto& b : fams) {
        ++r.checked;
        if (t.entails(a, b) && !t.entails(t.reindex(f, a), t.reindex(f, b)))
          return {r.clause, false, "monotonicity f=" + fam(f) + " a=" + fam(a) + " b=" + fam(b),
                  r.checked};
      }
  return r;
}

ClauseResult check_exists_adjunction(const FiniteTripos& t, int ni, int nj) {
  ClauseResult r{"exists-adjunction"};
  const Structure& s = t.structure();
  const int n = t.size();
  std::vector<Elem> phi(ni * nj, 0), psi(ni, 0), ex(ni), m(ni * n);
  do {
    for (int i = 0; i < ni; ++i) {
      ex[i] = t.exists_row(phi.data() + i * nj, nj);
      for (Elem v = 0; v < n; ++v) {
        Elem x = s.top();
        for (int j = 0; j < nj; ++j) x = s.meet(x, s.arrow(phi[i * nj + j], v));
        m[i * n + v] = x;
      }
    }
    std::fill(psi.begin(), psi.end(), 0);
    do {
      Elem l = s.top(), rr = s.top();
      for (int i = 0; i < ni; ++i) {
        l = s.meet(l, m[i * n + psi[i]]);
        rr = s.meet(rr, s.arrow(ex[i], psi[i]));
      }
      ++r.checked;
      if (t.separator().contains(l) != t.separator().contains(rr))
        return {r.clause, false, sizes({ni, nj}) + " phi=" + fam(phi) + " psi=" + fam(psi),
                r.checked};
    } while (next(psi, n));
  } while (next(phi, n));
  return r;
}

ClauseResult check_forall_adjunction(const FiniteTripos& t, int ni, int nj) {
  ClauseResult r{"forall-adjunction"};
  const Structure& s = t.structure();
  const int n = t.size();
  std::vector<Elem> phi(ni * nj, 0), psi(ni, 0), fa(ni), m(ni * n);
  do {
    for (int i = 0; i < ni; ++i) {
      fa[i] = t.forall_row(phi.data() + i * nj, nj);
      for (Elem v = 0; v < n; ++v) {
        Elem x = s.top();
        for (int j = 0; j < nj; ++j) x = s.meet(x, s.arrow(v, phi[i * nj + j]));
        m[i * n + v] = x;
      }
    }
    std::fill(psi.begin(), psi.end(), 0);
    do {
      Elem l = s.top(), rr = s.top();
      for (int i = 0; i < ni; ++i) {
        l = s.meet(l, m[i * n + psi[i]]);
        rr = s.meet(rr, s.arrow(psi[i], fa[i]));
      }
      ++r.checked;
      if (t.separator().contains(l) != t.separator().contains(rr))
        return {r.clause, false, sizes({ni, nj}) + " phi=" + fam(phi) + " psi=" + fam(psi),
                r.checked};
    } while (next(psi, n));
  } while (next(phi, n));
  return r;
}

ClauseResult check_equality(const FiniteTripos& t, int ni, bool bot_top_variant) {
  ClauseResult r{"equality"};
  Family eq = bot_top_variant ? t.equality_bot_top(ni) : t.equality(ni);
  Family top = t.top_family(ni);
  Family phi(ni * ni, 0);
  do {
    ++r.checked;
    bool lhs = t.entails(top, t.diagonal(phi, ni));
    bool rhs = t.entails(eq, phi);
    if (lhs != rhs)
      return {r.clause, false, sizes({ni}) + " phi=" + fam(phi), r.checked};
  } while (next(phi, t.size()));
  return r;
}

ClauseResult check_generic_predicate(const FiniteTripos& t, int ni) {
  ClauseResult r{"generic-predicate"};
  Family tr = t.generic();
  Family a(ni, 0);
  do {
    ++r.checked;
    IndexMap chi(a.begin(), a.end());
    Family back = t.reindex(chi, tr);
    if (back != a || !t.equivalent(back, a))
      return {r.clause, false, sizes({ni}) + " a=" + fam(a), r.checked};
  } while (next(a, t.size()));
  return r;
}

namespace {

bool equiv_rows(const FiniteTripos& t, const Elem* a, const Elem* b, int k) {
  const Structure& s = t.structure();
  Elem l = s.top(), r = s.top();
  for (int i = 0; i < k; ++i) {
    l = s.meet(l, s.arrow(a[i], b[i]));
    r = s.meet(r, s.arrow(b[i], a[i]));
  }
  return t.separator().contains(l) && t.separator().contains(r);
}

ClauseResult beck_chevalley(const FiniteTripos& t, const std::vector<IndexMap>& maps, int ni,
                            int ni2, int nj) {
  ClauseResult r{"beck-chevalley"};
  std::vector<IndexMap> sjs;
  for (const auto& s : maps) {
    IndexMap sj(ni * nj);
    for (int i = 0; i < ni; ++i)
      for (int j = 0; j < nj; ++j) sj[i * nj + j] = s[i] * nj + j;
    sjs.push_back(std::move(sj));
  }
  Family phi(ni2 * nj, 0), moved(ni * nj);
  std::vector<Elem> e2(ni2), f2(ni2), l1(ni), r1(ni), l2(ni), r2(ni);
  do {
    for (int i = 0; i < ni2; ++i) {
      e2[i] = t.exists_row(phi.data() + i * nj, nj);
      f2[i] = t.forall_row(phi.data() + i * nj, nj);
    }
    for (std::size_t m = 0; m < maps.size(); ++m) {
      const auto& s = maps[m];
      const auto& sj = sjs[m];
      ++r.checked;
      for (int x = 0; x < ni * nj; ++x) moved[x] = phi[sj[x]];
      for (int i = 0; i < ni; ++i) {
        l1[i] = e2[s[i]];
        l2[i] = f2[s[i]];
        r1[i] = t.exists_row(moved.data() + i * nj, nj);
        r2[i] = t.forall_row(moved.data() + i * nj, nj);
      }
      if (!equiv_rows(t, l1.data(), r1.data(), ni))
        return {r.clause, false,
                sizes({ni, ni2, nj}) + " exists s=" + fam(s) + " phi=" + fam(phi), r.checked};
      if (!equiv_rows(t, l2.data(), r2.data(), ni))
        return {r.clause, false,
                sizes({ni, ni2, nj}) + " forall s=" + fam(s) + " phi=" + fam(phi), r.checked};
    }
  } while (next(phi, t.size()));
  return r;
}

int encode(const Family& a, int n) {
  int x = 0;
  for (Elem e : a) x = x * n + e;
  return x;
}

}  // namespace

ClauseResult check_beck_chevalley(const FiniteTripos& t, const IndexMap& s, int ni2, int nj) {
  return beck_chevalley(t, {s}, static_cast<int>(s.size()), ni2, nj);
}

ClauseResult check_beck_chevalley_all(const FiniteTripos& t, int ni, int ni2, int nj) {
  auto maps = all_maps(ni, ni2);
  if (maps.empty()) return ClauseResult{"beck-chevalley"};
  return beck_chevalley(t, maps, ni, ni2, nj);
}

ClauseResult check_heyting_reindex(const FiniteTripos& t, int ni, int nj) {
  ClauseResult r{"heyting"};
  const int n = t.size();
  auto fams = all_families(n, ni);
  const int F = static_cast<int>(fams.size());
  auto fail = [&](const std::string& what, int a, int b, int c) {
    std::string w = sizes({ni, nj}) + " " + what + " " + fam(fams[a]) + " " + fam(fams[b]);
    if (c >= 0) w += " " + fam(fams[c]);
    return ClauseResult{r.clause, false, w, r.checked};
  };
  std::vector<char> ent(F * F);
  std::vector<int> mt(F * F), jn(F * F), im(F * F);
  for (int a = 0; a < F; ++a)
    for (int b = 0; b < F; ++b) {
      ent[a * F + b] = t.entails(fams[a], fams[b]);
      mt[a * F + b] = encode(t.meet_h(fams[a], fams[b]), n);
      jn[a * F + b] = encode(t.join_h(fams[a], fams[b]), n);
      im[a * F + b] = encode(t.imp_h(fams[a], fams[b]), n);
    }
  for (int a = 0; a < F; ++a)
    for (int b = 0; b < F; ++b) {
      int ab = mt[a * F + b], apb = jn[a * F + b], aib = im[a * F + b];
      if (!ent[ab * F + a] || !ent[ab * F + b]) return fail("meet-lower", a, b, -1);
      if (!ent[a * F + apb] || !ent[b * F + apb]) return fail("join-upper", a, b, -1);
      for (int c = 0; c < F; ++c) {
        ++r.checked;
        if ((ent[c * F + a] && ent[c * F + b]) != ent[c * F + ab]) return fail("meet", a, b, c);
        if ((ent[a * F + c] && ent[b * F + c]) != ent[apb * F + c]) return fail("join", a, b, c);
        if (ent[mt[c * F + a] * F + b] != ent[c * F + aib]) return fail("adjunction", a, b, c);
      }
    }
  for (const auto& f : all_maps(nj, ni))
    for (int a = 0; a < F; ++a)
      for (int b = 0; b < F; ++b) {
        ++r.checked;
        const Family &x = fams[a], &y = fams[b];
        Family fa = t.reindex(f, x), fb = t.reindex(f, y);
        if (t.reindex(f, t.meet_h(x, y)) != t.meet_h(fa, fb) ||
            t.reindex(f, t.join_h(x, y)) != t.join_h(fa, fb) ||
            t.reindex(f, t.imp_h(x, y)) != t.imp_h(fa, fb))
          return fail("reindex f=" + fam(f), a, b, -1);
      }
  return r;
}

std::vector<ClauseResult> check_tripos(const FiniteTripos& t, int imax) {
  auto merge = [](ClauseResult& acc, const ClauseResult& one) {
    acc.checked += one.checked;
    if (acc.ok && !one.ok) {
      acc.ok = false;
      acc.witness = one.witness;
    }
  };
  ClauseResult fun{"functoriality"}, ex{"exists-adjunction"}, fa{"forall-adjunction"},
      eq{"equality"}, gen{"generic-predicate"}, bc{"beck-chevalley"}, hey{"heyting"};
  for (int ni = 0; ni <= imax; ++ni) {
    merge(eq, check_equality(t, ni));
    merge(gen, check_generic_predicate(t, ni));
    for (int nj = 0; nj <= imax; ++nj) {
      merge(ex, check_exists_adjunction(t, ni, nj));
      merge(fa, check_forall_adjunction(t, ni, nj));
      merge(hey, check_heyting_reindex(t, ni, nj));
      for (int nk = 0; nk <= imax; ++nk) {
        merge(fun, check_functoriality(t, ni, nj, nk));
        merge(bc, check_beck_chevalley_all(t, ni, nj, nk));
      }
    }
  }
  return {fun, ex, fa, eq, bc, gen, hey};
}

}  // namespace realg
