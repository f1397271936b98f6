#include "realg/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <thread>

#include "realg/catalogue.hpp"
#include "realg/corpus.hpp"
#include "realg/duality.hpp"
#include "realg/encodings.hpp"
#include "realg/io.hpp"
#include "realg/machine.hpp"
#include "realg/tripos.hpp"

namespace realg {

bool CriterionResult::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

std::string criterion_title(int id) {
  static const char* titles[] = {"",
                                 "structure axioms",
                                 "derived identities",
                                 "beta soundness",
                                 "boolean combinators",
                                 "separator theorems",
                                 "diamond adjunction",
                                 "calculi",
                                 "duality",
                                 "tripos",
                                 "found witnesses"};
  if (id < 1 || id > criterion_count) return "unknown";
  return titles[id];
}

namespace {

using Clock = std::chrono::steady_clock;

struct Probe {
  Check& c;
  void fail(const std::string& w) {
    if (c.ok) {
      c.ok = false;
      c.witness = w.empty() ? "failed" : w;
    }
  }
  void tick(long long k = 1) { c.checked += k; }
};

Check timed(const std::string& name, const std::function<void(Probe&)>& body) {
  Check c;
  c.name = name;
  Probe p{c};
  auto t0 = Clock::now();
  try {
    body(p);
  } catch (const std::exception& e) {
    p.fail(std::string("exception: ") + e.what());
  }
  c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return c;
}

std::string elems(const std::vector<Elem>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

StructurePtr share(Structure s) { return std::make_shared<const Structure>(std::move(s)); }

std::vector<NamedStructure> enumerated(Kind k, int nmax) {
  std::vector<NamedStructure> out;
  for (int n = 1; n <= nmax; ++n) {
    auto ls = enumerate_lattices(n);
    for (std::size_t li = 0; li < ls.size(); ++li) {
      auto L = std::make_shared<const FiniteLattice>(ls[li]);
      auto all = enumerate_structures(k, L);
      for (std::size_t i = 0; i < all.size(); ++i)
        out.push_back({lattice_name(n, static_cast<int>(li)) + "/" + kind_name(k) + "/" + std::to_string(i),
                       share(std::move(all[i]))});
    }
  }
  return out;
}

std::vector<NamedStructure> of_kind(const std::vector<NamedStructure>& v, Kind k) {
  std::vector<NamedStructure> out;
  for (const auto& s : v)
    if (s.structure->kind() == k) out.push_back(s);
  return out;
}

// Complements when L is Boolean.
std::optional<std::vector<Elem>> complements(const FiniteLattice& L) {
  if (!L.distributive()) return std::nullopt;
  const int n = L.size();
  std::vector<Elem> c(n, -1);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (L.meet(a, b) == L.bottom() && L.join(a, b) == L.top()) c[a] = b;
  for (Elem x : c)
    if (x < 0) return std::nullopt;
  return c;
}

std::vector<NamedStructure> boolean_induced(const LatticePtr& L, const std::string& name) {
  auto c = complements(*L);
  if (!c) return {};
  const int n = L->size();
  std::vector<Elem> join(n * n), meet(n * n), arrow(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      join[a * n + b] = L->join(a, b);
      meet[a * n + b] = L->meet(a, b);
      arrow[a * n + b] = L->join((*c)[a], b);
    }
  return {{name + "/implicative/boolean", share(Structure(Kind::Implicative, L, arrow, {}))},
          {name + "/disjunctive/boolean", share(Structure(Kind::Disjunctive, L, join, *c))},
          {name + "/conjunctive/boolean", share(Structure(Kind::Conjunctive, L, meet, *c))}};
}

LatticePtr chain_product(int p, int q) {
  const int n = p * q;
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) rel[a][b] = a / q <= b / q && a % q <= b % q;
  return std::make_shared<const FiniteLattice>(validate_lattice(rel));
}

// dummy, top-arrow, Heyting and Boolean-induced structures on L
std::vector<NamedStructure> constructors(const LatticePtr& L, const std::string& name) {
  std::vector<NamedStructure> out = {
      {name + "/disjunctive/dummy", share(dummy_disjunctive(L))},
      {name + "/conjunctive/dummy", share(dummy_conjunctive(L))},
      {name + "/implicative/top-arrow", share(top_arrow_implicative(L))}};
  if (L->distributive()) out.push_back({name + "/implicative/heyting", share(heyting_implicative(L))});
  for (auto& b : boolean_induced(L, name)) out.push_back(std::move(b));
  return out;
}

int max_param(const std::string& printed) {
  int m = -1;
  std::size_t pos = 0;
  while ((pos = printed.find("(par ", pos)) != std::string::npos) {
    pos += 5;
    m = std::max(m, std::atoi(printed.c_str() + pos));
  }
  return m;
}

bool is_structural(const std::string& axiom) {
  return axiom.rfind("distributivity", 0) == 0 || axiom.rfind("commutation", 0) == 0;
}

// ---------------------------------------------------------------------------

CriterionResult c1(const SuiteOptions& o) {
  CriterionResult r;
  const int lmax = o.full ? 5 : 4;
  r.checks.push_back(timed("lattice-constructors", [&](Probe& p) {
    for (int n = 1; n <= lmax; ++n) {
      auto ls = enumerate_lattices(n);
      for (std::size_t li = 0; li < ls.size(); ++li) {
        auto L = std::make_shared<const FiniteLattice>(ls[li]);
        for (const auto& ns : constructors(L, lattice_name(n, static_cast<int>(li)))) {
          p.tick();
          auto rep = check_structure(*ns.structure);
          if (!rep.ok) p.fail(ns.name + ": " + rep.describe());
        }
      }
    }
    for (int k = 0; k <= 4; ++k)
      for (auto s : {boolean_implicative(k), boolean_disjunctive(k), boolean_conjunctive(k)}) {
        p.tick();
        auto rep = check_structure(s);
        if (!rep.ok) p.fail("B" + std::to_string(1 << k) + "/" + kind_name(s.kind()) + ": " + rep.describe());
      }
  }));
  r.checks.push_back(timed("machine-powerset", [&](Probe& p) {
    int i = 0;
    for (const auto& m : machine_catalogue(o.full ? 3 : 2, 4, o.seed)) {
      auto s = m.polarity == Machine::Polarity::Disjunctive ? machine_powerset_disjunctive(m)
                                                            : machine_powerset_conjunctive(m);
      p.tick();
      auto rep = check_structure(s);
      if (!rep.ok) p.fail("machine " + std::to_string(i) + ": " + rep.describe());
      ++i;
    }
  }));
  r.checks.push_back(timed("subset-sweep", [&](Probe& p) {
    // certified instances up to 12 elements
    std::vector<NamedStructure> pool;
    for (int a = 2; a <= 6; ++a)
      for (int b = a; a * b <= (o.full ? 12 : 8); ++b)
        for (auto& s : constructors(chain_product(a, b), "C" + std::to_string(a) + "x" + std::to_string(b)))
          pool.push_back(s);
    for (auto& s : structure_catalogue(o.full ? 8 : 4, o.seed, 2, o.full ? 3 : 2)) pool.push_back(s);
    for (const auto& ns : pool) {
      p.tick();
      auto cert = check_structure(*ns.structure);
      auto sweep = full_subset_sweep(*ns.structure);
      if (cert.ok != sweep.ok || (!cert.ok && is_structural(cert.axiom)))
        p.fail(ns.name + ": certification " + (cert.ok ? "pass" : cert.axiom) + ", sweep " +
               (sweep.ok ? "pass" : sweep.axiom));
    }
    // one-entry perturbations, where the two may disagree only on variance
    std::mt19937_64 rng(o.seed);
    auto base = structure_catalogue(4, o.seed, 2, 2);
    const int trials = o.full ? 3000 : 500;
    for (int t = 0; t < trials; ++t) {
      const auto& ns = base[rng() % base.size()];
      const Structure& s = *ns.structure;
      const int n = s.size();
      auto law = s.law_table();
      auto neg = s.neg_table();
      if (s.kind() != Kind::Implicative && rng() % 3 == 0)
        neg[rng() % n] = static_cast<Elem>(rng() % n);
      else
        law[rng() % (n * n)] = static_cast<Elem>(rng() % n);
      Structure q(s.kind(), s.lattice_ptr(), law, s.kind() == Kind::Implicative ? std::vector<Elem>{} : neg);
      p.tick();
      auto cert = check_structure(q);
      auto sweep = full_subset_sweep(q);
      bool agree = cert.ok ? sweep.ok : (sweep.ok ? !is_structural(cert.axiom) : true);
      if (!agree)
        p.fail(ns.name + " perturbed #" + std::to_string(t) + ": certification " +
               (cert.ok ? "pass" : cert.axiom) + ", sweep " + (sweep.ok ? "pass" : sweep.axiom));
    }
  }));
  return r;
}

CriterionResult c2(const SuiteOptions& o) {
  CriterionResult r;
  const int emax = o.full ? 4 : 3;
  auto cat = structure_catalogue(o.full ? 8 : 4, o.seed, 2, o.full ? 3 : 2);
  auto run = [&](Kind k, Probe& p) {
    auto pool = enumerated(k, emax);
    for (auto& s : of_kind(cat, k)) pool.push_back(s);
    for (const auto& ns : pool) {
      const Structure& s = *ns.structure;
      const Elem T = s.top(), B = s.bottom();
      p.tick();
      if (k == Kind::Disjunctive) {
        if (s.neg(T) != B) p.fail(ns.name + ": neg top != bottom");
        for (Elem a = 0; a < s.size(); ++a)
          if (s.par(T, a) != T || s.par(a, T) != T) p.fail(ns.name + ": top par " + std::to_string(a));
      } else {
        if (s.neg(B) != T) p.fail(ns.name + ": neg bottom != top");
        for (Elem a = 0; a < s.size(); ++a)
          if (s.tensor(B, a) != B || s.tensor(a, B) != B) p.fail(ns.name + ": bottom tensor " + std::to_string(a));
      }
    }
  };
  r.checks.push_back(timed("disjunctive", [&](Probe& p) { run(Kind::Disjunctive, p); }));
  r.checks.push_back(timed("conjunctive", [&](Probe& p) { run(Kind::Conjunctive, p); }));
  return r;
}

// (lambda f) a below f(a), or below neg neg f(a) for the conjunctive kind
bool beta_holds(const Structure& s, const std::vector<Elem>& f, Elem* bad) {
  Elem lam = abs_meet(s, [&](Elem a) { return f[a]; });
  for (Elem a = 0; a < s.size(); ++a) {
    bool ok = s.kind() == Kind::Conjunctive ? s.leq(app_conjunctive(s, lam, a), s.neg(s.neg(f[a])))
                                            : s.leq(app_implicative(s, lam, a), f[a]);
    if (!ok) {
      *bad = a;
      return false;
    }
  }
  return true;
}

CriterionResult c3(const SuiteOptions& o) {
  CriterionResult r;
  r.checks.push_back(timed("exhaustive", [&](Probe& p) {
    std::vector<NamedStructure> pool;
    for (Kind k : {Kind::Implicative, Kind::Disjunctive, Kind::Conjunctive})
      for (auto& s : enumerated(k, 3)) pool.push_back(s);
    for (const auto& ns : pool) {
      const Structure& s = *ns.structure;
      const int n = s.size();
      std::vector<Elem> f(n, 0);
      while (true) {
        p.tick();
        Elem a;
        if (!beta_holds(s, f, &a)) p.fail(ns.name + " f=(" + elems(f) + ") a=" + std::to_string(a));
        int i = 0;
        while (i < n && ++f[i] == n) f[i++] = 0;
        if (i == n) break;
      }
    }
  }));
  r.checks.push_back(timed("sampled", [&](Probe& p) {
    auto pool = structure_catalogue(8, o.seed, 2, 3);
    std::mt19937_64 rng(o.seed ^ 0x5eed);
    const int samples = o.full ? 20000 : 10000;
    for (int t = 0; t < samples; ++t) {
      const auto& ns = pool[rng() % pool.size()];
      const Structure& s = *ns.structure;
      std::vector<Elem> f(s.size());
      for (auto& x : f) x = static_cast<Elem>(rng() % s.size());
      p.tick();
      Elem a;
      if (!beta_holds(s, f, &a)) p.fail(ns.name + " f=(" + elems(f) + ") a=" + std::to_string(a));
    }
  }));
  return r;
}

CriterionResult c4(const SuiteOptions&) {
  CriterionResult r;
  r.checks.push_back(timed("boolean-top", [&](Probe& p) {
    for (int k = 1; k <= 4; ++k)
      for (auto s : {boolean_implicative(k), boolean_disjunctive(k), boolean_conjunctive(k)})
        for (const auto& c : combinator_names()) {
          bool ps = c.rfind("PS", 0) == 0, ts = c.rfind("TS", 0) == 0;
          if ((ps && s.kind() != Kind::Disjunctive) || (ts && s.kind() != Kind::Conjunctive)) continue;
          p.tick();
          if (combinator(s, c) != s.top())
            p.fail("B" + std::to_string(1 << k) + "/" + kind_name(s.kind()) + ": " + c + " = " +
                   std::to_string(combinator(s, c)));
        }
  }));
  return r;
}

CriterionResult c5(const SuiteOptions& o) {
  CriterionResult r;
  auto algebras = algebra_catalogue(o.full ? 8 : 4, o.seed);
  r.checks.push_back(timed("disjunctive-combinators", [&](Probe& p) {
    for (const auto& a : algebras) {
      if (a.separator.kind() != Kind::Disjunctive) continue;
      for (const char* c : {"K", "S", "cc"}) {
        p.tick();
        if (!a.separator.contains(combinator(a.separator.structure(), c))) p.fail(a.name + ": " + c);
      }
    }
  }));
  auto conj = [&](const std::string& name, const std::function<void(const NamedAlgebra&, Probe&)>& f) {
    r.checks.push_back(timed(name, [&](Probe& p) {
      for (const auto& a : algebras)
        if (a.separator.kind() == Kind::Conjunctive) f(a, p);
    }));
  };
  conj("conjunctive-ts", [](const NamedAlgebra& a, Probe& p) {
    for (const char* c : {"TS1", "TS2", "TS3", "TS4", "TS5"}) {
      p.tick();
      if (!a.separator.contains(combinator(a.separator.structure(), c))) p.fail(a.name + ": " + c);
    }
  });
  conj("conjunctive-app-closure", [](const NamedAlgebra& a, Probe& p) {
    const Structure& s = a.separator.structure();
    for (Elem x = 0; x < s.size(); ++x)
      for (Elem y = 0; y < s.size(); ++y) {
        if (!a.separator.contains(x) || !a.separator.contains(y)) continue;
        p.tick();
        if (!a.separator.contains(app_conjunctive(s, x, y)))
          p.fail(a.name + ": a=" + std::to_string(x) + " b=" + std::to_string(y));
      }
  });
  conj("conjunctive-lambda", [](const NamedAlgebra& a, Probe& p) {
    for (auto [nm, t] : {std::pair{"K", lambda_K()}, std::pair{"S", lambda_S()}}) {
      p.tick();
      if (!a.separator.contains(interpret_lambda_conjunctive(a.separator.structure(), t)))
        p.fail(a.name + ": " + nm);
    }
  });
  r.checks.push_back(timed("boolean-filters", [&](Probe& p) {
    for (int k = 0; k <= (o.full ? 4 : 3); ++k)
      for (auto s : {boolean_implicative(k), boolean_disjunctive(k), boolean_conjunctive(k)}) {
        const int n = s.size();
        for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
          ElemSet m(n);
          for (Elem a = 0; a < n; ++a)
            if (bits >> a & 1) m.insert(a);
          p.tick();
          bool filter = is_filter(s.lattice(), m);
          bool sep = check_separator_report(s, m, false).ok;
          if (filter != sep)
            p.fail("B" + std::to_string(n) + "/" + kind_name(s.kind()) + " set " + std::to_string(bits) +
                   (filter ? ": filter but not separator" : ": separator but not filter"));
        }
      }
  }));
  return r;
}

CriterionResult c6(const SuiteOptions& o) {
  CriterionResult r;
  r.checks.push_back(timed("diamond", [&](Probe& p) {
    auto pool = enumerated(Kind::Conjunctive, o.full ? 4 : 3);
    for (auto& s : of_kind(structure_catalogue(8, o.seed, 2, 3), Kind::Conjunctive)) pool.push_back(s);
    for (const auto& ns : pool) {
      const Structure& s = *ns.structure;
      const int n = s.size();
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
          Elem d = diamond(s, a, b);
          for (Elem c = 0; c < n; ++c) {
            p.tick();
            if (s.leq(c, d) != s.leq(a, s.neg(s.tensor(b, c))))
              p.fail(ns.name + ": a=" + std::to_string(a) + " b=" + std::to_string(b) + " c=" +
                     std::to_string(c));
          }
        }
    }
  }));
  return r;
}

// ---------------------------------------------------------------------------

Kind kind_for(Polarity p) { return p == Polarity::Par ? Kind::Disjunctive : Kind::Conjunctive; }

// c2 in the pole gives c1 in the pole, for every valuation of the free names
void subject_reduction(Probe& p, Polarity pol, const LTerm& c1, const LTerm& c2,
                       const std::vector<NamedStructure>& pool, const std::string& label) {
  CompiledSubject s1(pol, c1), s2(pol, c2);
  std::vector<std::pair<char, std::string>> names = s1.free();
  for (const auto& f : s2.free())
    if (std::find(names.begin(), names.end(), f) == names.end()) names.push_back(f);
  auto slots = [&](const CompiledSubject& s) {
    std::vector<int> ix;
    for (const auto& f : s.free()) ix.push_back(static_cast<int>(std::find(names.begin(), names.end(), f) - names.begin()));
    return ix;
  };
  auto i1 = slots(s1), i2 = slots(s2);
  const int need = std::max(max_param(to_string(c1)), max_param(to_string(c2)));
  for (const auto& ns : pool) {
    const Structure& s = *ns.structure;
    const int n = s.size();
    if (need >= n) continue;
    std::vector<Elem> val(names.size(), 0), e1(i1.size()), e2(i2.size());
    while (true) {
      for (std::size_t i = 0; i < i1.size(); ++i) e1[i] = val[i1[i]];
      for (std::size_t i = 0; i < i2.size(); ++i) e2[i] = val[i2[i]];
      p.tick();
      auto v1 = s1.eval_command(s, e1), v2 = s2.eval_command(s, e2);
      if (in_pole(s, v2) && !in_pole(s, v1)) p.fail(label + " on " + ns.name + " env=(" + elems(val) + ")");
      std::size_t i = 0;
      while (i < val.size() && ++val[i] == n) val[i++] = 0;
      if (i == val.size()) break;
    }
  }
}

CriterionResult c7(const SuiteOptions& o) {
  CriterionResult r;
  const std::string dir = o.fixture_dir.empty() ? "." : o.fixture_dir;
  for (Polarity pol : {Polarity::Par, Polarity::Tens}) {
    const std::string pn = polarity_name(pol);
    Corpus c = load_corpus(dir + "/" + pn + ".sexp");
    r.checks.push_back(timed(pn + "/rules", [&](Probe& p) {
      if (c.steps.size() < 20) p.fail("only " + std::to_string(c.steps.size()) + " step fixtures");
      std::set<std::string> seen;
      for (const auto& f : c.steps) {
        p.tick();
        seen.insert(f.rule);
        auto err = check_step(pol, f);
        if (!err.empty()) p.fail("line " + std::to_string(f.line) + ": " + err);
      }
      for (const char* rule : {"neg", "mu-tilde", "mu", "pair", "expand"})
        if (!seen.count(rule)) p.fail(std::string("no fixture for rule ") + rule);
    }));
    r.checks.push_back(timed(pn + "/beta-laws", [&](Probe& p) {
      for (const auto& f : c.laws) {
        p.tick();
        auto err = check_law(pol, f);
        if (!err.empty()) p.fail(f.name + ": " + err);
      }
    }));
    r.checks.push_back(timed(pn + "/subject-reduction", [&](Probe& p) {
      const Kind k = kind_for(pol);
      auto small = enumerated(k, o.full ? 3 : 2);
      for (const auto& f : c.steps)
        subject_reduction(p, pol, f.redex, f.reduct, small, "line " + std::to_string(f.line));
      const int smax = o.full ? 4 : 3;
      auto pool = enumerated(k, smax);
      for (int n = 1; n <= smax; ++n) {
        std::vector<NamedStructure> sized;
        for (const auto& ns : pool)
          if (ns.structure->size() == n) sized.push_back(ns);
        for (int t = 0; t < 30; ++t) {
          std::uint64_t seed = o.seed * 1000 + static_cast<std::uint64_t>(t);
          auto tr = normalize(pol, random_command(pol, seed, 3, n), 8);
          for (std::size_t i = 0; i + 1 < tr.commands.size(); ++i)
            subject_reduction(p, pol, tr.commands[i], tr.commands[i + 1], sized,
                              "random seed " + std::to_string(seed) + " step " + std::to_string(i));
        }
      }
    }));
    r.checks.push_back(timed(pn + "/adequacy", [&](Probe& p) {
      auto pool = enumerated(kind_for(pol), o.full ? 3 : 2);
      for (const auto& j : c.judges) {
        typecheck(pol, j.seq);
        const int need = max_param(to_string(j.seq.subject) + (j.seq.type ? to_string(j.seq.type) : ""));
        for (const auto& ns : pool) {
          if (need >= ns.structure->size()) continue;
          p.tick();
          auto res = check_adequacy_all(*ns.structure, pol, j.seq);
          if (!res.ok) p.fail(j.name + " on " + ns.name + ": " + res.failing);
        }
      }
    }));
  }
  r.checks.push_back(timed("lambda-sanity", [&](Probe& p) {
    Corpus lc = load_corpus(dir + "/lambda.sexp");
    if (lc.lambdas.size() < 10) p.fail("only " + std::to_string(lc.lambdas.size()) + " lambda fixtures");
    for (const auto& ns : enumerated(Kind::Disjunctive, o.full ? 3 : 2)) {
      const Structure& s = *ns.structure;
      Structure imp = implicative_from_disjunctive(s);
      for (const auto& t : lc.lambdas) {
        if (max_param(to_string(t.term)) >= s.size()) continue;
        p.tick();
        Elem a = interpret_lambda_implicative(imp, t.term);
        Elem b = interpret(s, Polarity::Par, embed_cbn(t.term));
        if (a != b) p.fail(t.name + " on " + ns.name + ": " + std::to_string(a) + " vs " + std::to_string(b));
      }
    }
  }));
  return r;
}

CriterionResult c8(const SuiteOptions& o) {
  CriterionResult r;
  const int nmax = o.full ? 4 : 3;
  r.checks.push_back(timed("reverse-involution", [&](Probe& p) {
    for (Kind k : {Kind::Disjunctive, Kind::Conjunctive}) {
      auto pool = enumerated(k, nmax);
      for (auto& s : of_kind(structure_catalogue(8, o.seed, 2, 3), k)) pool.push_back(s);
      for (const auto& ns : pool) {
        p.tick();
        Structure once = reverse(*ns.structure);
        if (!check_structure(once).ok) p.fail(ns.name + ": reverse is not a structure");
        if (!(reverse(once) == *ns.structure)) p.fail(ns.name + ": reverse twice differs");
      }
    }
  }));
  auto algebras = algebra_catalogue(nmax, o.seed);
  r.checks.push_back(timed("transport-validates", [&](Probe& p) {
    for (const auto& a : algebras) {
      if (a.separator.kind() == Kind::Implicative) continue;
      p.tick();
      auto d = a.separator.kind() == Kind::Disjunctive ? Direction::Pa2Ta : Direction::Ta2Pa;
      auto w = transport_separator(a.separator, d);
      if (!w.target_structure.ok) p.fail(a.name + ": " + w.target_structure.describe());
      if (!w.target_separator.ok) p.fail(a.name + ": " + w.target_separator.describe());
    }
  }));
  r.checks.push_back(timed("key-lemma", [&](Probe& p) {
    for (const auto& a : algebras) {
      if (a.separator.kind() != Kind::Disjunctive) continue;
      p.tick();
      auto w = transport_separator(a.separator, Direction::Pa2Ta);
      auto rep = key_lemma(w.target, a.separator);
      if (!rep.ok) p.fail(a.name + ": " + rep.describe());
    }
  }));
  r.checks.push_back(timed("double-transport", [&](Probe& p) {
    for (const auto& a : algebras) {
      if (a.separator.kind() != Kind::Conjunctive) continue;
      p.tick();
      if (!(double_transport(a.separator) == classical_completion(a.separator))) p.fail(a.name);
    }
  }));
  return r;
}

CriterionResult c9(const SuiteOptions& o) {
  CriterionResult r;
  const int nmax = o.full ? 4 : 3;
  auto algebras = algebra_catalogue(nmax, o.seed);
  std::vector<Check> clauses;
  std::map<std::string, std::size_t> at;
  auto t0 = Clock::now();
  Check summary;
  summary.name = "hyperdoctrine";
  Probe ps{summary};
  for (const auto& a : algebras) {
    if (!a.separator.classical()) continue;
    try {
      FiniteTripos T(a.separator);
      for (const auto& c : check_tripos(T, 3)) {
        if (!at.count(c.clause)) {
          at[c.clause] = clauses.size();
          clauses.push_back(Check{c.clause});
        }
        Check& k = clauses[at[c.clause]];
        k.checked += c.checked;
        if (!c.ok && k.ok) {
          k.ok = false;
          k.witness = a.name + ": " + c.witness;
        }
      }
    } catch (const std::exception& e) {
      ps.fail(a.name + ": " + e.what());
    }
  }
  double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  // the clauses share one sweep; its time is split evenly
  for (auto& c : clauses) {
    c.seconds = dt / static_cast<double>(clauses.size());
    r.checks.push_back(c);
  }
  if (!summary.ok) r.checks.push_back(summary);
  r.checks.push_back(timed("phi-isomorphism", [&](Probe& p) {
    for (const auto& a : algebras) {
      if (a.separator.kind() != Kind::Disjunctive) continue;
      auto w = transport_separator(a.separator, Direction::Pa2Ta);
      for (int ni = 0; ni <= 3; ++ni) {
        auto rep = tripos_iso(a.separator, w.target, ni, 3);
        for (const auto& c : rep.clauses) {
          p.tick(c.checked);
          if (!c.ok) p.fail(a.name + " |I|=" + std::to_string(ni) + " " + c.clause + ": " + c.witness);
        }
      }
    }
  }));
  return r;
}

CriterionResult c10(const SuiteOptions& o) {
  CriterionResult r;
  const std::string dir = (o.fixture_dir.empty() ? std::string(".") : o.fixture_dir) + "/witnesses/";
  r.checks.push_back(timed("conjunctive-arrow-meet", [&](Probe& p) {
    auto d = load_document(dir + "conj_arrow.txt");
    const Structure& s = *d.structure;
    auto rep = check_structure(s);
    if (!rep.ok) p.fail("stored structure invalid: " + rep.describe());
    // a = 2, B = {1, 2}
    const Elem a = 2;
    const std::vector<Elem> B = {1, 2};
    Elem lhs = s.top(), mb = s.top();
    for (Elem b : B) {
      lhs = s.meet(lhs, s.arrow(a, b));
      mb = s.meet(mb, b);
    }
    p.tick();
    if (s.leq(lhs, s.arrow(a, mb))) p.fail("meet of a->b is below a->meet B; witness gone");
  }));
  r.checks.push_back(timed("uniform-strict", [&](Probe& p) {
    auto d = load_document(dir + "uniform_strict.txt");
    Separator sep = separator_of(d);
    auto rep = check_separator_report(sep.structure(), sep.members(), sep.classical());
    if (!rep.ok) p.fail("stored separator invalid: " + rep.describe());
    FiniteTripos T(sep);
    const Family f = {1, 2};
    p.tick();
    if (!T.product_member(f)) p.fail("(1 2) not in the product");
    if (T.uniform_member(f)) p.fail("(1 2) is uniformly bounded; witness gone");
  }));
  r.checks.push_back(timed("equality-bot-top", [&](Probe& p) {
    auto s = std::make_shared<const Structure>(boolean_implicative(2));
    FiniteTripos T(generate_separator(s, ElemSet(4), true));
    p.tick();
    if (!check_equality(T, 2, false).ok) p.fail("top->bot equality fails");
    if (check_equality(T, 2, true).ok) p.fail("bot->top equality passes");
  }));
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& opt) {
  static const std::function<CriterionResult(const SuiteOptions&)> table[] = {c1, c2, c3, c4, c5,
                                                                              c6, c7, c8, c9, c10};
  if (id < 1 || id > criterion_count) throw std::invalid_argument("no criterion " + std::to_string(id));
  auto t0 = Clock::now();
  CriterionResult r;
  try {
    r = table[id - 1](opt);
  } catch (const std::exception& e) {
    r.checks.push_back(Check{"setup", false, std::string("exception: ") + e.what()});
  }
  r.id = id;
  r.title = criterion_title(id);
  for (auto& c : r.checks) c.name = "c" + std::to_string(id) + "/" + c.name;
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& opt, const std::vector<int>& ids) {
  std::vector<int> todo = ids;
  if (todo.empty())
    for (int i = 1; i <= criterion_count; ++i) todo.push_back(i);
  std::vector<CriterionResult> out(todo.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < todo.size();) out[i] = run_criterion(todo[i], opt);
  };
  const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(todo.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace realg
