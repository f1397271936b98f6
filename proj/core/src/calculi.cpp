#include "realg/calculi.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <random>
#include <unordered_set>

namespace realg {

using Tag = LNode::Tag;

std::string polarity_name(Polarity p) { return p == Polarity::Par ? "par" : "tens"; }

Polarity parse_polarity(const std::string& s) {
  if (s == "par") return Polarity::Par;
  if (s == "tens") return Polarity::Tens;
  throw std::invalid_argument("unknown calculus: " + s);
}

// ---------------------------------------------------------------------------
// constructors

namespace {

std::shared_ptr<LNode> node(Tag tag, Sort sort) {
  auto n = std::make_shared<LNode>();
  n->tag = tag;
  n->sort = sort;
  return n;
}

void expect_sort(const LTerm& t, Sort s, const char* what) {
  if (!t || t->sort != s) throw std::invalid_argument(std::string("ill-sorted ") + what);
}

}  // namespace

LTerm var(std::string x) {
  auto n = node(Tag::Var, Sort::Term);
  n->n1 = std::move(x);
  return n;
}

LTerm covar(std::string a) {
  auto n = node(Tag::Covar, Sort::Context);
  n->n1 = std::move(a);
  return n;
}

LTerm param_term(Elem a) {
  auto n = node(Tag::Param, Sort::Term);
  n->param = a;
  return n;
}

LTerm param_context(Elem a) {
  auto n = node(Tag::Param, Sort::Context);
  n->param = a;
  return n;
}

LTerm cmd(LTerm t, LTerm e, Formula cut) {
  expect_sort(t, Sort::Term, "command term");
  expect_sort(e, Sort::Context, "command context");
  auto n = node(Tag::Cmd, Sort::Command);
  n->a = std::move(t);
  n->b = std::move(e);
  n->hint = std::move(cut);
  return n;
}

LTerm mu(std::string a, LTerm c, Formula ty) {
  expect_sort(c, Sort::Command, "mu body");
  auto n = node(Tag::Mu, Sort::Term);
  n->n1 = std::move(a);
  n->a = std::move(c);
  n->ty1 = std::move(ty);
  return n;
}

LTerm mut(std::string x, LTerm c, Formula ty) {
  expect_sort(c, Sort::Command, "mu-tilde body");
  auto n = node(Tag::MuT, Sort::Context);
  n->n1 = std::move(x);
  n->a = std::move(c);
  n->ty1 = std::move(ty);
  return n;
}

LTerm pair(LTerm l, LTerm r) {
  if (!l || !r || l->sort != r->sort || l->sort == Sort::Command)
    throw std::invalid_argument("ill-sorted pair");
  auto n = node(Tag::Pair, l->sort);
  n->a = std::move(l);
  n->b = std::move(r);
  return n;
}

LTerm box(LTerm x) {
  if (!x || x->sort == Sort::Command) throw std::invalid_argument("ill-sorted box");
  auto n = node(Tag::Box, x->sort == Sort::Term ? Sort::Context : Sort::Term);
  n->a = std::move(x);
  return n;
}

LTerm mupair(Polarity p, std::string a1, std::string a2, LTerm c, Formula t1, Formula t2) {
  expect_sort(c, Sort::Command, "pair binder body");
  auto n = node(Tag::MuPair, p == Polarity::Par ? Sort::Term : Sort::Context);
  n->n1 = std::move(a1);
  n->n2 = std::move(a2);
  n->a = std::move(c);
  n->ty1 = std::move(t1);
  n->ty2 = std::move(t2);
  return n;
}

LTerm mubox(Polarity p, std::string x, LTerm c, Formula ty) {
  expect_sort(c, Sort::Command, "box binder body");
  auto n = node(Tag::MuBox, p == Polarity::Par ? Sort::Term : Sort::Context);
  n->n1 = std::move(x);
  n->a = std::move(c);
  n->ty1 = std::move(ty);
  return n;
}

LTerm inst(Formula b, LTerm e) {
  expect_sort(e, Sort::Context, "inst body");
  auto n = node(Tag::Inst, Sort::Context);
  n->hint = std::move(b);
  n->a = std::move(e);
  return n;
}

LTerm witness(Formula b, LTerm v) {
  expect_sort(v, Sort::Term, "witness body");
  auto n = node(Tag::Witness, Sort::Term);
  n->hint = std::move(b);
  n->a = std::move(v);
  return n;
}

// ---------------------------------------------------------------------------
// binders and free names

namespace {

// Which namespace a binder's names live in: 'x' or 'a'. 0 for non-binders.
char binder_kind(const LNode& n) {
  switch (n.tag) {
    case Tag::Mu: return 'a';
    case Tag::MuT: return 'x';
    case Tag::MuPair: return n.sort == Sort::Term ? 'a' : 'x';
    case Tag::MuBox: return n.sort == Sort::Term ? 'x' : 'a';
    default: return 0;
  }
}

std::vector<std::string> bound_names(const LNode& n) {
  if (n.tag == Tag::MuPair) return {n.n1, n.n2};
  if (binder_kind(n)) return {n.n1};
  return {};
}

using NameSet = std::set<std::pair<char, std::string>>;

void free_rec(const LTerm& t, NameSet& bound, NameSet& out) {
  switch (t->tag) {
    case Tag::Var:
      if (!bound.count({'x', t->n1})) out.insert({'x', t->n1});
      return;
    case Tag::Covar:
      if (!bound.count({'a', t->n1})) out.insert({'a', t->n1});
      return;
    case Tag::Param: return;
    default: break;
  }
  char k = binder_kind(*t);
  if (k) {
    std::vector<std::pair<char, std::string>> added;
    for (auto& nm : bound_names(*t))
      if (bound.insert({k, nm}).second) added.push_back({k, nm});
    free_rec(t->a, bound, out);
    for (auto& x : added) bound.erase(x);
    return;
  }
  if (t->a) free_rec(t->a, bound, out);
  if (t->b) free_rec(t->b, bound, out);
}

void all_names_rec(const LTerm& t, NameSet& out) {
  if (t->tag == Tag::Var) out.insert({'x', t->n1});
  if (t->tag == Tag::Covar) out.insert({'a', t->n1});
  if (char k = binder_kind(*t))
    for (auto& nm : bound_names(*t)) out.insert({k, nm});
  if (t->a) all_names_rec(t->a, out);
  if (t->b) all_names_rec(t->b, out);
}

std::string fresh(const std::string& base, char k, const NameSet& avoid) {
  if (!avoid.count({k, base})) return base;
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = k == 'x' ? "x" : "a";
  for (int i = 1;; ++i) {
    std::string c = stem + std::to_string(i);
    if (!avoid.count({k, c})) return c;
  }
}

LTerm rebuild(const LNode& n, LTerm a, LTerm b) {
  auto m = std::make_shared<LNode>(n);
  m->a = std::move(a);
  m->b = std::move(b);
  return m;
}

}  // namespace

std::set<std::pair<char, std::string>> free_names(const LTerm& t) {
  NameSet bound, out;
  free_rec(t, bound, out);
  return out;
}

bool is_closed(const LTerm& t) { return free_names(t).empty(); }

bool is_value(Polarity p, const LTerm& t) {
  switch (t->tag) {
    case Tag::Pair: return is_value(p, t->a) && is_value(p, t->b);
    case Tag::Box: return true;
    case Tag::Inst:
    case Tag::Witness: return is_value(p, t->a);
    case Tag::Covar: return p == Polarity::Par;
    case Tag::Var: return p == Polarity::Tens;
    case Tag::Param: return p == Polarity::Par ? t->sort == Sort::Context : t->sort == Sort::Term;
    default: return false;
  }
}

LTerm erase_hints(const LTerm& t) {
  if (t->tag == Tag::Inst || t->tag == Tag::Witness) return erase_hints(t->a);
  if (!t->a && !t->b) return t;
  LTerm a = t->a ? erase_hints(t->a) : nullptr;
  LTerm b = t->b ? erase_hints(t->b) : nullptr;
  if (a == t->a && b == t->b) return t;
  return rebuild(*t, a, b);
}

namespace {

LTerm subst_rec(const LTerm& t, const Subst& s) {
  switch (t->tag) {
    case Tag::Var: {
      auto it = s.vars.find(t->n1);
      return it == s.vars.end() ? t : it->second;
    }
    case Tag::Covar: {
      auto it = s.covars.find(t->n1);
      return it == s.covars.end() ? t : it->second;
    }
    case Tag::Param: return t;
    default: break;
  }
  char k = binder_kind(*t);
  if (!k) {
    LTerm a = t->a ? subst_rec(t->a, s) : nullptr;
    LTerm b = t->b ? subst_rec(t->b, s) : nullptr;
    if (a == t->a && b == t->b) return t;
    return rebuild(*t, a, b);
  }
  Subst s2 = s;
  auto& same = k == 'x' ? s2.vars : s2.covars;
  auto names = bound_names(*t);
  for (auto& nm : names) same.erase(nm);
  if (s2.vars.empty() && s2.covars.empty()) return t;
  NameSet avoid;
  for (auto& [_, r] : s2.vars) avoid.merge(free_names(r));
  for (auto& [_, r] : s2.covars) avoid.merge(free_names(r));
  NameSet taken = avoid;
  all_names_rec(t->a, taken);
  for (auto& nm : names) taken.insert({k, nm});
  auto m = std::make_shared<LNode>(*t);
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!avoid.count({k, names[i]})) continue;
    std::string nn = fresh(names[i], k, taken);
    taken.insert({k, nn});
    same[names[i]] = k == 'x' ? var(nn) : covar(nn);
    (i == 0 ? m->n1 : m->n2) = nn;
  }
  m->a = subst_rec(t->a, s2);
  return m;
}

}  // namespace

LTerm substitute(const LTerm& t, const Subst& s) { return subst_rec(t, s); }

LTerm subst_var(const LTerm& t, const std::string& x, const LTerm& by) {
  Subst s;
  s.vars[x] = by;
  return subst_rec(t, s);
}

LTerm subst_covar(const LTerm& t, const std::string& a, const LTerm& by) {
  Subst s;
  s.covars[a] = by;
  return subst_rec(t, s);
}

// ---------------------------------------------------------------------------
// printing

namespace {

std::string binder_str(const std::string& n, const Formula& ty, bool annotate) {
  if (!annotate || !ty) return n;
  return "(" + n + " " + to_string(ty) + ")";
}

struct Printer {
  bool canon;
  int counter = 0;
  std::vector<std::pair<std::pair<char, std::string>, std::string>> scope;

  std::string lookup(char k, const std::string& n) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first.first == k && it->first.second == n) return it->second;
    return n;
  }

  std::string go(const LTerm& t) {
    switch (t->tag) {
      case Tag::Var: return lookup('x', t->n1);
      case Tag::Covar: return lookup('a', t->n1);
      case Tag::Param: return "(par " + std::to_string(t->param) + ")";
      case Tag::Cmd: {
        std::string s = "(cmd " + go(t->a) + " " + go(t->b);
        if (t->hint && !canon) s += " " + to_string(t->hint);
        return s + ")";
      }
      case Tag::Pair: return "(pair " + go(t->a) + " " + go(t->b) + ")";
      case Tag::Box: return "(box " + go(t->a) + ")";
      case Tag::Inst:
        if (canon) return go(t->a);
        return "(inst " + to_string(t->hint) + " " + go(t->a) + ")";
      case Tag::Witness:
        if (canon) return go(t->a);
        return "(witness " + to_string(t->hint) + " " + go(t->a) + ")";
      default: break;
    }
    char k = binder_kind(*t);
    auto names = bound_names(*t);
    std::vector<std::string> shown;
    for (auto& nm : names) {
      std::string s = canon ? std::string(1, k) + "_" + std::to_string(counter++) : nm;
      scope.push_back({{k, nm}, s});
      shown.push_back(s);
    }
    std::string head;
    switch (t->tag) {
      case Tag::Mu: head = "mu"; break;
      case Tag::MuT: head = "mut"; break;
      case Tag::MuPair: head = "mupair"; break;
      default: head = "mubox"; break;
    }
    std::string s = "(" + head + " " + binder_str(shown[0], t->ty1, !canon);
    if (names.size() > 1) s += " " + binder_str(shown[1], t->ty2, !canon);
    s += " " + go(t->a) + ")";
    for (std::size_t i = 0; i < names.size(); ++i) scope.pop_back();
    return s;
  }
};

}  // namespace

std::string to_string(const LTerm& t) { return Printer{false}.go(t); }
std::string canonical(const LTerm& t) { return Printer{true}.go(t); }
bool alpha_equal(const LTerm& a, const LTerm& b) { return canonical(a) == canonical(b); }

std::size_t node_count(const LTerm& t) {
  std::size_t n = 1;
  if (t->a) n += node_count(t->a);
  if (t->b) n += node_count(t->b);
  return n;
}

// ---------------------------------------------------------------------------
// lambda macros

namespace {

NameSet names_of(std::initializer_list<LTerm> ts) {
  NameSet s;
  for (auto& t : ts) all_names_rec(t, s);
  return s;
}

}  // namespace

LTerm stack(Polarity p, LTerm u, LTerm e) {
  if (p == Polarity::Par) return pair(box(std::move(u)), std::move(e));
  std::string a = fresh("k", 'a', names_of({u, e}));
  return mubox(p, a, cmd(pair(std::move(u), box(std::move(e))), covar(a)));
}

LTerm lam(Polarity p, const std::string& x, LTerm t) {
  NameSet used = names_of({t});
  used.insert({'x', x});
  if (p == Polarity::Par) {
    std::string a = fresh("a", 'a', used);
    used.insert({'a', a});
    std::string b = fresh("b", 'a', used);
    return mupair(p, a, b, cmd(mubox(p, x, cmd(std::move(t), covar(b))), covar(a)));
  }
  std::string x2 = fresh(x + "k", 'x', used);
  used.insert({'x', x2});
  std::string a = fresh("a", 'a', used);
  return box(mupair(p, x, x2, cmd(var(x2), mubox(p, a, cmd(std::move(t), covar(a))))));
}

LTerm app(Polarity p, LTerm t, LTerm u) {
  std::string a = fresh("r", 'a', names_of({t, u}));
  return mu(a, cmd(std::move(t), stack(p, std::move(u), covar(a))));
}

namespace {

LTerm embed(Polarity p, const Lambda& t, int depth) {
  switch (t->tag) {
    case LambdaNode::Tag::Var:
      if (t->index >= depth) throw OpenTerm("open lambda-term");
      return var("x" + std::to_string(depth - 1 - t->index));
    case LambdaNode::Tag::Param: return param_term(t->param);
    case LambdaNode::Tag::App: return app(p, embed(p, t->body, depth), embed(p, t->arg, depth));
    case LambdaNode::Tag::Lam:
      return lam(p, "x" + std::to_string(depth), embed(p, t->body, depth + 1));
  }
  return nullptr;
}

}  // namespace

LTerm embed_cbn(const Lambda& t) { return embed(Polarity::Par, t, 0); }
LTerm embed_cbv(const Lambda& t) { return embed(Polarity::Tens, t, 0); }

// ---------------------------------------------------------------------------
// parsing

namespace {

[[noreturn]] void perr(const SExpr& e, const std::string& msg) {
  throw ParseError(msg + " in " + e.str(), e.line, e.col);
}

Elem parse_elem(const SExpr& e) {
  if (!e.atom) perr(e, "expected an element id");
  try {
    std::size_t pos = 0;
    int v = std::stoi(e.text, &pos);
    if (pos != e.text.size() || v < 0) perr(e, "expected an element id");
    return v;
  } catch (const std::logic_error&) {
    perr(e, "expected an element id");
  }
}

const std::string& name_atom(const SExpr& e) {
  if (!e.atom || e.text.empty()) perr(e, "expected a name");
  return e.text;
}

std::pair<std::string, Formula> binder(const SExpr& e) {
  if (e.atom) return {name_atom(e), nullptr};
  if (e.items.size() != 2) perr(e, "binder must be name or (name type)");
  return {name_atom(e.items[0]), parse_formula(e.items[1])};
}

void arity(const SExpr& e, std::size_t lo, std::size_t hi) {
  if (e.items.size() < lo || e.items.size() > hi) perr(e, "wrong number of arguments");
}

}  // namespace

Formula parse_formula(const SExpr& e) {
  if (e.atom) return fvar(name_atom(e));
  if (e.items.empty() || !e.items[0].atom) perr(e, "bad formula");
  const std::string& h = e.items[0].text;
  if (h == "par") {
    arity(e, 2, 2);
    return fparam(parse_elem(e.items[1]));
  }
  if (h == "neg") {
    arity(e, 2, 2);
    return fneg(parse_formula(e.items[1]));
  }
  if (h == "parr" || h == "tens" || h == "arr") {
    if (e.items.size() < 3) perr(e, "wrong number of arguments");
    // right-nested for more than two arguments
    Formula r = parse_formula(e.items.back());
    for (std::size_t i = e.items.size() - 1; i-- > 1;) {
      Formula l = parse_formula(e.items[i]);
      r = h == "parr" ? fpar(l, r) : h == "tens" ? ftens(l, r) : farrow(l, r);
    }
    return r;
  }
  if (h == "forall" || h == "exists") {
    arity(e, 3, 3);
    auto& x = name_atom(e.items[1]);
    auto b = parse_formula(e.items[2]);
    return h == "forall" ? fforall(x, b) : fexists(x, b);
  }
  perr(e, "unknown formula constructor '" + h + "'");
}

Formula parse_formula(const std::string& src) { return parse_formula(parse_sexpr(src)); }

namespace {

Lambda parse_lambda_rec(const SExpr& e, std::vector<std::string>& scope) {
  if (e.atom) {
    for (int i = static_cast<int>(scope.size()) - 1; i >= 0; --i)
      if (scope[i] == e.text) return lvar(static_cast<int>(scope.size()) - 1 - i);
    perr(e, "unbound variable '" + e.text + "'");
  }
  if (e.items.empty() || !e.items[0].atom) perr(e, "bad lambda-term");
  const std::string& h = e.items[0].text;
  if (h == "par") {
    arity(e, 2, 2);
    return lparam(parse_elem(e.items[1]));
  }
  if (h == "lam") {
    if (e.items.size() < 3) perr(e, "wrong number of arguments");
    // (lam x y body) is (lam x (lam y body))
    std::size_t nb = e.items.size() - 2;
    for (std::size_t i = 1; i <= nb; ++i) scope.push_back(name_atom(e.items[i]));
    Lambda body = parse_lambda_rec(e.items.back(), scope);
    for (std::size_t i = nb; i >= 1; --i) {
      body = llam(body, scope.back());
      scope.pop_back();
    }
    return body;
  }
  if (h == "app") {
    if (e.items.size() < 3) perr(e, "wrong number of arguments");
    Lambda f = parse_lambda_rec(e.items[1], scope);
    for (std::size_t i = 2; i < e.items.size(); ++i) f = lapp(f, parse_lambda_rec(e.items[i], scope));
    return f;
  }
  perr(e, "unknown lambda constructor '" + h + "'");
}

}  // namespace

Lambda parse_lambda(const SExpr& e) {
  std::vector<std::string> scope;
  return parse_lambda_rec(e, scope);
}

Lambda parse_lambda(const std::string& src) { return parse_lambda(parse_sexpr(src)); }

LTerm parse_subject(Polarity p, Sort s, const SExpr& e) {
  const bool par = p == Polarity::Par;
  auto need = [&](Sort want) {
    if (s != want) perr(e, "constructor in the wrong syntactic category");
  };
  if (e.atom) {
    if (s == Sort::Command) perr(e, "a command cannot be a name");
    return s == Sort::Term ? var(name_atom(e)) : covar(name_atom(e));
  }
  if (e.items.empty() || !e.items[0].atom) perr(e, "bad subject");
  const std::string& h = e.items[0].text;
  if (h == "par") {
    arity(e, 2, 2);
    if (s == Sort::Command) perr(e, "a command cannot be a parameter");
    Elem a = parse_elem(e.items[1]);
    return s == Sort::Term ? param_term(a) : param_context(a);
  }
  if (h == "cmd") {
    need(Sort::Command);
    arity(e, 3, 4);
    Formula cut = e.items.size() == 4 ? parse_formula(e.items[3]) : nullptr;
    return cmd(parse_subject(p, Sort::Term, e.items[1]), parse_subject(p, Sort::Context, e.items[2]), cut);
  }
  if (h == "mu" || h == "mut") {
    need(h == "mu" ? Sort::Term : Sort::Context);
    arity(e, 3, 3);
    auto [n, ty] = binder(e.items[1]);
    auto c = parse_subject(p, Sort::Command, e.items[2]);
    return h == "mu" ? mu(n, c, ty) : mut(n, c, ty);
  }
  if (h == "pair") {
    need(par ? Sort::Context : Sort::Term);
    arity(e, 3, 3);
    return pair(parse_subject(p, s, e.items[1]), parse_subject(p, s, e.items[2]));
  }
  if (h == "box") {
    need(par ? Sort::Context : Sort::Term);
    arity(e, 2, 2);
    return box(parse_subject(p, par ? Sort::Term : Sort::Context, e.items[1]));
  }
  if (h == "mupair") {
    need(par ? Sort::Term : Sort::Context);
    arity(e, 4, 4);
    auto [n1, t1] = binder(e.items[1]);
    auto [n2, t2] = binder(e.items[2]);
    return mupair(p, n1, n2, parse_subject(p, Sort::Command, e.items[3]), t1, t2);
  }
  if (h == "mubox") {
    need(par ? Sort::Term : Sort::Context);
    arity(e, 3, 3);
    auto [n, ty] = binder(e.items[1]);
    return mubox(p, n, parse_subject(p, Sort::Command, e.items[2]), ty);
  }
  if (h == "inst") {
    if (!par) perr(e, "inst belongs to the par calculus");
    need(Sort::Context);
    arity(e, 3, 3);
    return inst(parse_formula(e.items[1]), parse_subject(p, Sort::Context, e.items[2]));
  }
  if (h == "witness") {
    if (par) perr(e, "witness belongs to the tens calculus");
    need(Sort::Term);
    arity(e, 3, 3);
    return witness(parse_formula(e.items[1]), parse_subject(p, Sort::Term, e.items[2]));
  }
  if (h == "lam") {
    need(Sort::Term);
    arity(e, 3, 3);
    return lam(p, name_atom(e.items[1]), parse_subject(p, Sort::Term, e.items[2]));
  }
  if (h == "app") {
    need(Sort::Term);
    if (e.items.size() < 3) perr(e, "wrong number of arguments");
    LTerm f = parse_subject(p, Sort::Term, e.items[1]);
    for (std::size_t i = 2; i < e.items.size(); ++i) f = app(p, f, parse_subject(p, Sort::Term, e.items[i]));
    return f;
  }
  if (h == "stack") {
    need(Sort::Context);
    arity(e, 3, 3);
    return stack(p, parse_subject(p, Sort::Term, e.items[1]), parse_subject(p, Sort::Context, e.items[2]));
  }
  perr(e, "unknown constructor '" + h + "'");
}

LTerm parse_subject(Polarity p, Sort s, const std::string& src) {
  return parse_subject(p, s, parse_sexpr(src));
}

// ---------------------------------------------------------------------------
// reduction

namespace {

NameSet names_in(const LTerm& t) {
  NameSet s;
  all_names_rec(t, s);
  return s;
}

std::vector<StepResult> candidates(Polarity p, const LTerm& c) {
  std::vector<StepResult> out;
  const LTerm& t = c->a;
  const LTerm& e = c->b;
  if (p == Polarity::Par) {
    if (t->tag == Tag::MuBox && e->tag == Tag::Box)
      out.push_back({subst_var(t->a, t->n1, e->a), "neg"});
    if (e->tag == Tag::MuT) out.push_back({subst_var(e->a, e->n1, t), "mu-tilde"});
    if (t->tag == Tag::Mu && is_value(p, e)) out.push_back({subst_covar(t->a, t->n1, e), "mu"});
    if (t->tag == Tag::MuPair && e->tag == Tag::Pair && is_value(p, e)) {
      Subst s;
      s.covars[t->n1] = e->a;
      s.covars[t->n2] = e->b;
      out.push_back({substitute(t->a, s), "pair"});
    }
    if (e->tag == Tag::Pair && !is_value(p, e)) {
      NameSet used = names_in(c);
      std::string a1 = fresh("a", 'a', used);
      used.insert({'a', a1});
      std::string a2 = fresh("b", 'a', used);
      auto inner = cmd(mu(a2, cmd(t, pair(covar(a1), covar(a2)))), e->b);
      out.push_back({cmd(mu(a1, inner), e->a), "expand"});
    }
  } else {
    if (t->tag == Tag::Mu) out.push_back({subst_covar(t->a, t->n1, e), "mu"});
    if (t->tag == Tag::Box && e->tag == Tag::MuBox)
      out.push_back({subst_covar(e->a, e->n1, t->a), "neg"});
    if (e->tag == Tag::MuT && is_value(p, t)) out.push_back({subst_var(e->a, e->n1, t), "mu-tilde"});
    if (t->tag == Tag::Pair && is_value(p, t) && e->tag == Tag::MuPair) {
      Subst s;
      s.vars[e->n1] = t->a;
      s.vars[e->n2] = t->b;
      out.push_back({substitute(e->a, s), "pair"});
    }
    if (t->tag == Tag::Pair && !is_value(p, t)) {
      NameSet used = names_in(c);
      std::string x = fresh("x", 'x', used);
      used.insert({'x', x});
      std::string y = fresh("y", 'x', used);
      auto inner = cmd(t->b, mut(y, cmd(pair(var(x), var(y)), e)));
      out.push_back({cmd(t->a, mut(x, inner)), "expand"});
    }
  }
  return out;
}

}  // namespace

std::optional<StepResult> try_step(Polarity p, const LTerm& c0) {
  if (c0->sort != Sort::Command) throw std::invalid_argument("step expects a command");
  LTerm c = erase_hints(c0);
  auto cs = candidates(p, c);
  if (cs.size() > 1)
    throw std::logic_error("overlapping reduction rules (" + cs[0].rule + ", " + cs[1].rule +
                           ") on " + to_string(c));
  if (cs.empty()) return std::nullopt;
  return cs[0];
}

LTerm step(Polarity p, const LTerm& c) {
  auto r = try_step(p, c);
  if (!r) throw Stuck("no rule applies to " + to_string(c));
  return r->next;
}

Trace normalize(Polarity p, const LTerm& c, int fuel) {
  Trace tr;
  tr.commands.push_back(c);
  LTerm cur = c;
  for (int i = 0;; ++i) {
    auto r = try_step(p, cur);
    if (!r) break;
    if (i >= fuel) {
      tr.out_of_fuel = true;
      break;
    }
    cur = r->next;
    tr.commands.push_back(cur);
    tr.rules.push_back(r->rule);
  }
  return tr;
}

namespace {

void reducts_rec(Polarity p, const LTerm& t, const std::function<void(LTerm)>& emit) {
  if (t->tag == Tag::Cmd) {
    auto cs = candidates(p, erase_hints(t));
    for (auto& r : cs) emit(r.next);
  }
  if (t->a)
    reducts_rec(p, t->a, [&](LTerm na) { emit(rebuild(*t, na, t->b)); });
  if (t->b)
    reducts_rec(p, t->b, [&](LTerm nb) { emit(rebuild(*t, t->a, nb)); });
}

std::unordered_set<std::string> reach(Polarity p, const LTerm& c, int fuel, std::size_t cap) {
  std::unordered_set<std::string> seen{canonical(c)};
  std::vector<LTerm> frontier{c};
  for (int d = 0; d < fuel && !frontier.empty() && seen.size() < cap; ++d) {
    std::vector<LTerm> next;
    for (auto& x : frontier)
      for (auto& y : all_reducts(p, x))
        if (seen.insert(canonical(y)).second) next.push_back(y);
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

std::vector<LTerm> all_reducts(Polarity p, const LTerm& c) {
  std::vector<LTerm> out;
  reducts_rec(p, c, [&](LTerm t) { out.push_back(std::move(t)); });
  return out;
}

bool joinable(Polarity p, const LTerm& c1, const LTerm& c2, int fuel) {
  auto r1 = reach(p, c1, fuel, 20000);
  auto r2 = reach(p, c2, fuel, 20000);
  for (auto& s : r1)
    if (r2.count(s)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// typing

std::size_t Derivation::size() const {
  std::size_t n = 1;
  for (auto& d : premises) n += d.size();
  return n;
}

std::string Derivation::render(int indent) const {
  std::string s(indent * 2, ' ');
  s += "[" + rule + "] " + sequent + "\n";
  for (auto& d : premises) s += d.render(indent + 1);
  return s;
}

Formula expand_arrows(Polarity p, const Formula& f) {
  using FT = FormulaNode::Tag;
  switch (f->tag) {
    case FT::Param:
    case FT::Var: return f;
    case FT::Neg: return fneg(expand_arrows(p, f->left));
    case FT::Par: return fpar(expand_arrows(p, f->left), expand_arrows(p, f->right));
    case FT::Tens: return ftens(expand_arrows(p, f->left), expand_arrows(p, f->right));
    case FT::Arrow: {
      auto a = expand_arrows(p, f->left), b = expand_arrows(p, f->right);
      return p == Polarity::Par ? fpar(fneg(a), b) : fneg(ftens(a, fneg(b)));
    }
    case FT::Forall: return fforall(f->name, expand_arrows(p, f->left));
    case FT::Exists: return fexists(f->name, expand_arrows(p, f->left));
  }
  return f;
}

namespace {

using FT = FormulaNode::Tag;

std::string ctx_str(const TypeCtx& g) {
  std::string s;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) s += ", ";
    s += g[i].first + ":" + to_string(g[i].second);
  }
  return s;
}

Formula lookup(const TypeCtx& g, const std::string& n) {
  for (auto it = g.rbegin(); it != g.rend(); ++it)
    if (it->first == n) return it->second;
  return nullptr;
}

std::set<std::string> ctx_ftv(const TypeCtx& g, const TypeCtx& d) {
  std::set<std::string> out;
  for (auto& [_, f] : g) out.merge(free_type_vars(f));
  for (auto& [_, f] : d) out.merge(free_type_vars(f));
  return out;
}

struct Checker {
  Polarity p;

  std::string seq_term(const TypeCtx& g, const LTerm& t, const Formula& a, const TypeCtx& d) const {
    return ctx_str(g) + " |- " + to_string(t) + " : " + to_string(a) + " | " + ctx_str(d);
  }
  std::string seq_ctx(const TypeCtx& g, const LTerm& e, const Formula& a, const TypeCtx& d) const {
    return ctx_str(g) + " | " + to_string(e) + " : " + to_string(a) + " |- " + ctx_str(d);
  }
  std::string seq_cmd(const TypeCtx& g, const LTerm& c, const TypeCtx& d) const {
    return to_string(c) + " : " + ctx_str(g) + " |- " + ctx_str(d);
  }

  static bool same(const Formula& a, const Formula& b) { return alpha_equal(a, b); }

  Formula ann(const Formula& f) const { return f ? expand_arrows(p, f) : nullptr; }

  void check_ann(const char* rule, const LTerm& n, const Formula& given, const Formula& want) const {
    if (given && !same(ann(given), want))
      throw IllTyped(rule, to_string(n), to_string(want), to_string(ann(given)));
  }

  Formula synth_term(const TypeCtx& g, const LTerm& t, const TypeCtx& d) const {
    switch (t->tag) {
      case Tag::Var: return lookup(g, t->n1);
      case Tag::Param: return fparam(t->param);
      case Tag::Mu: return ann(t->ty1);
      case Tag::Pair:
        if (p == Polarity::Tens) {
          auto l = synth_term(g, t->a, d), r = synth_term(g, t->b, d);
          if (l && r) return ftens(l, r);
        }
        return nullptr;
      case Tag::Box:
        if (p == Polarity::Tens) {
          auto x = synth_ctx(g, t->a, d);
          if (x) return fneg(x);
        }
        return nullptr;
      case Tag::MuPair:
        if (t->ty1 && t->ty2) return fpar(ann(t->ty1), ann(t->ty2));
        return nullptr;
      case Tag::MuBox:
        if (t->ty1) return fneg(ann(t->ty1));
        return nullptr;
      default: return nullptr;
    }
  }

  Formula synth_ctx(const TypeCtx& g, const LTerm& e, const TypeCtx& d) const {
    switch (e->tag) {
      case Tag::Covar: return lookup(d, e->n1);
      case Tag::Param: return fparam(e->param);
      case Tag::MuT: return ann(e->ty1);
      case Tag::Pair:
        if (p == Polarity::Par) {
          auto l = synth_ctx(g, e->a, d), r = synth_ctx(g, e->b, d);
          if (l && r) return fpar(l, r);
        }
        return nullptr;
      case Tag::Box:
        if (p == Polarity::Par) {
          auto x = synth_term(g, e->a, d);
          if (x) return fneg(x);
        }
        return nullptr;
      case Tag::MuPair:
        if (e->ty1 && e->ty2) return ftens(ann(e->ty1), ann(e->ty2));
        return nullptr;
      case Tag::MuBox:
        if (e->ty1) return fneg(ann(e->ty1));
        return nullptr;
      default: return nullptr;
    }
  }

  // Opens a quantifier whose bound variable must not occur free in the contexts.
  Formula open_fresh(const Formula& q, const TypeCtx& g, const TypeCtx& d) const {
    auto ftv = ctx_ftv(g, d);
    if (!ftv.count(q->name)) return q->left;
    auto used = ftv;
    used.merge(free_type_vars(q->left));
    std::string y = q->name;
    int k = 0;
    while (used.count(y)) y = q->name + std::to_string(++k);
    return subst_formula(q->left, q->name, fvar(y));
  }

  Derivation term(const TypeCtx& g, const LTerm& t, const Formula& a, const TypeCtx& d) const {
    std::string sq = seq_term(g, t, a, d);
    try {
      return term_direct(g, t, a, d, sq);
    } catch (const IllTyped&) {
      if (p == Polarity::Par && a->tag == FT::Forall) {
        Derivation r{"forall_r", sq, {}};
        r.premises.push_back(term(g, t, open_fresh(a, g, d), d));
        return r;
      }
      throw;
    }
  }

  Derivation term_direct(const TypeCtx& g, const LTerm& t, const Formula& a, const TypeCtx& d,
                         const std::string& sq) const {
    const bool par = p == Polarity::Par;
    switch (t->tag) {
      case Tag::Var: {
        auto f = lookup(g, t->n1);
        if (!f) throw IllTyped(par ? "Ax_r" : "|-ax", to_string(t), to_string(a), "unbound variable");
        if (!same(f, a)) throw IllTyped(par ? "Ax_r" : "|-ax", to_string(t), to_string(a), to_string(f));
        return {par ? "Ax_r" : "|-ax", sq, {}};
      }
      case Tag::Param:
        if (!same(fparam(t->param), a))
          throw IllTyped("Param", to_string(t), to_string(a), to_string(fparam(t->param)));
        return {"Param", sq, {}};
      case Tag::Mu: {
        check_ann(par ? "mu_r" : "|-mu", t, t->ty1, a);
        auto d2 = d;
        d2.push_back({t->n1, a});
        Derivation r{par ? "mu_r" : "|-mu", sq, {}};
        r.premises.push_back(command(g, t->a, d2));
        return r;
      }
      case Tag::MuPair: {
        if (a->tag != FT::Par) throw IllTyped("par_r", to_string(t), "A parr B", to_string(a));
        check_ann("par_r", t, t->ty1, a->left);
        check_ann("par_r", t, t->ty2, a->right);
        auto d2 = d;
        d2.push_back({t->n1, a->left});
        d2.push_back({t->n2, a->right});
        Derivation r{"par_r", sq, {}};
        r.premises.push_back(command(g, t->a, d2));
        return r;
      }
      case Tag::MuBox: {
        if (a->tag != FT::Neg) throw IllTyped("neg_r", to_string(t), "neg A", to_string(a));
        check_ann("neg_r", t, t->ty1, a->left);
        auto g2 = g;
        g2.push_back({t->n1, a->left});
        Derivation r{"neg_r", sq, {}};
        r.premises.push_back(command(g2, t->a, d));
        return r;
      }
      case Tag::Pair: {
        if (a->tag != FT::Tens) throw IllTyped("|-tens", to_string(t), "A tens B", to_string(a));
        Derivation r{"|-tens", sq, {}};
        r.premises.push_back(term(g, t->a, a->left, d));
        r.premises.push_back(term(g, t->b, a->right, d));
        return r;
      }
      case Tag::Box: {
        if (a->tag != FT::Neg) throw IllTyped("|-neg", to_string(t), "neg A", to_string(a));
        Derivation r{"|-neg", sq, {}};
        r.premises.push_back(context(g, t->a, a->left, d));
        return r;
      }
      case Tag::Witness: {
        if (a->tag != FT::Exists) throw IllTyped("|-exists", to_string(t), "exists X.A", to_string(a));
        if (!is_value(p, t->a)) throw IllTyped("|-exists", to_string(t), "a value", to_string(t->a));
        Derivation r{"|-exists", sq, {}};
        r.premises.push_back(term(g, t->a, subst_formula(a->left, a->name, ann(t->hint)), d));
        return r;
      }
      default: break;
    }
    throw IllTyped("term", to_string(t), to_string(a), "not a term");
  }

  Derivation context(const TypeCtx& g, const LTerm& e, const Formula& a, const TypeCtx& d) const {
    std::string sq = seq_ctx(g, e, a, d);
    try {
      return context_direct(g, e, a, d, sq);
    } catch (const IllTyped&) {
      if (p == Polarity::Tens && a->tag == FT::Exists) {
        Derivation r{"exists|-", sq, {}};
        r.premises.push_back(context(g, e, open_fresh(a, g, d), d));
        return r;
      }
      throw;
    }
  }

  Derivation context_direct(const TypeCtx& g, const LTerm& e, const Formula& a, const TypeCtx& d,
                            const std::string& sq) const {
    const bool par = p == Polarity::Par;
    switch (e->tag) {
      case Tag::Covar: {
        auto f = lookup(d, e->n1);
        if (!f) throw IllTyped(par ? "Ax_l" : "ax|-", to_string(e), to_string(a), "unbound covariable");
        if (!same(f, a)) throw IllTyped(par ? "Ax_l" : "ax|-", to_string(e), to_string(a), to_string(f));
        return {par ? "Ax_l" : "ax|-", sq, {}};
      }
      case Tag::Param:
        if (!same(fparam(e->param), a))
          throw IllTyped("Param", to_string(e), to_string(a), to_string(fparam(e->param)));
        return {"Param", sq, {}};
      case Tag::MuT: {
        check_ann(par ? "mu_l" : "mu|-", e, e->ty1, a);
        auto g2 = g;
        g2.push_back({e->n1, a});
        Derivation r{par ? "mu_l" : "mu|-", sq, {}};
        r.premises.push_back(command(g2, e->a, d));
        return r;
      }
      case Tag::Pair: {
        if (a->tag != FT::Par) throw IllTyped("par_l", to_string(e), "A parr B", to_string(a));
        Derivation r{"par_l", sq, {}};
        r.premises.push_back(context(g, e->a, a->left, d));
        r.premises.push_back(context(g, e->b, a->right, d));
        return r;
      }
      case Tag::Box: {
        if (a->tag != FT::Neg) throw IllTyped("neg_l", to_string(e), "neg A", to_string(a));
        Derivation r{"neg_l", sq, {}};
        r.premises.push_back(term(g, e->a, a->left, d));
        return r;
      }
      case Tag::Inst: {
        if (a->tag != FT::Forall) throw IllTyped("forall_l", to_string(e), "forall X.A", to_string(a));
        Derivation r{"forall_l", sq, {}};
        r.premises.push_back(context(g, e->a, subst_formula(a->left, a->name, ann(e->hint)), d));
        return r;
      }
      case Tag::MuPair: {
        if (a->tag != FT::Tens) throw IllTyped("tens|-", to_string(e), "A tens B", to_string(a));
        check_ann("tens|-", e, e->ty1, a->left);
        check_ann("tens|-", e, e->ty2, a->right);
        auto g2 = g;
        g2.push_back({e->n1, a->left});
        g2.push_back({e->n2, a->right});
        Derivation r{"tens|-", sq, {}};
        r.premises.push_back(command(g2, e->a, d));
        return r;
      }
      case Tag::MuBox: {
        if (a->tag != FT::Neg) throw IllTyped("neg|-", to_string(e), "neg A", to_string(a));
        check_ann("neg|-", e, e->ty1, a->left);
        auto d2 = d;
        d2.push_back({e->n1, a->left});
        Derivation r{"neg|-", sq, {}};
        r.premises.push_back(command(g, e->a, d2));
        return r;
      }
      default: break;
    }
    throw IllTyped("context", to_string(e), to_string(a), "not a context");
  }

  Derivation command(const TypeCtx& g, const LTerm& c, const TypeCtx& d) const {
    if (c->tag != Tag::Cmd) throw IllTyped("Cut", to_string(c), "a command", "something else");
    Formula a = c->hint ? ann(c->hint) : synth_term(g, c->a, d);
    Formula b = c->hint ? nullptr : synth_ctx(g, c->b, d);
    if (a && b && !same(a, b)) throw IllTyped("Cut", to_string(c), to_string(a), to_string(b));
    if (!a) a = b;
    if (!a) throw IllTyped("Cut", to_string(c), "a cut formula", "none inferable");
    Derivation r{"Cut", seq_cmd(g, c, d), {}};
    r.premises.push_back(term(g, c->a, a, d));
    r.premises.push_back(context(g, c->b, a, d));
    return r;
  }
};

TypeCtx expand_ctx(Polarity p, const TypeCtx& g) {
  TypeCtx out;
  for (auto& [n, f] : g) out.push_back({n, expand_arrows(p, f)});
  return out;
}

}  // namespace

Derivation typecheck(Polarity p, const TypedSequent& s) {
  Checker ch{p};
  auto g = expand_ctx(p, s.gamma), d = expand_ctx(p, s.delta);
  switch (s.subject->sort) {
    case Sort::Term:
      if (!s.type) throw IllTyped("term", to_string(s.subject), "a stated type", "none");
      return ch.term(g, s.subject, expand_arrows(p, s.type), d);
    case Sort::Context:
      if (!s.type) throw IllTyped("context", to_string(s.subject), "a stated type", "none");
      return ch.context(g, s.subject, expand_arrows(p, s.type), d);
    case Sort::Command: return ch.command(g, s.subject, d);
  }
  throw IllTyped("?", "", "", "");
}

// ---------------------------------------------------------------------------
// interpretation

namespace {

struct Env {
  std::vector<std::pair<std::string, Elem>> vars, covars;
};

Elem find_env(const std::vector<std::pair<std::string, Elem>>& v, const std::string& n) {
  for (auto it = v.rbegin(); it != v.rend(); ++it)
    if (it->first == n) return it->second;
  throw OpenTerm("unbound name " + n);
}

struct Interp {
  const Structure& s;
  Polarity p;

  bool good(const LTerm& c, Env& env) const {
    return s.leq(ev(c->a, env), ev(c->b, env));
  }

  Elem ev(const LTerm& t, Env& env) const {
    const int n = s.size();
    switch (t->tag) {
      case Tag::Var: return find_env(env.vars, t->n1);
      case Tag::Covar: return find_env(env.covars, t->n1);
      case Tag::Param:
        if (t->param < 0 || t->param >= n) throw OpenTerm("parameter out of range");
        return t->param;
      case Tag::Pair: return s.law(ev(t->a, env), ev(t->b, env));
      case Tag::Box: return s.neg(ev(t->a, env));
      case Tag::Inst:
      case Tag::Witness: return ev(t->a, env);
      case Tag::Cmd: throw std::invalid_argument("command where an element was expected");
      default: break;
    }
    char k = binder_kind(*t);
    auto& scope = k == 'x' ? env.vars : env.covars;
    if (t->tag == Tag::Mu || t->tag == Tag::MuT) {
      const bool meet = t->tag == Tag::Mu;
      Elem r = meet ? s.top() : s.bottom();
      for (Elem a = 0; a < n; ++a) {
        scope.push_back({t->n1, a});
        bool ok = good(t->a, env);
        scope.pop_back();
        if (ok) r = meet ? s.meet(r, a) : s.join(r, a);
      }
      return r;
    }
    const bool meet = p == Polarity::Par;
    Elem r = meet ? s.top() : s.bottom();
    if (t->tag == Tag::MuBox) {
      for (Elem a = 0; a < n; ++a) {
        scope.push_back({t->n1, a});
        bool ok = good(t->a, env);
        scope.pop_back();
        if (ok) r = meet ? s.meet(r, s.neg(a)) : s.join(r, s.neg(a));
      }
      return r;
    }
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        scope.push_back({t->n1, a});
        scope.push_back({t->n2, b});
        bool ok = good(t->a, env);
        scope.pop_back();
        scope.pop_back();
        if (ok) r = meet ? s.meet(r, s.law(a, b)) : s.join(r, s.law(a, b));
      }
    return r;
  }
};

void kind_guard(const Structure& s, Polarity p) {
  if (p == Polarity::Par && s.kind() != Kind::Disjunctive)
    throw KindMismatch("the par calculus is interpreted in disjunctive structures");
  if (p == Polarity::Tens && s.kind() != Kind::Conjunctive)
    throw KindMismatch("the tens calculus is interpreted in conjunctive structures");
}

Env to_env(const Valuation& v) {
  Env e;
  for (auto& [k, x] : v.vars) e.vars.push_back({k, x});
  for (auto& [k, x] : v.covars) e.covars.push_back({k, x});
  return e;
}

}  // namespace

Elem interpret(const Structure& s, Polarity p, const LTerm& t, const Valuation& v) {
  kind_guard(s, p);
  if (t->sort == Sort::Command) throw std::invalid_argument("use interpret_command for commands");
  Env env = to_env(v);
  return Interp{s, p}.ev(t, env);
}

CommandValue interpret_command(const Structure& s, Polarity p, const LTerm& c, const Valuation& v) {
  kind_guard(s, p);
  if (c->tag != Tag::Cmd) throw std::invalid_argument("not a command");
  Env env = to_env(v);
  Interp in{s, p};
  return {in.ev(c->a, env), in.ev(c->b, env)};
}

// ---------------------------------------------------------------------------
// compiled evaluation

namespace {

struct Compiler {
  std::vector<CompiledSubject::Node>& nodes;
  std::vector<std::pair<std::string, int>> vars, covars;
  int slots;

  int slot_of(const std::vector<std::pair<std::string, int>>& v, const std::string& n) {
    for (auto it = v.rbegin(); it != v.rend(); ++it)
      if (it->first == n) return it->second;
    throw OpenTerm("unbound name " + n);
  }

  int go(const LTerm& t) {
    CompiledSubject::Node nd;
    nd.tag = t->tag;
    nd.param = t->param;
    auto add_fv = [&](int child) {
      for (int x : nodes[child].fv) nd.fv.push_back(x);
    };
    switch (t->tag) {
      case Tag::Var: nd.s1 = slot_of(vars, t->n1); nd.fv = {nd.s1}; break;
      case Tag::Covar: nd.s1 = slot_of(covars, t->n1); nd.fv = {nd.s1}; break;
      case Tag::Param: break;
      case Tag::Inst:
      case Tag::Witness:
      case Tag::Box:
        nd.a = go(t->a);
        add_fv(nd.a);
        break;
      case Tag::Pair:
      case Tag::Cmd:
        nd.a = go(t->a);
        nd.b = go(t->b);
        add_fv(nd.a);
        add_fv(nd.b);
        break;
      default: {
        char k = binder_kind(*t);
        auto& scope = k == 'x' ? vars : covars;
        nd.s1 = slots++;
        scope.push_back({t->n1, nd.s1});
        if (t->tag == Tag::MuPair) {
          nd.s2 = slots++;
          scope.push_back({t->n2, nd.s2});
        }
        nd.a = go(t->a);
        scope.resize(scope.size() - (t->tag == Tag::MuPair ? 2 : 1));
        for (int x : nodes[nd.a].fv)
          if (x != nd.s1 && x != nd.s2) nd.fv.push_back(x);
      }
    }
    std::sort(nd.fv.begin(), nd.fv.end());
    nd.fv.erase(std::unique(nd.fv.begin(), nd.fv.end()), nd.fv.end());
    nodes.push_back(std::move(nd));
    return static_cast<int>(nodes.size()) - 1;
  }
};

struct Runner {
  const Structure& s;
  bool par;
  const std::vector<CompiledSubject::Node>& nodes;
  std::vector<Elem> env;
  std::vector<std::vector<Elem>> memo;  // per node, -1 = unknown
  int n;

  bool good(int c) { return s.leq(ev(nodes[c].a), ev(nodes[c].b)); }

  Elem ev(int i) {
    const auto& nd = nodes[i];
    switch (nd.tag) {
      case Tag::Var:
      case Tag::Covar: return env[nd.s1];
      case Tag::Param:
        if (nd.param < 0 || nd.param >= n) throw OpenTerm("parameter out of range");
        return nd.param;
      case Tag::Pair: return s.law(ev(nd.a), ev(nd.b));
      case Tag::Box: return s.neg(ev(nd.a));
      case Tag::Inst:
      case Tag::Witness: return ev(nd.a);
      case Tag::Cmd: throw std::invalid_argument("command where an element was expected");
      default: break;
    }
    std::size_t key = 0;
    std::vector<Elem>* m = memo[i].empty() ? nullptr : &memo[i];
    if (m) {
      for (int x : nd.fv) key = key * n + env[x];
      if ((*m)[key] >= 0) return (*m)[key];
    }
    Elem r;
    if (nd.tag == Tag::Mu || nd.tag == Tag::MuT) {
      const bool meet = nd.tag == Tag::Mu;
      r = meet ? s.top() : s.bottom();
      for (Elem a = 0; a < n; ++a) {
        env[nd.s1] = a;
        if (good(nd.a)) r = meet ? s.meet(r, a) : s.join(r, a);
      }
    } else if (nd.tag == Tag::MuBox) {
      r = par ? s.top() : s.bottom();
      for (Elem a = 0; a < n; ++a) {
        env[nd.s1] = a;
        if (good(nd.a)) r = par ? s.meet(r, s.neg(a)) : s.join(r, s.neg(a));
      }
    } else {
      r = par ? s.top() : s.bottom();
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
          env[nd.s1] = a;
          env[nd.s2] = b;
          if (good(nd.a)) r = par ? s.meet(r, s.law(a, b)) : s.join(r, s.law(a, b));
        }
    }
    if (m) (*m)[key] = r;
    return r;
  }
};

}  // namespace

CompiledSubject::CompiledSubject(Polarity p, const LTerm& t) : p_(p), sort_(t->sort) {
  for (auto& fn : free_names(t)) free_.push_back(fn);
  Compiler c{nodes_, {}, {}, 0};
  for (auto& [k, nm] : free_) (k == 'x' ? c.vars : c.covars).push_back({nm, c.slots++});
  root_ = c.go(t);
  slots_ = c.slots;
}

namespace {

Runner make_runner(const Structure& s, bool par, const std::vector<CompiledSubject::Node>& nodes,
                   int slots, const std::vector<Elem>& env, std::size_t nfree) {
  if (env.size() != nfree) throw OpenTerm("valuation does not match the free names");
  Runner r{s, par, nodes, std::vector<Elem>(slots, 0), {}, s.size()};
  std::copy(env.begin(), env.end(), r.env.begin());
  r.memo.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& nd = nodes[i];
    if (nd.s1 < 0 || nd.tag == Tag::Var || nd.tag == Tag::Covar) continue;
    std::size_t size = 1;
    bool small = true;
    for (std::size_t k = 0; k < nd.fv.size(); ++k) {
      size *= s.size();
      if (size > 4096) {
        small = false;
        break;
      }
    }
    if (small) r.memo[i].assign(size, -1);
  }
  return r;
}

}  // namespace

Elem CompiledSubject::eval(const Structure& s, const std::vector<Elem>& env) const {
  kind_guard(s, p_);
  if (sort_ == Sort::Command) throw std::invalid_argument("use eval_command for commands");
  auto r = make_runner(s, p_ == Polarity::Par, nodes_, slots_, env, free_.size());
  return r.ev(root_);
}

CommandValue CompiledSubject::eval_command(const Structure& s, const std::vector<Elem>& env) const {
  kind_guard(s, p_);
  if (sort_ != Sort::Command) throw std::invalid_argument("not a command");
  auto r = make_runner(s, p_ == Polarity::Par, nodes_, slots_, env, free_.size());
  return {r.ev(nodes_[root_].a), r.ev(nodes_[root_].b)};
}

bool command_order(const Structure& s, CommandValue c1, CommandValue c2) {
  return !in_pole(s, c1) || in_pole(s, c2);
}

AdequacyResult check_adequacy(const Structure& s, Polarity p, const TypedSequent& seq,
                              const Valuation& sigma) {
  AdequacyResult r;
  auto f = [&](const Formula& a) { return interpret_formula(s, expand_arrows(p, a), sigma.types); };
  for (auto& [x, a] : seq.gamma) {
    auto it = sigma.vars.find(x);
    if (it == sigma.vars.end() || !s.leq(it->second, f(a))) {
      r.sigma_valid = false;
      return r;
    }
  }
  for (auto& [x, a] : seq.delta) {
    auto it = sigma.covars.find(x);
    if (it == sigma.covars.end() || !s.leq(f(a), it->second)) {
      r.sigma_valid = false;
      return r;
    }
  }
  switch (seq.subject->sort) {
    case Sort::Term:
      r.ok = s.leq(interpret(s, p, seq.subject, sigma), f(seq.type));
      break;
    case Sort::Context:
      r.ok = s.leq(f(seq.type), interpret(s, p, seq.subject, sigma));
      break;
    case Sort::Command:
      r.ok = in_pole(s, interpret_command(s, p, seq.subject, sigma));
      break;
  }
  if (!r.ok) r.failing = to_string(seq.subject);
  return r;
}

AdequacyResult check_adequacy_all(const Structure& s, Polarity p, const TypedSequent& seq,
                                  std::size_t* valid_count) {
  std::vector<std::string> vars, covars, types;
  std::set<std::string> tv;
  for (auto& [x, a] : seq.gamma) {
    vars.push_back(x);
    tv.merge(free_type_vars(a));
  }
  for (auto& [x, a] : seq.delta) {
    covars.push_back(x);
    tv.merge(free_type_vars(a));
  }
  if (seq.type) tv.merge(free_type_vars(seq.type));
  for (auto& [k, nm] : free_names(seq.subject)) {
    auto& v = k == 'x' ? vars : covars;
    if (std::find(v.begin(), v.end(), nm) == v.end()) v.push_back(nm);
  }
  types.assign(tv.begin(), tv.end());
  const std::size_t slots = vars.size() + covars.size() + types.size();
  const int n = s.size();
  std::vector<int> idx(slots, 0);
  std::size_t valid = 0;
  AdequacyResult out;
  for (;;) {
    Valuation v;
    std::size_t i = 0;
    for (auto& x : vars) v.vars[x] = idx[i++];
    for (auto& x : covars) v.covars[x] = idx[i++];
    for (auto& x : types) v.types[x] = idx[i++];
    auto r = check_adequacy(s, p, seq, v);
    if (r.sigma_valid) {
      ++valid;
      if (!r.ok) {
        out = r;
        break;
      }
    }
    std::size_t j = 0;
    while (j < slots && ++idx[j] == n) idx[j++] = 0;
    if (j == slots) break;
  }
  if (valid_count) *valid_count = valid;
  return out;
}

// ---------------------------------------------------------------------------
// random closed commands

namespace {

struct Gen {
  Polarity p;
  std::mt19937_64 rng;
  int params;
  int counter = 0;
  std::vector<std::string> vars, covars;

  int pick(int k) { return static_cast<int>(rng() % static_cast<std::uint64_t>(k)); }

  LTerm leaf(Sort s) {
    auto& scope = s == Sort::Term ? vars : covars;
    if (!scope.empty() && (params == 0 || pick(3) != 0)) {
      const auto& n = scope[pick(static_cast<int>(scope.size()))];
      return s == Sort::Term ? var(n) : covar(n);
    }
    Elem a = pick(std::max(params, 1));
    return s == Sort::Term ? param_term(a) : param_context(a);
  }

  std::string fresh_name(char k) { return std::string(1, k == 'x' ? 'x' : 'a') + std::to_string(counter++); }

  LTerm bind1(char k, const std::function<LTerm(const std::string&)>& body) {
    auto& scope = k == 'x' ? vars : covars;
    std::string n = fresh_name(k);
    scope.push_back(n);
    LTerm r = body(n);
    scope.pop_back();
    return r;
  }

  LTerm command(int d) { return cmd(term(d), context(d)); }

  LTerm term(int d) {
    if (d <= 0) return leaf(Sort::Term);
    const bool par = p == Polarity::Par;
    switch (pick(par ? 4 : 5)) {
      case 0: return leaf(Sort::Term);
      case 1: return bind1('a', [&](const std::string& a) { return mu(a, command(d - 1)); });
      case 2:
        if (par) {
          return bind1('a', [&](const std::string& a1) {
            return bind1('a', [&](const std::string& a2) { return mupair(p, a1, a2, command(d - 1)); });
          });
        }
        return pair(term(d - 1), term(d - 1));
      case 3:
        if (par) return bind1('x', [&](const std::string& x) { return mubox(p, x, command(d - 1)); });
        return box(context(d - 1));
      default: return bind1('a', [&](const std::string& a) { return mu(a, command(d - 1)); });
    }
  }

  LTerm context(int d) {
    if (d <= 0) return leaf(Sort::Context);
    const bool par = p == Polarity::Par;
    switch (pick(5)) {
      case 0: return leaf(Sort::Context);
      case 1: return bind1('x', [&](const std::string& x) { return mut(x, command(d - 1)); });
      case 2:
        if (par) return pair(context(d - 1), context(d - 1));
        return bind1('x', [&](const std::string& x1) {
          return bind1('x', [&](const std::string& x2) { return mupair(p, x1, x2, command(d - 1)); });
        });
      case 3:
        if (par) return box(term(d - 1));
        return bind1('a', [&](const std::string& a) { return mubox(p, a, command(d - 1)); });
      default:
        if (par) return pair(context(d - 1), leaf(Sort::Context));
        return leaf(Sort::Context);
    }
  }
};

}  // namespace

LTerm random_command(Polarity p, std::uint64_t seed, int depth, int params) {
  Gen g{p, std::mt19937_64(seed), params};
  return g.command(depth);
}

}  // namespace realg
