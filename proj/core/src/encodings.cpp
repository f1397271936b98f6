#include "realg/encodings.hpp"

#include "realg/separators.hpp"

namespace realg {

Lambda lvar(int index) {
  auto n = std::make_shared<LambdaNode>();
  n->tag = LambdaNode::Tag::Var;
  n->index = index;
  return n;
}

Lambda llam(Lambda body, std::string name) {
  auto n = std::make_shared<LambdaNode>();
  n->tag = LambdaNode::Tag::Lam;
  n->body = std::move(body);
  n->name = std::move(name);
  return n;
}

Lambda lapp(Lambda f, Lambda a) {
  auto n = std::make_shared<LambdaNode>();
  n->tag = LambdaNode::Tag::App;
  n->body = std::move(f);
  n->arg = std::move(a);
  return n;
}

Lambda lparam(Elem a) {
  auto n = std::make_shared<LambdaNode>();
  n->tag = LambdaNode::Tag::Param;
  n->param = a;
  return n;
}

bool is_closed(const Lambda& t, int depth) {
  switch (t->tag) {
    case LambdaNode::Tag::Var: return t->index < depth;
    case LambdaNode::Tag::Lam: return is_closed(t->body, depth + 1);
    case LambdaNode::Tag::App: return is_closed(t->body, depth) && is_closed(t->arg, depth);
    case LambdaNode::Tag::Param: return true;
  }
  return false;
}

namespace {

std::string show(const Lambda& t, std::vector<std::string>& names) {
  switch (t->tag) {
    case LambdaNode::Tag::Var: {
      int i = static_cast<int>(names.size()) - 1 - t->index;
      if (i < 0) return "#" + std::to_string(t->index);
      return names[i];
    }
    case LambdaNode::Tag::Lam: {
      std::string nm = t->name;
      // suffix shadowed binders so printing stays unambiguous
      int k = 0;
      auto taken = [&](const std::string& s) {
        for (auto& x : names)
          if (x == s) return true;
        return false;
      };
      while (taken(nm)) nm = t->name + std::to_string(++k);
      names.push_back(nm);
      std::string r = "(lam " + nm + " " + show(t->body, names) + ")";
      names.pop_back();
      return r;
    }
    case LambdaNode::Tag::App:
      return "(app " + show(t->body, names) + " " + show(t->arg, names) + ")";
    case LambdaNode::Tag::Param: return "(par " + std::to_string(t->param) + ")";
  }
  return "?";
}

}  // namespace

std::string to_string(const Lambda& t) {
  std::vector<std::string> names;
  return show(t, names);
}

Lambda lambda_K() { return llam(llam(lvar(1), "y"), "x"); }
Lambda lambda_S() {
  return llam(llam(llam(lapp(lapp(lvar(2), lvar(0)), lapp(lvar(1), lvar(0))), "z"), "y"), "x");
}
Lambda lambda_I() { return llam(lvar(0), "x"); }

Elem app_implicative(const Structure& s, Elem a, Elem b) {
  Elem r = s.top();
  for (Elem c = 0; c < s.size(); ++c)
    if (s.leq(a, s.arrow(b, c))) r = s.meet(r, c);
  return r;
}

Elem app_conjunctive(const Structure& c, Elem a, Elem b) {
  Elem r = c.top();
  for (Elem x = 0; x < c.size(); ++x)
    if (c.leq(a, c.arrow(b, x))) r = c.meet(r, c.neg(c.neg(x)));
  return r;
}

Elem abs_meet(const Structure& s, const std::function<Elem(Elem)>& f) {
  Elem r = s.top();
  for (Elem a = 0; a < s.size(); ++a) r = s.meet(r, s.arrow(a, f(a)));
  return r;
}

namespace {

template <class App>
Elem eval_lambda(const Structure& s, const Lambda& t, std::vector<Elem>& env, App app) {
  switch (t->tag) {
    case LambdaNode::Tag::Var: {
      int i = static_cast<int>(env.size()) - 1 - t->index;
      if (i < 0) throw OpenTerm("unbound variable #" + std::to_string(t->index));
      return env[i];
    }
    case LambdaNode::Tag::Param:
      if (t->param < 0 || t->param >= s.size()) throw OpenTerm("parameter out of range");
      return t->param;
    case LambdaNode::Tag::App: {
      Elem f = eval_lambda(s, t->body, env, app);
      Elem a = eval_lambda(s, t->arg, env, app);
      return app(f, a);
    }
    case LambdaNode::Tag::Lam:
      return abs_meet(s, [&](Elem a) {
        env.push_back(a);
        Elem v = eval_lambda(s, t->body, env, app);
        env.pop_back();
        return v;
      });
  }
  return s.top();
}

}  // namespace

Elem interpret_lambda_implicative(const Structure& s, const Lambda& t) {
  if (!is_closed(t)) throw OpenTerm("term is not closed: " + to_string(t));
  std::vector<Elem> env;
  return eval_lambda(s, t, env, [&](Elem a, Elem b) { return app_implicative(s, a, b); });
}

Elem interpret_lambda_conjunctive(const Structure& c, const Lambda& t) {
  if (c.kind() != Kind::Conjunctive) throw KindMismatch("conjunctive structure expected");
  if (!is_closed(t)) throw OpenTerm("term is not closed: " + to_string(t));
  std::vector<Elem> env;
  return eval_lambda(c, t, env, [&](Elem a, Elem b) { return app_conjunctive(c, a, b); });
}

Elem interpret_lambda(const Structure& s, const Lambda& t) {
  return s.kind() == Kind::Conjunctive ? interpret_lambda_conjunctive(s, t)
                                       : interpret_lambda_implicative(s, t);
}

// ---------------------------------------------------------------------------

namespace {

Formula mk(FormulaNode::Tag tag, Formula l = nullptr, Formula r = nullptr, std::string name = {},
           Elem p = 0) {
  auto n = std::make_shared<FormulaNode>();
  n->tag = tag;
  n->left = std::move(l);
  n->right = std::move(r);
  n->name = std::move(name);
  n->param = p;
  return n;
}

using FT = FormulaNode::Tag;

}  // namespace

Formula fparam(Elem a) { return mk(FT::Param, nullptr, nullptr, {}, a); }
Formula fvar(std::string name) { return mk(FT::Var, nullptr, nullptr, std::move(name)); }
Formula fneg(Formula a) { return mk(FT::Neg, std::move(a)); }
Formula fpar(Formula a, Formula b) { return mk(FT::Par, std::move(a), std::move(b)); }
Formula ftens(Formula a, Formula b) { return mk(FT::Tens, std::move(a), std::move(b)); }
Formula farrow(Formula a, Formula b) { return mk(FT::Arrow, std::move(a), std::move(b)); }
Formula fforall(std::string x, Formula body) { return mk(FT::Forall, std::move(body), nullptr, std::move(x)); }
Formula fexists(std::string x, Formula body) { return mk(FT::Exists, std::move(body), nullptr, std::move(x)); }

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f->tag) {
    case FT::Param: return;
    case FT::Var:
      if (!bound.count(f->name)) out.insert(f->name);
      return;
    case FT::Neg: collect_free(f->left, bound, out); return;
    case FT::Par:
    case FT::Tens:
    case FT::Arrow:
      collect_free(f->left, bound, out);
      collect_free(f->right, bound, out);
      return;
    case FT::Forall:
    case FT::Exists: {
      bool had = bound.count(f->name) > 0;
      bound.insert(f->name);
      collect_free(f->left, bound, out);
      if (!had) bound.erase(f->name);
      return;
    }
  }
}

std::set<std::string> all_names(const Formula& f) {
  std::set<std::string> out;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    auto g = stack.back();
    stack.pop_back();
    if (g->tag == FT::Var || g->tag == FT::Forall || g->tag == FT::Exists) out.insert(g->name);
    if (g->left) stack.push_back(g->left);
    if (g->right) stack.push_back(g->right);
  }
  return out;
}

}  // namespace

std::set<std::string> free_type_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

Formula subst_formula(const Formula& f, const std::string& x, const Formula& by) {
  switch (f->tag) {
    case FT::Param: return f;
    case FT::Var: return f->name == x ? by : f;
    case FT::Neg: return fneg(subst_formula(f->left, x, by));
    case FT::Par:
    case FT::Tens:
    case FT::Arrow:
      return mk(f->tag, subst_formula(f->left, x, by), subst_formula(f->right, x, by));
    case FT::Forall:
    case FT::Exists: {
      if (f->name == x) return f;
      auto fv_by = free_type_vars(by);
      if (!fv_by.count(f->name)) return mk(f->tag, subst_formula(f->left, x, by), nullptr, f->name);
      auto used = all_names(f->left);
      used.merge(all_names(by));
      used.insert(x);
      std::string y = f->name;
      int k = 0;
      while (used.count(y)) y = f->name + "'" + std::to_string(++k);
      auto body = subst_formula(f->left, f->name, fvar(y));
      return mk(f->tag, subst_formula(body, x, by), nullptr, y);
    }
  }
  return f;
}

namespace {

bool alpha_eq(const Formula& a, const Formula& b, std::vector<std::pair<std::string, std::string>>& bind) {
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case FT::Param: return a->param == b->param;
    case FT::Var: {
      for (auto it = bind.rbegin(); it != bind.rend(); ++it) {
        bool l = it->first == a->name, r = it->second == b->name;
        if (l || r) return l && r;
      }
      return a->name == b->name;
    }
    case FT::Neg: return alpha_eq(a->left, b->left, bind);
    case FT::Par:
    case FT::Tens:
    case FT::Arrow: return alpha_eq(a->left, b->left, bind) && alpha_eq(a->right, b->right, bind);
    case FT::Forall:
    case FT::Exists: {
      bind.emplace_back(a->name, b->name);
      bool r = alpha_eq(a->left, b->left, bind);
      bind.pop_back();
      return r;
    }
  }
  return false;
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  std::vector<std::pair<std::string, std::string>> bind;
  return alpha_eq(a, b, bind);
}

std::string to_string(const Formula& f) {
  switch (f->tag) {
    case FT::Param: return "(par " + std::to_string(f->param) + ")";
    case FT::Var: return f->name;
    case FT::Neg: return "(neg " + to_string(f->left) + ")";
    case FT::Par: return "(parr " + to_string(f->left) + " " + to_string(f->right) + ")";
    case FT::Tens: return "(tens " + to_string(f->left) + " " + to_string(f->right) + ")";
    case FT::Arrow: return "(arr " + to_string(f->left) + " " + to_string(f->right) + ")";
    case FT::Forall: return "(forall " + f->name + " " + to_string(f->left) + ")";
    case FT::Exists: return "(exists " + f->name + " " + to_string(f->left) + ")";
  }
  return "?";
}

Elem interpret_formula(const Structure& s, const Formula& f, const std::map<std::string, Elem>& env) {
  switch (f->tag) {
    case FT::Param:
      if (f->param < 0 || f->param >= s.size()) throw OpenTerm("parameter out of range");
      return f->param;
    case FT::Var: {
      auto it = env.find(f->name);
      if (it == env.end()) throw OpenTerm("unbound type variable " + f->name);
      return it->second;
    }
    case FT::Neg: return s.neg(interpret_formula(s, f->left, env));
    case FT::Par:
      if (s.kind() != Kind::Disjunctive) throw KindMismatch("parr needs a disjunctive structure");
      return s.par(interpret_formula(s, f->left, env), interpret_formula(s, f->right, env));
    case FT::Tens:
      if (s.kind() != Kind::Conjunctive) throw KindMismatch("tens needs a conjunctive structure");
      return s.tensor(interpret_formula(s, f->left, env), interpret_formula(s, f->right, env));
    case FT::Arrow:
      return s.arrow(interpret_formula(s, f->left, env), interpret_formula(s, f->right, env));
    case FT::Forall:
    case FT::Exists: {
      auto e = env;
      bool all = f->tag == FT::Forall;
      Elem r = all ? s.top() : s.bottom();
      for (Elem a = 0; a < s.size(); ++a) {
        e[f->name] = a;
        Elem v = interpret_formula(s, f->left, e);
        r = all ? s.meet(r, v) : s.join(r, v);
      }
      return r;
    }
  }
  return s.top();
}

// ---------------------------------------------------------------------------

std::vector<std::string> combinator_names() {
  return {"K", "S", "cc", "PS1", "PS2", "PS3", "PS4", "PS5",
          "TS1", "TS2", "TS3", "TS4", "TS5"};
}

Elem combinator(const Structure& s, const std::string& name) {
  const int n = s.size();
  auto ar = [&](Elem a, Elem b) { return s.arrow(a, b); };
  Elem r = s.top();
  auto acc = [&](Elem x) { r = s.meet(r, x); };
  if (name == "K") {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) acc(ar(a, ar(b, a)));
    return r;
  }
  if (name == "S") {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          acc(ar(ar(a, ar(b, c)), ar(ar(a, b), ar(a, c))));
    return r;
  }
  if (name == "cc") {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) acc(ar(ar(ar(a, b), a), a));
    return r;
  }
  if (name.rfind("PS", 0) == 0) {
    if (s.kind() != Kind::Disjunctive) throw KindMismatch(name + " needs a disjunctive structure");
    auto p = [&](Elem a, Elem b) { return s.par(a, b); };
    if (name == "PS1") {
      for (Elem a = 0; a < n; ++a) acc(ar(p(a, a), a));
    } else if (name == "PS2") {
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) acc(ar(a, p(a, b)));
    } else if (name == "PS3") {
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) acc(ar(p(a, b), p(b, a)));
    } else if (name == "PS4") {
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
          for (Elem c = 0; c < n; ++c) acc(ar(ar(a, b), ar(p(c, a), p(c, b))));
    } else if (name == "PS5") {
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
          for (Elem c = 0; c < n; ++c) acc(ar(p(a, p(b, c)), p(p(a, b), c)));
    } else {
      throw KindMismatch("unknown combinator " + name);
    }
    return r;
  }
  if (name.rfind("TS", 0) == 0) {
    if (s.kind() != Kind::Conjunctive) throw KindMismatch(name + " needs a conjunctive structure");
    auto t = [&](Elem a, Elem b) { return s.tensor(a, b); };
    auto ng = [&](Elem a) { return s.neg(a); };
    if (name == "TS1") {
      for (Elem a = 0; a < n; ++a) acc(ng(t(ng(t(a, a)), a)));
    } else if (name == "TS2") {
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) acc(ng(t(ng(a), t(a, b))));
    } else if (name == "TS3") {
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) acc(ng(t(ng(t(a, b)), t(b, a))));
    } else if (name == "TS4") {
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
          for (Elem c = 0; c < n; ++c) acc(ng(t(ng(t(ng(a), b)), t(ng(t(c, a)), t(c, b)))));
    } else if (name == "TS5") {
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
          for (Elem c = 0; c < n; ++c) acc(ng(t(ng(t(a, t(b, c))), t(t(a, b), c))));
    } else {
      throw KindMismatch("unknown combinator " + name);
    }
    return r;
  }
  throw KindMismatch("unknown combinator " + name);
}

// ---------------------------------------------------------------------------

bool entails(const Separator& sep, Elem a, Elem b) {
  return sep.contains(sep.structure().arrow(a, b));
}

bool entails_neg(const Separator& sep, Elem a, Elem b) {
  const auto& s = sep.structure();
  if (s.kind() != Kind::Conjunctive) throw KindMismatch("entails_neg needs a conjunctive algebra");
  return sep.contains(s.neg(s.tensor(a, b)));
}

bool equivalent(const Separator& sep, Elem a, Elem b) {
  return entails(sep, a, b) && entails(sep, b, a);
}

HeytingOps heyting_ops(const Structure& s, Elem a, Elem b) {
  HeytingOps h{};
  h.arrow = s.arrow(a, b);
  h.negation = s.kind() == Kind::Implicative ? s.arrow(a, s.bottom()) : s.neg(a);
  if (s.kind() == Kind::Conjunctive) {
    h.product = s.tensor(a, b);
    h.sum = s.neg(s.tensor(s.neg(a), s.neg(b)));
    return h;
  }
  Elem prod = s.top(), sum = s.top();
  for (Elem c = 0; c < s.size(); ++c) {
    prod = s.meet(prod, s.arrow(s.arrow(a, s.arrow(b, c)), c));
    sum = s.meet(sum, s.arrow(s.arrow(a, c), s.arrow(s.arrow(b, c), c)));
  }
  h.product = prod;
  h.sum = sum;
  return h;
}

Elem diamond(const Structure& c, Elem a, Elem b) {
  if (c.kind() != Kind::Conjunctive) throw KindMismatch("diamond needs a conjunctive structure");
  Elem r = c.bottom();
  for (Elem x = 0; x < c.size(); ++x)
    if (c.leq(a, c.neg(c.tensor(b, x)))) r = c.join(r, x);
  return r;
}

}  // namespace realg
