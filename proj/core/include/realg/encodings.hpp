#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "realg/structures.hpp"

namespace realg {

class Separator;

class KindMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OpenTerm : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Pure lambda-terms with de Bruijn indices and carrier parameters.

struct LambdaNode;
using Lambda = std::shared_ptr<const LambdaNode>;

struct LambdaNode {
  enum class Tag { Var, Lam, App, Param };
  Tag tag = Tag::Var;
  int index = 0;      // Var
  Elem param = 0;     // Param
  std::string name;   // Lam: binder name, kept for printing
  Lambda body, arg;   // Lam: body; App: body = function, arg = argument
};

Lambda lvar(int index);
Lambda llam(Lambda body, std::string name = "x");
Lambda lapp(Lambda f, Lambda a);
Lambda lparam(Elem a);

bool is_closed(const Lambda& t, int depth = 0);
std::string to_string(const Lambda& t);

// K = \x y. x, S = \x y z. x z (y z), I = \x. x, and so on.
Lambda lambda_K();
Lambda lambda_S();
Lambda lambda_I();

// ab = meet{c : a <= b -> c} and its double-negated conjunctive variant.
Elem app_implicative(const Structure& s, Elem a, Elem b);
Elem app_conjunctive(const Structure& c, Elem a, Elem b);
// meet over the carrier of a -> f(a), with the structure's arrow.
Elem abs_meet(const Structure& s, const std::function<Elem(Elem)>& f);

// Implicative (or disjunctive through its induced arrow).
Elem interpret_lambda_implicative(const Structure& s, const Lambda& t);
Elem interpret_lambda_conjunctive(const Structure& c, const Lambda& t);
// Dispatches on the structure kind.
Elem interpret_lambda(const Structure& s, const Lambda& t);

// ---------------------------------------------------------------------------
// Second-order formulas with parameters.

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  enum class Tag { Param, Var, Neg, Par, Tens, Arrow, Forall, Exists };
  Tag tag = Tag::Param;
  Elem param = 0;
  std::string name;  // Var, or the bound variable of a quantifier
  Formula left, right;
};

Formula fparam(Elem a);
Formula fvar(std::string name);
Formula fneg(Formula a);
Formula fpar(Formula a, Formula b);
Formula ftens(Formula a, Formula b);
Formula farrow(Formula a, Formula b);
Formula fforall(std::string x, Formula body);
Formula fexists(std::string x, Formula body);

std::set<std::string> free_type_vars(const Formula& f);
// Capture-avoiding substitution of a formula for a type variable.
Formula subst_formula(const Formula& f, const std::string& x, const Formula& by);
bool alpha_equal(const Formula& a, const Formula& b);
std::string to_string(const Formula& f);

// Throws KindMismatch (par outside disjunctive, tensor outside conjunctive)
// and OpenTerm for unbound type variables.
Elem interpret_formula(const Structure& s, const Formula& f,
                       const std::map<std::string, Elem>& env = {});

// ---------------------------------------------------------------------------
// Named combinators: K, S, cc, PS1..PS5, TS1..TS5.

std::vector<std::string> combinator_names();
Elem combinator(const Structure& s, const std::string& name);

// ---------------------------------------------------------------------------
// Entailment and internal connectives; the separator fixes the structure.

bool entails(const Separator& sep, Elem a, Elem b);
bool entails_neg(const Separator& sep, Elem a, Elem b);
bool equivalent(const Separator& sep, Elem a, Elem b);

struct HeytingOps {
  Elem product, sum, arrow, negation;
};
HeytingOps heyting_ops(const Structure& s, Elem a, Elem b);

// a <> b = join{c : a <= neg(b tensor c)}.
Elem diamond(const Structure& c, Elem a, Elem b);

}  // namespace realg
