#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "realg/encodings.hpp"
#include "realg/sexpr.hpp"
#include "realg/structures.hpp"

namespace realg {

// Par: the negative fragment (pairs of contexts, call-by-name).
// Tens: the positive fragment (pairs of terms, call-by-value).
enum class Polarity { Par, Tens };
enum class Sort { Term, Context, Command };

std::string polarity_name(Polarity p);
Polarity parse_polarity(const std::string& s);

struct LNode;
using LTerm = std::shared_ptr<const LNode>;

struct LNode {
  enum class Tag {
    Var,     // x
    Covar,   // alpha
    Param,   // carrier element, term or context
    Cmd,     // <t || e>
    Mu,      // mu alpha.c (term)
    MuT,     // mu x.c (context)
    Pair,    // (e,e) in Par, (t,t) in Tens
    Box,     // [t] in Par, [e] in Tens
    MuPair,  // mu(a1,a2).c in Par, mu(x,y).c in Tens
    MuBox,   // mu[x].c in Par, mu[alpha].c in Tens
    Inst,    // forall-left hint around a context (Par)
    Witness  // exists-right hint around a value (Tens)
  };
  Tag tag = Tag::Var;
  Sort sort = Sort::Term;
  std::string n1, n2;   // variable name, binder names
  Elem param = 0;
  LTerm a, b;           // children; Cmd: a = term, b = context
  Formula ty1, ty2;     // binder annotations (optional)
  Formula hint;         // Cmd: cut formula; Inst/Witness: instance
};

class Stuck : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IllTyped : public std::runtime_error {
 public:
  IllTyped(std::string rule, std::string node, std::string expected, std::string found)
      : std::runtime_error(rule + ": " + node + " expected " + expected + ", found " + found),
        rule(std::move(rule)), node(std::move(node)), expected(std::move(expected)),
        found(std::move(found)) {}
  std::string rule, node, expected, found;
};

// -- constructors ------------------------------------------------------------
LTerm var(std::string x);
LTerm covar(std::string a);
LTerm param_term(Elem a);
LTerm param_context(Elem a);
LTerm cmd(LTerm t, LTerm e, Formula cut = nullptr);
LTerm mu(std::string a, LTerm c, Formula ty = nullptr);
LTerm mut(std::string x, LTerm c, Formula ty = nullptr);
LTerm pair(LTerm l, LTerm r);
LTerm box(LTerm x);
LTerm mupair(Polarity p, std::string a1, std::string a2, LTerm c, Formula t1 = nullptr,
             Formula t2 = nullptr);
LTerm mubox(Polarity p, std::string x, LTerm c, Formula ty = nullptr);
LTerm inst(Formula b, LTerm e);
LTerm witness(Formula b, LTerm v);

// -- lambda macros ------------------------------------------------------------
// Par:  u.e = ([u],e), lam x.t = mu(a,b).<mu[x].<t||b>||a>, t u = mu a.<t||u.a>
// Tens: u.e = mu[a].<(u,[e])||a>, lam x.t = [mu(x,x').<x'||mu[a].<t||a>>], t u as above
LTerm stack(Polarity p, LTerm u, LTerm e);
LTerm lam(Polarity p, const std::string& x, LTerm t);
LTerm app(Polarity p, LTerm t, LTerm u);
LTerm embed_cbn(const Lambda& t);
LTerm embed_cbv(const Lambda& t);

// -- syntax utilities -----------------------------------------------------------
// Free names, tagged 'x' (variables) or 'a' (covariables).
std::set<std::pair<char, std::string>> free_names(const LTerm& t);
bool is_closed(const LTerm& t);
bool is_value(Polarity p, const LTerm& t);
// Removes Inst/Witness hints.
LTerm erase_hints(const LTerm& t);

struct Subst {
  std::map<std::string, LTerm> vars, covars;
};
// Simultaneous capture-avoiding substitution.
LTerm substitute(const LTerm& t, const Subst& s);
LTerm subst_var(const LTerm& t, const std::string& x, const LTerm& by);
LTerm subst_covar(const LTerm& t, const std::string& a, const LTerm& by);

std::string to_string(const LTerm& t);
// Bound names replaced positionally; equal strings iff alpha-equivalent.
std::string canonical(const LTerm& t);
bool alpha_equal(const LTerm& a, const LTerm& b);
std::size_t node_count(const LTerm& t);

// -- parsing ---------------------------------------------------------------------
LTerm parse_subject(Polarity p, Sort s, const SExpr& e);
LTerm parse_subject(Polarity p, Sort s, const std::string& src);
Formula parse_formula(const SExpr& e);
Formula parse_formula(const std::string& src);
Lambda parse_lambda(const SExpr& e);
Lambda parse_lambda(const std::string& src);

// -- reduction ---------------------------------------------------------------------
struct StepResult {
  LTerm next;
  std::string rule;  // "neg", "mu-tilde", "mu", "pair", "expand"
};
std::optional<StepResult> try_step(Polarity p, const LTerm& c);
// Throws Stuck.
LTerm step(Polarity p, const LTerm& c);

struct Trace {
  std::vector<LTerm> commands;
  std::vector<std::string> rules;
  bool out_of_fuel = false;
};
Trace normalize(Polarity p, const LTerm& c, int fuel);

// One-step reducts anywhere, including under binders.
std::vector<LTerm> all_reducts(Polarity p, const LTerm& c);
// Common reduct reachable from both within `fuel` full steps each.
bool joinable(Polarity p, const LTerm& c1, const LTerm& c2, int fuel);

// -- typing ---------------------------------------------------------------------
using TypeCtx = std::vector<std::pair<std::string, Formula>>;

struct TypedSequent {
  TypeCtx gamma, delta;
  LTerm subject;
  Formula type;  // null for commands
};

struct Derivation {
  std::string rule;
  std::string sequent;
  std::vector<Derivation> premises;
  std::size_t size() const;
  std::string render(int indent = 0) const;
};

// Arrows expand to the polarity's primitives.
Formula expand_arrows(Polarity p, const Formula& f);
// Throws IllTyped.
Derivation typecheck(Polarity p, const TypedSequent& s);

// -- interpretation -------------------------------------------------------------
struct Valuation {
  std::map<std::string, Elem> vars, covars, types;
};

using CommandValue = std::pair<Elem, Elem>;

// Terms and contexts. Throws KindMismatch, OpenTerm.
Elem interpret(const Structure& s, Polarity p, const LTerm& t, const Valuation& v = {});
CommandValue interpret_command(const Structure& s, Polarity p, const LTerm& c,
                               const Valuation& v = {});
inline bool in_pole(const Structure& s, CommandValue c) { return s.leq(c.first, c.second); }
// c1 in the pole implies c2 in the pole.
bool command_order(const Structure& s, CommandValue c1, CommandValue c2);

// Slot-compiled form for repeated evaluation over many structures. Free
// names take slots 0..k-1 in the order of free(); binder values are memoized
// on the values of their free slots.
class CompiledSubject {
 public:
  CompiledSubject(Polarity p, const LTerm& t);

  const std::vector<std::pair<char, std::string>>& free() const { return free_; }
  Sort sort() const { return sort_; }
  // Terms and contexts.
  Elem eval(const Structure& s, const std::vector<Elem>& env = {}) const;
  CommandValue eval_command(const Structure& s, const std::vector<Elem>& env = {}) const;

  struct Node {
    LNode::Tag tag;
    int a = -1, b = -1;
    int s1 = -1, s2 = -1;
    Elem param = 0;
    std::vector<int> fv;
  };

 private:
  Polarity p_;
  Sort sort_;
  int slots_ = 0;
  int root_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::pair<char, std::string>> free_;
};

struct AdequacyResult {
  bool ok = true;
  bool sigma_valid = true;
  std::string failing;
};
// Checks the conclusion of the sequent under sigma. When sigma does not
// realize the contexts the result is vacuously ok with sigma_valid = false.
AdequacyResult check_adequacy(const Structure& s, Polarity p, const TypedSequent& seq,
                              const Valuation& sigma);
// All valuations of the free names and type variables; counts valid ones.
AdequacyResult check_adequacy_all(const Structure& s, Polarity p, const TypedSequent& seq,
                                  std::size_t* valid_count = nullptr);

// Seeded closed-command generator used by property sweeps.
LTerm random_command(Polarity p, std::uint64_t seed, int depth, int params);

}  // namespace realg
