#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "realg/structures.hpp"

namespace realg {

using StructurePtr = std::shared_ptr<const Structure>;

// Clause ids: upward-closure, combinator:<name>, modus-ponens,
// neg-deduction, tensor-closure, classical.
class ClauseViolation : public std::runtime_error {
 public:
  explicit ClauseViolation(AxiomReport r)
      : std::runtime_error(r.describe()), report(std::move(r)) {}
  const std::string& clause() const { return report.axiom; }
  AxiomReport report;
};

// Immutable once built. Flags are computed from the member set.
class Separator {
 public:
  Separator() = default;
  Separator(StructurePtr s, ElemSet members);

  const Structure& structure() const { return *s_; }
  const StructurePtr& structure_ptr() const { return s_; }
  Kind kind() const { return s_->kind(); }
  const ElemSet& members() const { return m_; }
  bool contains(Elem a) const { return m_.contains(a); }
  int size() const { return m_.count(); }
  bool classical() const { return classical_; }
  bool consistent() const { return !m_.contains(s_->bottom()); }

  bool operator==(const Separator& o) const { return *s_ == *o.s_ && m_ == o.m_; }

 private:
  StructurePtr s_;
  ElemSet m_;
  bool classical_ = false;
};

// The combinators a separator of this kind must contain.
std::vector<std::string> required_combinators(Kind k, bool classical);

// Implicative/disjunctive: cc in S. Conjunctive: not-not-a in S gives a in S.
bool classical_set(const Structure& s, const ElemSet& m);

AxiomReport check_separator_report(const Structure& s, const ElemSet& m, bool classical);
// Throws ClauseViolation.
Separator check_separator(StructurePtr s, ElemSet m, bool classical = false);

// Least separator containing the generators.
Separator generate_separator(StructurePtr s, const ElemSet& generators, bool classical = false);

// {a : not-not-a in S}, for conjunctive separators.
Separator classical_completion(const Separator& sep);

// One instance of the meet-indexed deduction rules. Returns false only when
// the premises hold and the conclusion fails.
bool indexed_deduction(const Separator& sep, const std::vector<Elem>& a, const std::vector<Elem>& b);

// Lattice filters (up-closed, meet-closed, containing top).
bool is_filter(const FiniteLattice& L, const ElemSet& m);

}  // namespace realg
