#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "realg/separators.hpp"

namespace realg {

class LawViolation : public std::runtime_error {
 public:
  explicit LawViolation(AxiomReport r)
      : std::runtime_error(r.describe()), report(std::move(r)) {}
  AxiomReport report;
};

// Carrier modulo mutual entailment. Classes are numbered by their least
// element id; tables are indexed by class.
struct QuotientHA {
  int classes = 0;
  std::vector<int> class_of;
  std::vector<std::vector<Elem>> members;
  std::vector<char> order;  // order[x * classes + y]: x <=_H y
  std::vector<int> meet, join, imp;
  int top = 0, bottom = 0;

  bool leq(int x, int y) const { return order[x * classes + y] != 0; }
  Elem rep(int c) const { return members[c].front(); }
};

// Heyting laws on a built quotient; also checks the operations respect classes.
AxiomReport check_heyting(const Separator& sep, const QuotientHA& q);
// Throws LawViolation.
QuotientHA quotient(const Separator& sep);

using Family = std::vector<Elem>;
// A map J -> I, as the vector of images.
using IndexMap = std::vector<int>;

// A^I / S[I] for small finite I. Families over I x J are stored row-major,
// index i * |J| + j.
class FiniteTripos {
 public:
  // Conjunctive algebras must be classical; throws std::invalid_argument.
  explicit FiniteTripos(Separator sep);

  const Separator& separator() const { return sep_; }
  const Structure& structure() const { return sep_.structure(); }
  int size() const { return n_; }

  // Exact: scans s in S.
  bool uniform_member(const Family& a) const;
  // Same test through the meet of the family.
  bool uniform_member_fast(const Family& a) const { return sep_.contains(meet_of(a)); }
  // Pointwise: every a_i in S.
  bool product_member(const Family& a) const;

  bool entails(const Family& a, const Family& b) const;
  bool equivalent(const Family& a, const Family& b) const {
    return entails(a, b) && entails(b, a);
  }

  // Least family (lexicographic on ids) in the class of a.
  Family canonical(const Family& a) const;

  Family reindex(const IndexMap& f, const Family& a) const;
  // T(pi) for pi : I x J -> I.
  Family weaken(const Family& psi, int nj) const;
  Family exists_along(const Family& a, int ni, int nj) const;
  Family forall_along(const Family& a, int ni, int nj) const;
  // Diagonal i -> (i,i).
  Family diagonal(const Family& a, int ni) const;

  Family equality(int ni) const;
  // The variant with bot -> top off the diagonal.
  Family equality_bot_top(int ni) const;
  Family top_family(int ni) const { return Family(ni, structure().top()); }

  Family meet_h(const Family& a, const Family& b) const;
  Family join_h(const Family& a, const Family& b) const;
  Family imp_h(const Family& a, const Family& b) const;

  // Prop = carrier, tr = identity family.
  Family generic() const;

  Elem meet_of(const Family& a) const;
  // Quantifiers over one row of length nj. Conjunctive: the join, and
  // neg of the join of negations. Otherwise: meet over c of
  // (meet_j (a_j -> c)) -> c, and the meet.
  Elem exists_row(const Elem* row, int nj) const;
  Elem forall_row(const Elem* row, int nj) const;

 private:
  Separator sep_;
  int n_ = 0;
  std::vector<Elem> prod_, sum_;
};

// Every family of A^I, in lexicographic order.
std::vector<Family> all_families(int n, int ni);
// Every map from a set of size nj to a set of size ni.
std::vector<IndexMap> all_maps(int nj, int ni);

struct ClauseResult {
  std::string clause;
  bool ok = true;
  std::string witness;
  long long checked = 0;
};

// Hyperdoctrine clauses for fixed index sizes.
ClauseResult check_functoriality(const FiniteTripos& t, int ni, int nj, int nk);
ClauseResult check_exists_adjunction(const FiniteTripos& t, int ni, int nj);
ClauseResult check_forall_adjunction(const FiniteTripos& t, int ni, int nj);
ClauseResult check_equality(const FiniteTripos& t, int ni, bool bot_top_variant = false);
ClauseResult check_generic_predicate(const FiniteTripos& t, int ni);
ClauseResult check_beck_chevalley(const FiniteTripos& t, const IndexMap& s, int ni2, int nj);
ClauseResult check_beck_chevalley_all(const FiniteTripos& t, int ni, int ni2, int nj);
// Heyting adjunction in T(I) and compatibility of the pointwise operations
// with reindexing along every f : J -> I.
ClauseResult check_heyting_reindex(const FiniteTripos& t, int ni, int nj);

// All clauses with index sets of size 0..imax.
std::vector<ClauseResult> check_tripos(const FiniteTripos& t, int imax);

}  // namespace realg
