#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "realg/lattice.hpp"

namespace realg {

enum class Kind { Implicative, Disjunctive, Conjunctive };

std::string kind_name(Kind k);
Kind parse_kind(const std::string& s);

struct AxiomReport {
  bool ok = true;
  std::string axiom;
  std::vector<Elem> witness;
  std::string message;

  static AxiomReport pass() { return {}; }
  static AxiomReport fail(std::string axiom, std::vector<Elem> w, std::string msg) {
    return {false, std::move(axiom), std::move(w), std::move(msg)};
  }
  std::string describe() const;
};

class AxiomViolation : public std::runtime_error {
 public:
  explicit AxiomViolation(AxiomReport r)
      : std::runtime_error(r.describe()), report(std::move(r)) {}
  AxiomReport report;
};

using LatticePtr = std::shared_ptr<const FiniteLattice>;

// A lattice together with its internal law: the arrow (implicative), the par
// and negation (disjunctive) or the tensor and negation (conjunctive).
// Construction does not check the axioms; use the check_* functions.
class Structure {
 public:
  Structure() = default;
  Structure(Kind kind, LatticePtr lat, std::vector<Elem> law, std::vector<Elem> neg);

  Kind kind() const { return kind_; }
  const FiniteLattice& lattice() const { return *lat_; }
  const LatticePtr& lattice_ptr() const { return lat_; }
  int size() const { return n_; }

  Elem law(Elem a, Elem b) const { return law_[a * n_ + b]; }
  Elem par(Elem a, Elem b) const;
  Elem tensor(Elem a, Elem b) const;
  // The primitive negation; for implicative structures a -> bottom.
  Elem neg(Elem a) const { return neg_[a]; }
  // Kind-appropriate arrow: primitive, ¬a⅋b, or ¬(a⊗¬b).
  Elem arrow(Elem a, Elem b) const { return arrow_[a * n_ + b]; }

  bool leq(Elem a, Elem b) const { return lat_->leq(a, b); }
  Elem top() const { return lat_->top(); }
  Elem bottom() const { return lat_->bottom(); }
  Elem meet(Elem a, Elem b) const { return lat_->meet(a, b); }
  Elem join(Elem a, Elem b) const { return lat_->join(a, b); }

  const std::vector<Elem>& law_table() const { return law_; }
  const std::vector<Elem>& neg_table() const { return neg_; }

  bool operator==(const Structure& o) const {
    return kind_ == o.kind_ && *lat_ == *o.lat_ && law_ == o.law_ && neg_ == o.neg_;
  }

 private:
  Kind kind_ = Kind::Implicative;
  LatticePtr lat_;
  int n_ = 0;
  std::vector<Elem> law_, neg_, arrow_;
};

AxiomReport check_implicative_report(const FiniteLattice& L, const std::vector<Elem>& arrow);
AxiomReport check_disjunctive_report(const FiniteLattice& L, const std::vector<Elem>& par,
                                     const std::vector<Elem>& neg);
AxiomReport check_conjunctive_report(const FiniteLattice& L, const std::vector<Elem>& tensor,
                                     const std::vector<Elem>& neg);
AxiomReport check_structure(const Structure& s);

// Throw AxiomViolation on failure.
Structure check_implicative(LatticePtr L, std::vector<Elem> arrow);
Structure check_disjunctive(LatticePtr L, std::vector<Elem> par, std::vector<Elem> neg);
Structure check_conjunctive(LatticePtr L, std::vector<Elem> tensor, std::vector<Elem> neg);

// Distributivity and commutation over every subset of the carrier. Only for
// carriers up to 12 elements.
AxiomReport full_subset_sweep(const Structure& s);

Structure implicative_from_disjunctive(const Structure& d);
Elem arrow_conjunctive(const Structure& c, Elem a, Elem b);

// Catalogue constructors.
Structure dummy_disjunctive(LatticePtr L);
Structure dummy_conjunctive(LatticePtr L);
Structure top_arrow_implicative(LatticePtr L);
// Heyting implication; requires a distributive lattice.
Structure heyting_implicative(LatticePtr L);
Structure boolean_implicative(int atoms);
Structure boolean_disjunctive(int atoms);
Structure boolean_conjunctive(int atoms);

// Exhaustive enumeration of all structures of a kind on a small lattice
// (carrier <= 5). `limit` caps the output (0 = no cap).
std::vector<Structure> enumerate_structures(Kind k, LatticePtr L, std::size_t limit = 0);
std::size_t count_structures(Kind k, const LatticePtr& L);

}  // namespace realg
