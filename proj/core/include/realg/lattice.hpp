#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "realg/elemset.hpp"

namespace realg {

// Carrier bound for structure-level sweeps. Defaults to 64, overridable via
// REALG_MAX_CARRIER or set_max_carrier (the latter wins).
int max_carrier();
void set_max_carrier(int n);

class LatticeError : public std::runtime_error {
 public:
  enum class Code { NotAPartialOrder, NotALattice, TooLarge, Empty };
  LatticeError(Code c, std::string axiom, std::vector<Elem> witness,
               const std::string& msg)
      : std::runtime_error(msg), code(c), axiom(std::move(axiom)),
        witness(std::move(witness)) {}
  Code code;
  std::string axiom;
  std::vector<Elem> witness;
};

class FiniteLattice {
 public:
  FiniteLattice() = default;

  int size() const { return n_; }
  bool leq(Elem a, Elem b) const { return leq_[a * n_ + b] != 0; }
  Elem top() const { return top_; }
  Elem bottom() const { return bot_; }
  Elem meet(Elem a, Elem b) const { return meet_[a * n_ + b]; }
  Elem join(Elem a, Elem b) const { return join_[a * n_ + b]; }

  Elem meet(const ElemSet& s) const {
    Elem r = top_;
    s.for_each([&](Elem x) { r = meet(r, x); });
    return r;
  }
  Elem join(const ElemSet& s) const {
    Elem r = bot_;
    s.for_each([&](Elem x) { r = join(r, x); });
    return r;
  }
  template <class It>
  Elem meet(It first, It last) const {
    Elem r = top_;
    for (; first != last; ++first) r = meet(r, *first);
    return r;
  }
  template <class It>
  Elem join(It first, It last) const {
    Elem r = bot_;
    for (; first != last; ++first) r = join(r, *first);
    return r;
  }

  const std::string& label(Elem a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  // Looks an element up by label or decimal id; -1 when absent.
  Elem find(const std::string& name) const;

  // Same carrier, opposite order.
  FiniteLattice reversed() const;

  // Covering pairs (a,b): a < b with nothing strictly between, sorted.
  std::vector<std::pair<Elem, Elem>> covers() const;

  ElemSet up_set(Elem a) const;
  ElemSet down_set(Elem a) const;
  ElemSet up_closure(const ElemSet& s) const;

  bool distributive() const;

  bool operator==(const FiniteLattice& o) const {
    return n_ == o.n_ && leq_ == o.leq_;
  }

  friend FiniteLattice validate_lattice(const std::vector<std::vector<bool>>&,
                                        std::vector<std::string>);

 private:
  int n_ = 0;
  Elem top_ = 0, bot_ = 0;
  std::vector<char> leq_;
  std::vector<Elem> meet_, join_;
  std::vector<std::string> labels_;
};

// Throws LatticeError on failure.
FiniteLattice validate_lattice(const std::vector<std::vector<bool>>& leq,
                               std::vector<std::string> labels = {});

// Reflexive-transitive closure of the given pairs, then validation.
FiniteLattice lattice_from_pairs(int n,
                                 const std::vector<std::pair<Elem, Elem>>& le,
                                 std::vector<std::string> labels = {});

FiniteLattice chain(int n);

struct BooleanAlgebra {
  int atoms = 0;
  FiniteLattice lattice;
  std::vector<Elem> complement;
};

// Element id = bitmask of atoms. Throws TooLarge above the carrier bound.
BooleanAlgebra boolean_algebra(int k);

// Lattices with exactly n elements, one per isomorphism class (n <= 6).
std::vector<FiniteLattice> enumerate_lattices(int n);
// All lattices with 1..n elements.
std::vector<FiniteLattice> enumerate_lattices_up_to(int n);

}  // namespace realg
