#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "realg/separators.hpp"
#include "realg/tripos.hpp"

namespace realg {

// pa2ta: disjunctive algebra to conjunctive; ta2pa the other way.
enum class Direction { Pa2Ta, Ta2Pa };

std::string direction_name(Direction d);
Direction parse_direction(const std::string& s);

class PreconditionBroken : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Same carrier ids, opposite order, same law and negation tables.
// Throw KindMismatch on the wrong kind.
Structure reverse_disjunctive(const Structure& d);
Structure reverse_conjunctive(const Structure& c);
Structure reverse(const Structure& s);

struct DualityWitness {
  Separator source, target;
  Direction direction = Direction::Pa2Ta;
  AxiomReport target_structure;  // kind checker on the dual
  AxiomReport target_separator;  // check_separator on the preimage
  bool ok() const { return target_structure.ok && target_separator.ok; }
};

// {a : neg a in S} on the reversed structure; pa2ta asks for a classical
// separator.
ElemSet neg_preimage(const Separator& sep);
DualityWitness transport_separator(const Separator& sep, Direction d);

// a |-_conj b  iff  neg a |-_disj neg b, over every pair.
AxiomReport key_lemma(const Separator& conj, const Separator& disj);

// The transported pair of a transported conjunctive algebra.
Separator double_transport(const Separator& conj);

struct IsoReport {
  std::vector<ClauseResult> clauses;  // well-defined, order, injective, surjective, natural
  bool ok() const {
    for (const auto& c : clauses)
      if (!c.ok) return false;
    return true;
  }
};

// phi_I [a_i] = [neg a_i] from the conjunctive dual to the disjunctive
// algebra. Throws PreconditionBroken if abar is not the dual of a.
// Naturality is checked against every f : J -> I with |J| <= jmax.
IsoReport tripos_iso(const Separator& a, const Separator& abar, int ni, int jmax = 3);

}  // namespace realg
