#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "realg/structures.hpp"

namespace realg {

// A finite abstract machine. Terms are 0..terms-1, contexts 0..contexts-1.
// The values sit among the contexts (disjunctive polarity) or among the terms
// (conjunctive polarity); `values[v]` is the underlying id of value v.
struct Machine {
  enum class Polarity { Disjunctive, Conjunctive };

  Polarity polarity = Polarity::Disjunctive;
  int terms = 0;
  int contexts = 0;
  std::vector<int> values;
  std::vector<int> pair;  // |V0|^2 entries, value indices
  std::vector<int> box;   // one value index per term (disj.) or context (conj.)
  std::vector<char> pole; // terms*contexts, row-major by term

  int value_count() const { return static_cast<int>(values.size()); }
  bool orth(int t, int e) const { return pole[t * contexts + e] != 0; }
};

class MachineError : public std::runtime_error {
 public:
  enum class Code { TooLarge, PolarityMismatch, Malformed, NotStructural };
  MachineError(Code c, const std::string& msg, AxiomReport r = {})
      : std::runtime_error(msg), code(c), report(std::move(r)) {}
  Code code;
  AxiomReport report;
};

// Carrier P(V0), element id = bitmask of value indices.
// Disjunctive: ordered by reverse inclusion. Conjunctive: by inclusion.
Structure machine_powerset_disjunctive(const Machine& m);
Structure machine_powerset_conjunctive(const Machine& m);

// Deterministic family of machines whose box map is a bijection onto V0,
// one batch per value count in 1..max_values.
std::vector<Machine> machine_catalogue(int max_values, int per_size, std::uint64_t seed);

}  // namespace realg
