#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "realg/separators.hpp"

namespace realg {

struct NamedStructure {
  std::string name;
  StructurePtr structure;
};

struct NamedAlgebra {
  std::string name;
  Separator separator;
};

// Lattice names: L<n><letter> in enumeration order.
std::string lattice_name(int n, int index);

// For every lattice up to max_carrier: the dummies, top-arrow and Heyting
// implicative structures, `per_lattice` seeded samples per kind from the
// exhaustive enumeration, the Boolean structures, and the powerset
// structures of the catalogued machines with at most max_values values.
std::vector<NamedStructure> structure_catalogue(int max_carrier, std::uint64_t seed,
                                                int per_lattice = 2, int max_values = 2);

// Separators generated from nothing and from each single element, plain and
// classical, over the structure catalogue. Duplicates dropped.
std::vector<NamedAlgebra> algebra_catalogue(int max_carrier, std::uint64_t seed,
                                            int per_lattice = 2, int max_values = 2);

}  // namespace realg
