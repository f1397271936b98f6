#pragma once

#include <optional>
#include <string>
#include <vector>

#include "realg/sexpr.hpp"
#include "realg/separators.hpp"

namespace realg {

// Line formats. '#' starts a comment. Element tokens are decimal ids or labels.
//
//   structure kind=<implicative|disjunctive|conjunctive>   (optional)
//   lattice n=<N>
//   label <i> <name>                                       (optional)
//   le <i> <j>                                             covering pairs
//   arrow|par|tensor <i> <j> <k>                           full table
//   neg <i> <k>                                            not for implicative
//   separator kind=<k> classical=<bool>
//   gen <i> | member <i>

struct SeparatorSpec {
  Kind kind = Kind::Implicative;
  bool classical = false;
  bool explicit_members = false;  // member lines rather than gen lines
  std::vector<Elem> elems;
  int line = 0;
};

struct Document {
  LatticePtr lattice;
  StructurePtr structure;
  std::optional<SeparatorSpec> separator;
};

// Blocks not present in `text` are taken from `base`, so a separator file can
// follow a structure file. Throws ParseError; a relation that is not a
// lattice throws LatticeError.
Document parse_document(const std::string& text, const Document& base = {});
Document load_document(const std::string& path, const Document& base = {});
Document load_documents(const std::vector<std::string>& paths);

std::string write_lattice(const FiniteLattice& L);
std::string write_structure(const Structure& s);
std::string write_separator(const Separator& sep);
std::string write_generators(Kind k, bool classical, const std::vector<Elem>& gens);

// The separator a document describes: explicit members as given, otherwise
// generated. Needs a structure block.
Separator separator_of(const Document& d);

}  // namespace realg
