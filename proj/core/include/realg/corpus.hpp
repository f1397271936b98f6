#pragma once

#include <string>
#include <vector>

#include "realg/calculi.hpp"

namespace realg {

// Corpus files are s-expressions, headed by (calculus par|tens):
//   (step RULE REDEX REDUCT)            one step by RULE, reduct up to alpha
//   (law NAME reduces|joinable FROM TO) derived laws
//   (judge NAME (gamma (x A)..) (delta (a A)..) (term|context|command S) [TYPE])
//   (lambda NAME TERM)                  pure lambda terms
struct StepFixture {
  std::string rule;
  LTerm redex, reduct;
  int line = 0;
};

struct LawFixture {
  std::string name;
  bool joinable = false;
  LTerm from, to;
  int line = 0;
};

struct JudgeFixture {
  std::string name;
  TypedSequent seq;
  int line = 0;
};

struct LambdaFixture {
  std::string name;
  Lambda term;
  int line = 0;
};

struct Corpus {
  Polarity polarity = Polarity::Par;
  std::vector<StepFixture> steps;
  std::vector<LawFixture> laws;
  std::vector<JudgeFixture> judges;
  std::vector<LambdaFixture> lambdas;
};

// Throws ParseError.
Corpus parse_corpus(const std::string& src);
Corpus load_corpus(const std::string& path);

// Empty on success, otherwise what went wrong.
std::string check_step(Polarity p, const StepFixture& f);
std::string check_law(Polarity p, const LawFixture& f, int fuel = 40);

}  // namespace realg
