#include "realg/corpus.hpp"

#include <fstream>
#include <sstream>

namespace realg {

namespace {

[[noreturn]] void bad(const SExpr& e, const std::string& msg) { throw ParseError(msg, e.line, e.col); }

const std::string& atom(const SExpr& e) {
  if (!e.atom) bad(e, "expected an atom");
  return e.text;
}

TypeCtx context_list(const SExpr& e, const char* head) {
  if (!e.is_list(head)) bad(e, std::string("expected (") + head + " ...)");
  TypeCtx out;
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    const auto& b = e.items[i];
    if (b.atom || b.items.size() != 2) bad(b, "expected (name type)");
    out.emplace_back(atom(b.items[0]), parse_formula(b.items[1]));
  }
  return out;
}

Sort sort_of(const SExpr& e) {
  const auto& s = atom(e);
  if (s == "term") return Sort::Term;
  if (s == "context") return Sort::Context;
  if (s == "command") return Sort::Command;
  bad(e, "unknown sort '" + s + "'");
}

}  // namespace

Corpus parse_corpus(const std::string& src) {
  Corpus c;
  auto items = parse_sexprs(src);
  bool header = false;
  for (const auto& e : items) {
    if (e.atom || e.items.empty()) bad(e, "expected an entry");
    const auto& h = atom(e.items[0]);
    if (h == "calculus") {
      if (e.items.size() != 2) bad(e, "expected (calculus par|tens)");
      c.polarity = parse_polarity(atom(e.items[1]));
      header = true;
      continue;
    }
    if (!header) bad(e, "missing (calculus ...) header");
    const Polarity p = c.polarity;
    if (h == "step") {
      if (e.items.size() != 4) bad(e, "expected (step RULE REDEX REDUCT)");
      c.steps.push_back({atom(e.items[1]), parse_subject(p, Sort::Command, e.items[2]),
                         parse_subject(p, Sort::Command, e.items[3]), e.line});
    } else if (h == "law") {
      if (e.items.size() != 5) bad(e, "expected (law NAME MODE FROM TO)");
      const auto& mode = atom(e.items[2]);
      if (mode != "reduces" && mode != "joinable") bad(e.items[2], "mode is reduces or joinable");
      c.laws.push_back({atom(e.items[1]), mode == "joinable",
                        parse_subject(p, Sort::Command, e.items[3]),
                        parse_subject(p, Sort::Command, e.items[4]), e.line});
    } else if (h == "judge") {
      if (e.items.size() != 5 && e.items.size() != 6) bad(e, "expected (judge NAME GAMMA DELTA SUBJECT [TYPE])");
      JudgeFixture j;
      j.name = atom(e.items[1]);
      j.line = e.line;
      j.seq.gamma = context_list(e.items[2], "gamma");
      j.seq.delta = context_list(e.items[3], "delta");
      const auto& subj = e.items[4];
      if (subj.atom || subj.items.size() != 2) bad(subj, "expected (SORT SUBJECT)");
      Sort s = sort_of(subj.items[0]);
      j.seq.subject = parse_subject(p, s, subj.items[1]);
      if (s == Sort::Command) {
        if (e.items.size() != 5) bad(e, "commands carry no type");
      } else {
        if (e.items.size() != 6) bad(e, "missing type");
        j.seq.type = parse_formula(e.items[5]);
      }
      c.judges.push_back(std::move(j));
    } else if (h == "lambda") {
      if (e.items.size() != 3) bad(e, "expected (lambda NAME TERM)");
      c.lambdas.push_back({atom(e.items[1]), parse_lambda(e.items[2]), e.line});
    } else {
      bad(e.items[0], "unknown entry '" + h + "'");
    }
  }
  return c;
}

Corpus load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_corpus(ss.str());
}

std::string check_step(Polarity p, const StepFixture& f) {
  std::optional<StepResult> r;
  try {
    r = try_step(p, f.redex);
  } catch (const std::exception& e) {
    return e.what();
  }
  if (!r) return "no rule applies";
  if (r->rule != f.rule) return "rule " + r->rule + ", expected " + f.rule;
  if (!alpha_equal(r->next, f.reduct))
    return "reduct " + to_string(r->next) + ", expected " + to_string(f.reduct);
  return {};
}

std::string check_law(Polarity p, const LawFixture& f, int fuel) {
  if (f.joinable) {
    if (joinable(p, f.from, f.to, fuel / 4 + 1)) return {};
    return "no common reduct within fuel";
  }
  auto tr = normalize(p, f.from, fuel);
  for (const auto& c : tr.commands)
    if (alpha_equal(c, f.to)) return {};
  return "target not reached; stopped at " + to_string(tr.commands.back());
}

}  // namespace realg
