#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "realg/corpus.hpp"
#include "realg/duality.hpp"
#include "realg/encodings.hpp"
#include "realg/io.hpp"
#include "realg/suite.hpp"
#include "realg/tripos.hpp"

#ifndef REALG_FIXTURE_DIR
#define REALG_FIXTURE_DIR "tests/fixtures"
#endif

using namespace realg;

namespace {

struct Line {
  std::string name;
  bool ok = true;
  std::string witness;
  std::string info;
  double seconds = 0;
};

struct Report {
  std::string command;
  std::vector<Line> lines;
  std::string artifact;  // file emitted by the command, if any
  bool ok() const {
    for (const auto& l : lines)
      if (!l.ok) return false;
    return true;
  }
};

struct Globals {
  std::uint64_t seed = 0;
  int max_carrier = 0;
  bool json = false;
  bool timings = false;
  std::string out;
};

// Input problems that are not check failures: exit 3.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Line run(const std::string& name, const std::function<void(Line&)>& body) {
  Line l;
  l.name = name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(l);
  } catch (const ParseError&) {
    throw;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    l.ok = false;
    l.witness = e.what();
  }
  l.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return l;
}

void fail(Line& l, const std::string& w) {
  if (!l.ok) return;
  l.ok = false;
  l.witness = w;
}

void axiom_line(Line& l, const AxiomReport& r) {
  if (!r.ok) {
    l.name += ":" + r.axiom;
    fail(l, r.describe());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Document load(const std::vector<std::string>& paths) {
  Document d;
  for (const auto& p : paths) {
    try {
      d = parse_document(read_file(p), d);
    } catch (const ParseError& e) {
      throw InputError("parse error: " + p + ":" + e.what());
    }
  }
  return d;
}

std::string quote(const std::string& s) {
  std::string o = "\"";
  for (char c : s) o += (c == '"' || c == '\\') ? std::string("\\") + c : std::string(1, c);
  return o + "\"";
}

int emit(const Report& r, const Globals& g) {
  std::ostream& os = std::cout;
  if (g.json) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    j["checks"] = nlohmann::json::array();
    for (const auto& l : r.lines) {
      nlohmann::ordered_json c;
      c["name"] = l.name;
      c["verdict"] = l.ok ? "pass" : "fail";
      if (!l.ok) c["witness"] = l.witness;
      if (!l.info.empty()) c["info"] = l.info;
      if (g.timings) c["duration_ms"] = l.seconds * 1000.0;
      j["checks"].push_back(c);
    }
    j["ok"] = r.ok();
    if (!r.artifact.empty() && g.out.empty()) j["artifact"] = r.artifact;
    os << j.dump(2) << "\n";
  } else {
    os << "# " << r.command << "\n";
    for (const auto& l : r.lines) {
      os << l.name << " " << (l.ok ? "pass" : "fail");
      if (!l.ok) os << " witness=" << quote(l.witness);
      if (!l.info.empty()) os << " " << l.info;
      if (g.timings) {
        std::ostringstream d;
        d.setf(std::ios::fixed);
        d.precision(1);
        d << l.seconds * 1000.0;
        os << " " << d.str() << "ms";
      }
      os << "\n";
    }
    os << (r.ok() ? "ok" : "FAILED") << "\n";
    if (!r.artifact.empty() && g.out.empty()) os << "---\n" << r.artifact;
  }
  if (!r.artifact.empty() && !g.out.empty()) {
    std::ofstream f(g.out);
    if (!f) throw InputError("cannot write " + g.out);
    f << r.artifact;
  }
  return r.ok() ? 0 : 1;
}

const Structure& need_structure(const Document& d) {
  if (!d.structure) throw InputError("input has no structure block");
  return *d.structure;
}

std::string label_eq(const Structure& s, Elem e) {
  return "value=" + std::to_string(e) + " label=" + s.lattice().label(e);
}

// ---------------------------------------------------------------------------

Report cmd_validate(const std::vector<std::string>& in, bool sweep) {
  Report r;
  Document d;
  Line lat{"lattice"};
  try {
    d = load(in);
  } catch (const LatticeError& e) {
    lat.name += ":" + e.axiom;
    fail(lat, e.what());
    r.lines.push_back(lat);
    return r;
  }
  if (!d.lattice) throw InputError("input has no lattice block");
  lat.info = "n=" + std::to_string(d.lattice->size());
  r.lines.push_back(lat);
  if (d.structure) {
    r.lines.push_back(run("structure", [&](Line& l) {
      l.info = "kind=" + kind_name(d.structure->kind());
      axiom_line(l, check_structure(*d.structure));
    }));
    if (sweep)
      r.lines.push_back(run("subset-sweep", [&](Line& l) { axiom_line(l, full_subset_sweep(*d.structure)); }));
  }
  if (d.separator) {
    r.lines.push_back(run("separator", [&](Line& l) {
      const Structure& s = need_structure(d);
      if (d.separator->explicit_members) {
        ElemSet m(s.size());
        for (Elem e : d.separator->elems) m.insert(e);
        axiom_line(l, check_separator_report(s, m, d.separator->classical));
        l.info = "size=" + std::to_string(m.count());
      } else {
        Separator sep = separator_of(d);
        l.info = "size=" + std::to_string(sep.size()) + " consistent=" + (sep.consistent() ? "true" : "false");
      }
    }));
  }
  return r;
}

Report cmd_closure(const std::vector<std::string>& in, const std::vector<std::string>& gens, bool classical,
                   bool check_only) {
  Report r;
  Document d = load(in);
  const Structure& s = need_structure(d);
  Line l = run("closure", [&](Line& l) {
    Separator sep;
    if (check_only) {
      if (!d.separator || !d.separator->explicit_members)
        throw InputError("--check-only needs a separator file with member lines");
      ElemSet m(s.size());
      for (Elem e : d.separator->elems) m.insert(e);
      axiom_line(l, check_separator_report(s, m, d.separator->classical));
      sep = Separator(d.structure, m);
    } else {
      ElemSet g(s.size());
      bool cl = classical;
      if (d.separator) {
        if (d.separator->explicit_members) throw InputError("closure takes gen lines; use --check-only for members");
        for (Elem e : d.separator->elems) g.insert(e);
        cl = cl || d.separator->classical;
      }
      for (const auto& t : gens) {
        Elem e = s.lattice().find(t);
        if (e < 0) throw InputError("no element '" + t + "'");
        g.insert(e);
      }
      sep = generate_separator(d.structure, g, cl);
      r.artifact = write_separator(sep);
    }
    l.info = "size=" + std::to_string(sep.size()) + " consistent=" + (sep.consistent() ? "true" : "false");
  });
  r.lines.push_back(l);
  return r;
}

Report cmd_eval(const std::vector<std::string>& in, const std::string& term, const std::string& as,
                const std::string& sort) {
  Report r;
  Document d = load(in);
  const Structure& s = need_structure(d);
  r.lines.push_back(run("eval", [&](Line& l) {
    std::string mode = as;
    auto items = parse_sexprs(term);
    if (items.empty()) throw InputError("empty term");
    if (mode == "auto") {
      if (items[0].is_list("calculus"))
        mode = "command";
      else if (items.size() == 1 && items[0].atom) {
        auto names = combinator_names();
        mode = std::find(names.begin(), names.end(), items[0].text) != names.end() ? "combinator" : "lambda";
      } else {
        const auto& h = items[0].items.empty() || !items[0].items[0].atom ? std::string() : items[0].items[0].text;
        bool formula = h == "forall" || h == "exists" || h == "neg" || h == "tens" || h == "parr" || h == "arr";
        mode = formula ? "formula" : "lambda";
      }
    }
    if (mode == "combinator") {
      if (items.size() != 1 || !items[0].atom) throw InputError("expected a combinator name");
      l.info = label_eq(s, combinator(s, items[0].text));
    } else if (mode == "lambda") {
      if (items.size() != 1) throw InputError("expected one lambda term");
      l.info = label_eq(s, interpret_lambda(s, parse_lambda(items[0])));
    } else if (mode == "formula") {
      if (items.size() != 1) throw InputError("expected one formula");
      l.info = label_eq(s, interpret_formula(s, parse_formula(items[0])));
    } else {
      if (items.size() != 2 || !items[0].is_list("calculus") || items[0].items.size() != 2)
        throw InputError("expected (calculus par|tens) followed by one subject");
      Polarity p = parse_polarity(items[0].items[1].text);
      Sort so = sort == "term" ? Sort::Term : sort == "context" ? Sort::Context : Sort::Command;
      LTerm t = parse_subject(p, so, items[1]);
      if (so == Sort::Command) {
        auto v = interpret_command(s, p, t);
        l.info = "t=" + std::to_string(v.first) + " e=" + std::to_string(v.second) +
                 " pole=" + (in_pole(s, v) ? "in" : "out");
      } else {
        l.info = label_eq(s, interpret(s, p, t));
      }
    }
  }));
  return r;
}

Report cmd_dualize(const std::vector<std::string>& in, const std::string& dir) {
  Report r;
  Document d = load(in);
  const Structure& s = need_structure(d);
  Direction dn = parse_direction(dir);
  r.lines.push_back(run("source-structure", [&](Line& l) { axiom_line(l, check_structure(s)); }));
  if (!d.separator) {
    r.lines.push_back(run("reverse", [&](Line& l) {
      Structure t = reverse(s);
      if ((dn == Direction::Pa2Ta) != (s.kind() == Kind::Disjunctive))
        throw KindMismatch(direction_name(dn) + " does not apply to a " + kind_name(s.kind()) + " structure");
      axiom_line(l, check_structure(t));
      r.artifact = write_structure(t);
    }));
    return r;
  }
  Separator sep = separator_of(d);
  r.lines.push_back(run("source-separator", [&](Line& l) {
    axiom_line(l, check_separator_report(s, sep.members(), d.separator->classical));
  }));
  DualityWitness w;
  r.lines.push_back(run("transport", [&](Line& l) {
    w = transport_separator(sep, dn);
    l.info = "size=" + std::to_string(w.target.size());
  }));
  if (!r.lines.back().ok) return r;
  r.lines.push_back(run("target-structure", [&](Line& l) { axiom_line(l, w.target_structure); }));
  r.lines.push_back(run("target-separator", [&](Line& l) { axiom_line(l, w.target_separator); }));
  r.lines.push_back(run("key-lemma", [&](Line& l) {
    axiom_line(l, dn == Direction::Pa2Ta ? key_lemma(w.target, sep) : key_lemma(sep, w.target));
  }));
  r.artifact = write_structure(w.target.structure()) + write_separator(w.target);
  return r;
}

Report cmd_quotient(const std::vector<std::string>& in) {
  Report r;
  Document d = load(in);
  Separator sep = separator_of(d);
  r.lines.push_back(run("heyting", [&](Line& l) {
    QuotientHA q;
    try {
      q = quotient(sep);
    } catch (const LawViolation& e) {
      l.name += ":" + e.report.axiom;
      fail(l, e.what());
      return;
    }
    l.info = "classes=" + std::to_string(q.classes);
    std::ostringstream o;
    o << "quotient classes=" << q.classes << " top=" << q.top << " bottom=" << q.bottom << "\n";
    for (int c = 0; c < q.classes; ++c) {
      o << "class " << c;
      for (Elem e : q.members[c]) o << " " << e;
      o << "\n";
    }
    for (int x = 0; x < q.classes; ++x)
      for (int y = 0; y < q.classes; ++y)
        if (x != y && q.leq(x, y)) o << "le " << x << " " << y << "\n";
    for (int x = 0; x < q.classes; ++x)
      for (int y = 0; y < q.classes; ++y)
        o << "ops " << x << " " << y << " meet=" << q.meet[x * q.classes + y]
          << " join=" << q.join[x * q.classes + y] << " imp=" << q.imp[x * q.classes + y] << "\n";
    r.artifact = o.str();
  }));
  return r;
}

Report cmd_tripos(const std::vector<std::string>& in, int imax, bool iso) {
  Report r;
  Document d = load(in);
  Separator sep = separator_of(d);
  FiniteTripos t(sep);
  for (const auto& c : check_tripos(t, imax)) {
    Line l{c.clause, c.ok, c.ok ? "" : c.witness, "checked=" + std::to_string(c.checked)};
    r.lines.push_back(l);
  }
  if (iso) {
    if (sep.kind() != Kind::Disjunctive) throw InputError("--iso needs a disjunctive algebra");
    auto w = transport_separator(sep, Direction::Pa2Ta);
    for (int ni = 0; ni <= imax; ++ni)
      for (const auto& c : tripos_iso(sep, w.target, ni, imax).clauses)
        r.lines.push_back(
            {"phi/" + std::to_string(ni) + "/" + c.clause, c.ok, c.ok ? "" : c.witness, "checked=" + std::to_string(c.checked)});
  }
  return r;
}

Report cmd_calc_run(const std::string& file, const std::string& command, const std::string& calculus,
                    int fuel) {
  Report r;
  if (!command.empty()) {
    Polarity p = parse_polarity(calculus);
    LTerm c = parse_subject(p, Sort::Command, command);
    r.lines.push_back(run("normalize", [&](Line& l) {
      auto tr = normalize(p, c, fuel);
      std::ostringstream o;
      for (std::size_t i = 0; i < tr.commands.size(); ++i) {
        if (i) o << "  -> " << tr.rules[i - 1] << "\n";
        o << to_string(tr.commands[i]) << "\n";
      }
      r.artifact = o.str();
      l.info = "steps=" + std::to_string(tr.rules.size());
      if (tr.out_of_fuel) fail(l, "no normal form within " + std::to_string(fuel) + " steps");
    }));
    return r;
  }
  Corpus c = parse_corpus(read_file(file));
  for (const auto& f : c.steps)
    r.lines.push_back(run("step/" + std::to_string(f.line) + "/" + f.rule, [&](Line& l) {
      auto e = check_step(c.polarity, f);
      if (!e.empty()) fail(l, e);
    }));
  for (const auto& f : c.laws)
    r.lines.push_back(run("law/" + f.name, [&](Line& l) {
      auto e = check_law(c.polarity, f, fuel);
      if (!e.empty()) fail(l, e);
    }));
  return r;
}

Report cmd_calc_typecheck(const std::string& file, bool derivations) {
  Report r;
  Corpus c = parse_corpus(read_file(file));
  std::ostringstream o;
  for (const auto& j : c.judges)
    r.lines.push_back(run("judge/" + j.name, [&](Line& l) {
      auto der = typecheck(c.polarity, j.seq);
      l.info = "size=" + std::to_string(der.size());
      if (derivations) o << "; " << j.name << "\n" << der.render();
    }));
  r.artifact = o.str();
  return r;
}

Report cmd_calc_interpret(const std::vector<std::string>& in, const std::string& file) {
  Report r;
  Document d = load(in);
  const Structure& s = need_structure(d);
  Corpus c = parse_corpus(read_file(file));
  for (const auto& j : c.judges)
    r.lines.push_back(run("adequacy/" + j.name, [&](Line& l) {
      std::size_t valid = 0;
      auto res = check_adequacy_all(s, c.polarity, j.seq, &valid);
      l.info = "valid-valuations=" + std::to_string(valid);
      if (!res.ok) fail(l, res.failing);
    }));
  return r;
}

Report cmd_suite(const std::string& scope, const Globals& g, const std::string& fixtures,
                 const std::vector<int>& criteria, int jobs) {
  Report r;
  SuiteOptions o;
  o.full = scope == "full";
  o.seed = g.seed;
  o.fixture_dir = fixtures;
  o.jobs = jobs;
  for (const auto& c : run_suite(o, criteria))
    for (const auto& k : c.checks)
      r.lines.push_back({k.name, k.ok, k.witness, "checked=" + std::to_string(k.checked), k.seconds});
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"realg: finite realizability algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "seed for randomized sweeps")->capture_default_str();
  app.add_option("--max-carrier", g.max_carrier, "carrier cap (0 keeps REALG_MAX_CARRIER or 64)");
  app.add_flag("--json", g.json, "JSON report");
  app.add_flag("--timings", g.timings, "append durations (reports are then not byte-stable)");
  app.add_option("--out", g.out, "write the emitted file here instead of stdout");

  std::vector<std::string> in;
  std::function<Report()> action;

  auto* validate = app.add_subcommand("validate", "check lattice, structure and separator files");
  bool sweep = false;
  validate->add_option("--in,files", in, "input files, read in order")->required();
  validate->add_flag("--sweep", sweep, "also run the full subset sweep");
  validate->callback([&] { action = [&] { return cmd_validate(in, sweep); }; });

  auto* closure = app.add_subcommand("closure", "least separator containing the generators");
  std::vector<std::string> gens;
  bool classical = false, check_only = false;
  closure->add_option("--in", in, "structure file, optionally a separator file")->required();
  closure->add_option("--gen", gens, "generator (id or label)");
  closure->add_flag("--classical", classical, "classical closure");
  closure->add_flag("--check-only", check_only, "validate member lines instead of generating");
  closure->callback([&] { action = [&] { return cmd_closure(in, gens, classical, check_only); }; });

  auto* eval = app.add_subcommand("eval", "evaluate a term, formula, combinator or L-subject");
  std::string term, term_file, as = "auto", sort = "command";
  eval->add_option("--in", in, "structure file")->required();
  auto* term_opt = eval->add_option("--term", term, "s-expression");
  eval->add_option("--term-file", term_file, "file holding the s-expression")->excludes(term_opt);
  eval->add_option("--as", as)->check(CLI::IsMember({"auto", "lambda", "formula", "combinator", "command"}));
  eval->add_option("--sort", sort, "sort of an L-subject")->check(CLI::IsMember({"term", "context", "command"}));
  eval->callback([&] {
    action = [&] {
      if (!term_file.empty()) term = read_file(term_file);
      if (term.empty()) throw InputError("eval needs --term or --term-file");
      return cmd_eval(in, term, as, sort);
    };
  });

  auto* dualize = app.add_subcommand("dualize", "order-reversal transport");
  std::string direction;
  dualize->add_option("--in", in, "structure and separator files")->required();
  dualize->add_option("--direction", direction)->required()->check(CLI::IsMember({"pa2ta", "ta2pa"}));
  dualize->callback([&] { action = [&] { return cmd_dualize(in, direction); }; });

  auto* quot = app.add_subcommand("quotient", "Heyting algebra of classes");
  quot->add_option("--in", in, "structure and separator files")->required();
  quot->callback([&] { action = [&] { return cmd_quotient(in); }; });

  auto* trip = app.add_subcommand("tripos", "hyperdoctrine clauses over index sets up to --imax");
  int imax = 3;
  bool iso = false;
  trip->add_option("--in", in, "structure and separator files")->required();
  trip->add_option("--imax", imax)->capture_default_str()->check(CLI::Range(0, 4));
  trip->add_flag("--iso", iso, "also check phi against the pa2ta transport");
  trip->callback([&] { action = [&] { return cmd_tripos(in, imax, iso); }; });

  auto* calc = app.add_subcommand("calc", "L-calculi");
  calc->require_subcommand(1);
  std::string corpus, command, calculus = "par";
  int fuel = 40;
  bool derivations = false;
  auto* crun = calc->add_subcommand("run", "reduce a command, or check a corpus's steps and laws");
  auto* corpus_opt = crun->add_option("--corpus", corpus, "corpus file");
  crun->add_option("--command", command)->excludes(corpus_opt);
  crun->add_option("--calculus", calculus)->check(CLI::IsMember({"par", "tens"}));
  crun->add_option("--fuel", fuel)->capture_default_str();
  crun->callback([&] {
    action = [&] {
      if (corpus.empty() && command.empty()) throw InputError("calc run needs --corpus or --command");
      return cmd_calc_run(corpus, command, calculus, fuel);
    };
  });
  auto* ctype = calc->add_subcommand("typecheck", "typecheck the judges of a corpus");
  ctype->add_option("--corpus", corpus)->required();
  ctype->add_flag("--derivations", derivations, "emit the derivations");
  ctype->callback([&] { action = [&] { return cmd_calc_typecheck(corpus, derivations); }; });
  auto* cint = calc->add_subcommand("interpret", "adequacy of a corpus's judges on a structure");
  cint->add_option("--in", in, "structure file")->required();
  cint->add_option("--corpus", corpus)->required();
  cint->callback([&] { action = [&] { return cmd_calc_interpret(in, corpus); }; });

  auto* suite = app.add_subcommand("suite", "acceptance suites");
  std::string scope = "fast";
  std::string fixtures = std::getenv("REALG_FIXTURES") ? std::getenv("REALG_FIXTURES") : REALG_FIXTURE_DIR;
  std::vector<int> criteria;
  int jobs = 1;
  suite->add_option("--scope", scope)->capture_default_str()->check(CLI::IsMember({"fast", "full"}));
  suite->add_option("--fixtures", fixtures)->capture_default_str();
  suite->add_option("--criterion", criteria, "run only these criteria")->check(CLI::Range(1, criterion_count));
  suite->add_option("--jobs", jobs)->capture_default_str()->check(CLI::Range(1, 64));
  suite->callback([&] { action = [&] { return cmd_suite(scope, g, fixtures, criteria, jobs); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  std::string echo = "realg";
  for (int i = 1; i < argc; ++i) echo += std::string(" ") + argv[i];
  if (g.max_carrier > 0) set_max_carrier(g.max_carrier);

  try {
    Report r = action();
    r.command = echo;
    return emit(r, g);
  } catch (const InputError& e) {
    std::cerr << e.what() << "\n";
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const LatticeError& e) {
    std::cerr << "lattice error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 3;
}
