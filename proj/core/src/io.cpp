#include "realg/io.hpp"

#include <fstream>
#include <cctype>
#include <memory>
#include <sstream>

namespace realg {

namespace {

struct Tok {
  std::string text;
  int line, col;
};

std::vector<Tok> split(const std::string& line, int ln) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
    out.push_back({line.substr(i, j - i), ln, static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

[[noreturn]] void bad(const Tok& t, const std::string& msg) { throw ParseError(msg, t.line, t.col); }

std::string keyval(const Tok& t, const std::string& key) {
  auto p = key + "=";
  if (t.text.rfind(p, 0) != 0) bad(t, "expected " + key + "=...");
  return t.text.substr(p.size());
}

int parse_int(const Tok& t) {
  try {
    std::size_t used = 0;
    int v = std::stoi(t.text, &used);
    if (used == t.text.size()) return v;
  } catch (const std::exception&) {
  }
  bad(t, "expected an integer, got '" + t.text + "'");
}

Kind kind_of(const Tok& t, const std::string& s) {
  try {
    return parse_kind(s);
  } catch (const std::exception&) {
    bad(t, "unknown kind '" + s + "'");
  }
}

bool bool_of(const Tok& t, const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  bad(t, "expected true or false");
}

void arity(const std::vector<Tok>& ts, std::size_t n) {
  if (ts.size() != n)
    bad(ts[0], "'" + ts[0].text + "' takes " + std::to_string(n - 1) + " arguments");
}

// Element tokens are resolved once the lattice is known.
struct Pending {
  std::string op;
  std::vector<Tok> args;
};

Elem resolve(const FiniteLattice& L, const Tok& t) {
  Elem e = L.find(t.text);
  if (e < 0) bad(t, "no element '" + t.text + "' in a carrier of " + std::to_string(L.size()));
  return e;
}

const char* law_word(Kind k) {
  switch (k) {
    case Kind::Implicative: return "arrow";
    case Kind::Disjunctive: return "par";
    default: return "tensor";
  }
}

}  // namespace

Document parse_document(const std::string& text, const Document& base) {
  Document d = base;
  std::istringstream in(text);
  std::string raw;
  int ln = 0;

  std::optional<Tok> struct_hdr, lat_hdr;
  std::optional<Kind> kind;
  int n = 0;
  std::vector<std::pair<Tok, Tok>> les;
  std::vector<std::pair<Tok, Tok>> labels;
  std::vector<Pending> laws;
  std::optional<SeparatorSpec> sep;
  std::vector<Tok> sep_elems;

  while (std::getline(in, raw)) {
    ++ln;
    auto ts = split(raw, ln);
    if (ts.empty()) continue;
    const auto& w = ts[0].text;
    if (w == "structure") {
      arity(ts, 2);
      if (struct_hdr) bad(ts[0], "second structure header");
      struct_hdr = ts[0];
      kind = kind_of(ts[1], keyval(ts[1], "kind"));
    } else if (w == "lattice") {
      arity(ts, 2);
      if (lat_hdr) bad(ts[0], "second lattice header");
      lat_hdr = ts[0];
      n = parse_int({keyval(ts[1], "n"), ts[1].line, ts[1].col + 2});
      if (n < 1) bad(ts[1], "carrier must be non-empty");
      if (n > max_carrier()) bad(ts[1], "carrier " + std::to_string(n) + " exceeds bound " + std::to_string(max_carrier()));
    } else if (w == "le" || w == "label") {
      arity(ts, 3);
      if (!lat_hdr) bad(ts[0], "'" + w + "' before lattice header");
      (w == "le" ? les : labels).emplace_back(ts[1], ts[2]);
    } else if (w == "arrow" || w == "par" || w == "tensor" || w == "neg") {
      arity(ts, w == "neg" ? 3 : 4);
      if (!struct_hdr) bad(ts[0], "'" + w + "' outside a structure block");
      if (w != "neg" && w != law_word(*kind)) bad(ts[0], "'" + w + "' in a " + kind_name(*kind) + " structure");
      if (w == "neg" && *kind == Kind::Implicative) bad(ts[0], "implicative negation is derived");
      laws.push_back({w, {ts.begin() + 1, ts.end()}});
    } else if (w == "separator") {
      arity(ts, 3);
      if (sep) bad(ts[0], "second separator header");
      SeparatorSpec s;
      s.kind = kind_of(ts[1], keyval(ts[1], "kind"));
      s.classical = bool_of(ts[2], keyval(ts[2], "classical"));
      s.line = ln;
      sep = s;
    } else if (w == "gen" || w == "member") {
      arity(ts, 2);
      if (!sep) bad(ts[0], "'" + w + "' before separator header");
      bool m = w == "member";
      if (!sep_elems.empty() && m != sep->explicit_members) bad(ts[0], "gen and member lines mixed");
      sep->explicit_members = m;
      sep_elems.push_back(ts[1]);
    } else {
      bad(ts[0], "unknown directive '" + w + "'");
    }
  }

  if (struct_hdr && !lat_hdr) bad(*struct_hdr, "structure without a lattice block");

  if (lat_hdr) {
    std::vector<std::string> names(n);
    for (int i = 0; i < n; ++i) names[i] = std::to_string(i);
    for (const auto& [i, name] : labels) {
      int v = parse_int(i);
      if (v < 0 || v >= n) bad(i, "label index out of range");
      names[v] = name.text;
    }
    std::vector<std::pair<Elem, Elem>> pairs;
    for (const auto& [a, b] : les) {
      int x = parse_int(a), y = parse_int(b);
      if (x < 0 || x >= n) bad(a, "index out of range");
      if (y < 0 || y >= n) bad(b, "index out of range");
      pairs.emplace_back(x, y);
    }
    d.lattice = std::make_shared<const FiniteLattice>(lattice_from_pairs(n, pairs, names));
    d.structure = nullptr;
  }

  if (struct_hdr) {
    const FiniteLattice& L = *d.lattice;
    const int m = L.size();
    std::vector<Elem> law(m * m, -1), neg(m, -1);
    for (const auto& p : laws) {
      if (p.op == "neg") {
        Elem a = resolve(L, p.args[0]), k = resolve(L, p.args[1]);
        if (neg[a] >= 0 && neg[a] != k) bad(p.args[0], "conflicting neg entry");
        neg[a] = k;
      } else {
        Elem a = resolve(L, p.args[0]), b = resolve(L, p.args[1]), k = resolve(L, p.args[2]);
        auto& slot = law[a * m + b];
        if (slot >= 0 && slot != k) bad(p.args[0], "conflicting " + p.op + " entry");
        slot = k;
      }
    }
    for (Elem a = 0; a < m; ++a) {
      for (Elem b = 0; b < m; ++b)
        if (law[a * m + b] < 0)
          bad(*struct_hdr, std::string("missing ") + law_word(*kind) + " " + std::to_string(a) + " " +
                               std::to_string(b));
      if (*kind != Kind::Implicative && neg[a] < 0)
        bad(*struct_hdr, "missing neg " + std::to_string(a));
    }
    d.structure = std::make_shared<const Structure>(*kind, d.lattice, std::move(law), std::move(neg));
  }

  if (sep) {
    const FiniteLattice* L = d.structure ? &d.structure->lattice() : d.lattice.get();
    if (!L) throw ParseError("separator without a lattice", sep->line, 1);
    if (d.structure && d.structure->kind() != sep->kind)
      throw ParseError("separator kind " + kind_name(sep->kind) + " on a " +
                           kind_name(d.structure->kind()) + " structure",
                       sep->line, 1);
    for (const auto& t : sep_elems) sep->elems.push_back(resolve(*L, t));
    d.separator = sep;
  }
  return d;
}

Document load_document(const std::string& path, const Document& base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), base);
}

Document load_documents(const std::vector<std::string>& paths) {
  Document d;
  for (const auto& p : paths) d = load_document(p, d);
  return d;
}

std::string write_lattice(const FiniteLattice& L) {
  std::ostringstream o;
  o << "lattice n=" << L.size() << "\n";
  for (Elem a = 0; a < L.size(); ++a)
    if (L.label(a) != std::to_string(a)) o << "label " << a << " " << L.label(a) << "\n";
  for (auto [a, b] : L.covers()) o << "le " << a << " " << b << "\n";
  return o.str();
}

std::string write_structure(const Structure& s) {
  std::ostringstream o;
  o << "structure kind=" << kind_name(s.kind()) << "\n" << write_lattice(s.lattice());
  const char* w = law_word(s.kind());
  for (Elem a = 0; a < s.size(); ++a)
    for (Elem b = 0; b < s.size(); ++b) o << w << " " << a << " " << b << " " << s.law(a, b) << "\n";
  if (s.kind() != Kind::Implicative)
    for (Elem a = 0; a < s.size(); ++a) o << "neg " << a << " " << s.neg(a) << "\n";
  return o.str();
}

std::string write_separator(const Separator& sep) {
  std::ostringstream o;
  o << "separator kind=" << kind_name(sep.kind()) << " classical=" << (sep.classical() ? "true" : "false")
    << "\n";
  sep.members().for_each([&](Elem a) { o << "member " << a << "\n"; });
  return o.str();
}

std::string write_generators(Kind k, bool classical, const std::vector<Elem>& gens) {
  std::ostringstream o;
  o << "separator kind=" << kind_name(k) << " classical=" << (classical ? "true" : "false") << "\n";
  for (Elem g : gens) o << "gen " << g << "\n";
  return o.str();
}

Separator separator_of(const Document& d) {
  if (!d.structure) throw std::invalid_argument("separator needs a structure block");
  if (!d.separator) throw std::invalid_argument("no separator block");
  ElemSet m(d.structure->size());
  for (Elem e : d.separator->elems) m.insert(e);
  if (d.separator->explicit_members) return Separator(d.structure, std::move(m));
  return generate_separator(d.structure, m, d.separator->classical);
}

}  // namespace realg
