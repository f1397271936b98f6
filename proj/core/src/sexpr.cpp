#include "realg/sexpr.hpp"

#include <cctype>

namespace realg {

std::string SExpr::str() const {
  if (atom) return text;
  std::string s = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += " ";
    s += items[i].str();
  }
  return s + ")";
}

namespace {

struct Reader {
  const std::string& s;
  std::size_t i = 0;
  int line, col = 1;

  Reader(const std::string& src, int l) : s(src), line(l) {}

  void adv() {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  }

  void skip() {
    while (i < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        adv();
      } else if (s[i] == ';') {
        while (i < s.size() && s[i] != '\n') adv();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip();
    if (i >= s.size()) throw ParseError("unexpected end of input", line, col);
    SExpr e;
    e.line = line;
    e.col = col;
    if (s[i] == ')') throw ParseError("unexpected ')'", line, col);
    if (s[i] == '(') {
      e.atom = false;
      adv();
      for (;;) {
        skip();
        if (i >= s.size()) throw ParseError("unclosed '('", e.line, e.col);
        if (s[i] == ')') {
          adv();
          break;
        }
        e.items.push_back(read());
      }
      return e;
    }
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' &&
           s[i] != ')' && s[i] != ';') {
      e.text += s[i];
      adv();
    }
    return e;
  }
};

}  // namespace

std::vector<SExpr> parse_sexprs(const std::string& src, int first_line) {
  Reader r(src, first_line);
  std::vector<SExpr> out;
  for (;;) {
    r.skip();
    if (r.i >= src.size()) break;
    out.push_back(r.read());
  }
  return out;
}

SExpr parse_sexpr(const std::string& src) {
  auto v = parse_sexprs(src);
  if (v.size() != 1) throw ParseError("expected exactly one expression", 1, 1);
  return v[0];
}

}  // namespace realg
