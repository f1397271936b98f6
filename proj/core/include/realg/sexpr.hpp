#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace realg {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line), col(col) {}
  int line, col;
};

struct SExpr {
  bool atom = true;
  std::string text;
  std::vector<SExpr> items;
  int line = 0, col = 0;

  bool is_list(const char* head) const {
    return !atom && !items.empty() && items[0].atom && items[0].text == head;
  }
  std::string str() const;
};

// ';' starts a comment running to end of line.
std::vector<SExpr> parse_sexprs(const std::string& src, int first_line = 1);
SExpr parse_sexpr(const std::string& src);

}  // namespace realg
