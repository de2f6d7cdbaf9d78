#pragma once
#include <string>
#include <vector>

namespace forge {

struct SExpr {
  bool atom = false;
  std::string text;
  std::vector<SExpr> items;
  int line = 1, col = 1;
};

// Reads every top-level expression; `;` starts a line comment.
std::vector<SExpr> read_sexprs(const std::string& text);
SExpr read_one_sexpr(const std::string& text);

}  // namespace forge
