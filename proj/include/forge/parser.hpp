#pragma once
#include <string>

#include "forge/formula.hpp"
#include "forge/sexpr.hpp"

namespace forge {

FormulaP parse_formula(const std::string& text);
FormulaP formula_from_sexpr(const SExpr& e);
TermP parse_term(const std::string& text);

}  // namespace forge
