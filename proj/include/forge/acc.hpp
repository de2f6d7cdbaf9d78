#pragma once
#include <string>
#include <vector>

#include "forge/formula.hpp"
#include "forge/tm.hpp"

namespace forge {

// Exists W <= bound . matrix(X, W); free string variable X.
FormulaP compile_acc(const TM& tm, const PolyBound& p);
// The quantifier-free-in-W matrix, free in X and W.
FormulaP acc_matrix(const TM& tm, const PolyBound& p);

// Free string variables Y, Yp: configurations of equal width w, Yp is the
// configuration after exactly p(w) steps from Y. A configuration string
// stores cell i at positions i*(1+sb) (bit) and i*(1+sb)+1.. (state, lsb first).
FormulaP compile_reach(const TM& tm, const PolyBound& p);
std::string config_to_string(const Configuration& c, unsigned state_bits);
Configuration config_from_string(const std::string& s, unsigned state_bits);

// Evaluates the matrix at the given W; no search.
bool check_witness(const TM& tm, const PolyBound& p, const std::string& X, const std::string& W);

// Positions of W the matrix constrains for an input of length n.
std::vector<std::size_t> constrained_positions(const TM& tm, const PolyBound& p, std::size_t n);

}  // namespace forge
