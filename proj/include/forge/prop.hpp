#pragma once
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "forge/formula.hpp"
#include "forge/sexpr.hpp"

namespace forge {

enum class PKind { Const, Var, And, Or, Not };

struct Prop;
using PropP = std::shared_ptr<const Prop>;

struct Prop {
  PKind kind;
  bool value = false;       // Const
  std::string name;         // Var: string parameter
  std::uint64_t index = 0;  // Var: bit position
  std::vector<PropP> kids;  // And/Or (any arity), Not (one)
};

PropP pconst(bool v);
PropP pvar(const std::string& name, std::uint64_t index);
PropP pnot(PropP p);
// Unbounded fan-in: children of the same kind are spliced in. No constant
// folding, so the shape of a translation does not depend on sizes.
PropP pand(std::vector<PropP> kids);
PropP por(std::vector<PropP> kids);
// Builds the node exactly as given (used by the parser).
PropP pnode(PKind k, std::vector<PropP> kids);
// Constant folding: neutral constants dropped, dominating ones absorb,
// empty And/Or become 1/0, single children are lifted, not(c) folds.
PropP simplify(const PropP& p);

bool equal(const PropP& a, const PropP& b);
bool operator<(const Prop& a, const Prop& b);  // structural total order
struct PropLess {
  bool operator()(const PropP& a, const PropP& b) const { return *a < *b; }
};

std::string print_prop(const PropP& p);
PropP parse_prop(const std::string& text);
PropP prop_from_sexpr(const SExpr& e);

using PropVar = std::pair<std::string, std::uint64_t>;
std::set<PropVar> prop_vars(const PropP& p);
bool eval_prop(const PropP& p, const std::map<PropVar, bool>& a);

// Exhaustive over all assignments to the variables of p; CapExceeded when
// there are more than cap of them.
bool taut_check(const PropP& p, std::size_t cap = 20);
unsigned prop_depth(const PropP& p);
std::size_t prop_size(const PropP& p);

// String lengths and number values for the free parameters.
struct SizeProfile {
  std::map<std::string, std::uint64_t> lengths;  // string parameters
  std::map<std::string, Nat> values;             // number parameters
  std::uint64_t max_bound = 1u << 20;            // expansion limit per quantifier
};

// Sigma_0 formula to propositional formula: number atoms are evaluated,
// X(t) becomes variable (X, t) or 0 when t >= |X|, number quantifiers expand
// to And/Or over every value up to the bound.
PropP translate(const FormulaP& phi, const SizeProfile& sizes);

// Size growth witness: D is the smallest integer exponent not below any
// log-log slope between consecutive samples, C the least constant with
// size(n) <= C * n^D on the samples.
struct PowerFit {
  double C = 0;
  unsigned D = 0;
  double at(double n) const;
};
PowerFit fit_power(const std::vector<std::pair<std::uint64_t, std::size_t>>& samples);

}  // namespace forge
