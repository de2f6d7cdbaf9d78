#pragma once
#include <map>
#include <memory>
#include <string>

#include "forge/formula.hpp"

namespace forge {

struct FiniteSlice {
  Nat numBound = 1;             // number quantifier bounds must evaluate <= numBound
  std::size_t strWidth = 64;    // string quantifier bounds and bound strings must be <= strWidth
};

struct Assignment {
  std::map<std::string, Nat> nums;
  std::map<std::string, std::string> strs;  // bit strings, '0'/'1'
  Assignment& num(const std::string& n, const Nat& v) { nums[n] = v; return *this; }
  Assignment& str(const std::string& n, const std::string& v) { strs[n] = v; return *this; }
};

struct EvalOptions {
  // number quantifiers with bound below this are enumerated; above, searched bitwise
  std::uint64_t enumerate_below = 256;
  bool witness_cache = true;
  std::size_t witness_cap = 64;
};

struct EvalStats {
  std::uint64_t atoms = 0;
  std::uint64_t branches = 0;
  std::uint64_t witness_hits = 0;
  std::uint64_t witness_builds = 0;
  std::uint64_t witness_aborts = 0;
};

// Compiled evaluator. Quantifiers over large domains are decided by a
// three-valued bitwise search that only branches on bits the body actually
// reads; results are identical to full expansion. Caches survive between
// calls on the same instance.
class Evaluator {
 public:
  Evaluator(const FormulaP& f, const FiniteSlice& s, const EvalOptions& opt = {});
  ~Evaluator();
  Evaluator(Evaluator&&) noexcept;
  bool operator()(const Assignment& env);
  const EvalStats& stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool eval(const FormulaP& f, const FiniteSlice& s, const Assignment& env);

// Textbook expansion: every number in [0,bound], every bit string of every
// length <= bound. Exponential; used as the reference for small formulas.
bool eval_naive(const FormulaP& f, const FiniteSlice& s, const Assignment& env);

// X of length y with X(z) iff phi[z] for z < y. z defaults to the single free
// number variable of phi not bound by env.
std::string comprehension_witness(const FormulaP& phi, std::uint64_t y, const FiniteSlice& s,
                                  const Assignment& env, const std::string& z = "");

}  // namespace forge
