#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "forge/nepo.hpp"
#include "forge/proof.hpp"
#include "forge/tm.hpp"

namespace forge {

// Outcome of one oracle sweep. `checked` counts comparisons, `failures`
// keeps the first few disagreements in input order.
struct SuiteReport {
  std::string name;
  bool pass = true;
  std::uint64_t checked = 0;
  std::uint64_t mismatches = 0;
  std::vector<std::string> failures;
  std::string detail;
  double seconds = 0;

  explicit SuiteReport(std::string n) : name(std::move(n)) {}
  void fail(const std::string& what);
};

// eval(compile_acc) against the simulator on every input up to max_len
// (the empty input included).
SuiteReport acc_equivalence(const TM& tm, const PolyBound& p, std::size_t max_len);

// Simulator witnesses of `count` accepting inputs (seeded choice among the
// inputs up to max_len, longer ones added while there are too few) must pass
// check_witness, and at least min_rate of
// the single-bit flips at constrained positions must fail it.
SuiteReport witness_mutation(const TM& tm, const PolyBound& p, std::size_t max_len, std::size_t count,
                             std::uint64_t seed, double min_rate = 0.95);

// Reach^l for l = 0..levels against the simulator, for every (p1, p2) within
// the budget, every cell code, and the start configurations of the inputs.
SuiteReport nepo_level_equivalence(const TM& tm, const NepoBounds& b, unsigned levels,
                                   const std::vector<std::string>& inputs);

// eval(compile_acceptance_sigma0) against the width-W simulator after m^c
// steps, on every input up to max_len; also requires
// the formula to classify as SigmaB(0).
SuiteReport nepo_acceptance(const TM& tm, const NepoBounds& b, std::size_t max_len);

// NodeValue against the bottom-up evaluation on all labelings for the small
// arities, `random_labelings` seeded ones for each large arity; every call is
// held to the depth bound. With `mfv`, the MFV witness is also checked on
// every instance and Y(1) compared with the root value.
SuiteReport node_value_sweep(const std::vector<std::size_t>& exhaustive, const std::vector<std::size_t>& sampled,
                             std::size_t random_labelings, std::uint64_t seed, bool mfv);

struct NamedSentence {
  std::string name;
  FormulaP f;
};
std::vector<NamedSentence> load_sentences(const std::string& dir);

// taut_check(translate(phi, n)) against brute-force validity for n <= max_n.
SuiteReport translation_adequacy(const std::vector<NamedSentence>& sentences, std::uint64_t max_n);
// prop_depth constant over n = 1..8; sizes fitted at n <= 4 stay within a
// factor 2 of C n^D at n = 5..8.
SuiteReport translation_growth(const std::vector<NamedSentence>& sentences);

// Corpus accepted, every single-line mutation rejected, accepted endsequents
// tautological (var_cap), depth-d acceptance monotone in d for d = 1..4.
SuiteReport proof_checking(const std::vector<SweepItem>& corpus, std::size_t var_cap);

// reflection_instance(sys, t, x) by the evaluator, for both checker variants;
// the honest one must be true and the broken one false. The direct
// enumerator is run alongside as a cross-check.
SuiteReport reflection_check(const ProofSystem& sys, const PolyBound& t, std::uint64_t x);

}  // namespace forge
