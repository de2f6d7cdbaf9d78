#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "forge/eval.hpp"
#include "forge/formula.hpp"
#include "forge/proof.hpp"
#include "forge/tm.hpp"

namespace forge {

// Bit-level tables the reflection formulas talk about. Everything is sized
// from the string bound n so that formulas and proofs both fit in n bits.
//
// Formula string X: nodes of K = 2 + 2w bits, node j at bits j*K..
//   op (2 bits, lsb first): 0 leaf, 1 not, 2 and, 3 or; then fields a, b (w bits each, lsb first)
//   leaf a = 0: constant b (b <= 1); leaf a = 1: variable number b
//   not: child a < j, b = 0; and/or: children a, b < j
//   |X| is a positive multiple of K; the last node is the formula, earlier
//   unreachable nodes are allowed (they carry cut formulas).
// Truth assignment Z: variable v is true iff Z(v).
// Proof string P: lines of Lw = 4 + 2wl + 2N bits, line i at bits i*Lw..
//   rule code (4 bits, Rule enum order), premises p, q (wl bits each),
//   left mask (N bits), right mask (N bits): sequents are sets of nodes of X.
//   Unused premise fields are 0. Depth-bounded systems append one label of
//   dl bits per node after the lines, an upper bound on the node's depth.
struct CompactLayout {
  std::size_t n = 0;
  unsigned w = 1, wl = 1, dl = 0;
  std::size_t K = 0, N = 0, Lw = 0, M = 0;
  bool bounded = false;
  unsigned d = 0;
};

CompactLayout compact_layout(std::size_t n, const ProofSystem& sys);

enum class CheckerVariant {
  Honest,
  // axiom lines only need a single formula on the right, so --> A is "provable" for every A
  BrokenAxiom,
};

// Direct implementations over bit strings ('0'/'1').
bool compact_fla(const CompactLayout& L, const std::string& X);
bool compact_prf(const CompactLayout& L, const std::string& P, const std::string& X,
                 CheckerVariant v = CheckerVariant::Honest);
bool compact_sat(const CompactLayout& L, const std::string& Z, const std::string& X);  // needs compact_fla(X)

struct CompactInstance {
  std::string P, X;
  std::map<PropVar, unsigned> vars;  // propositional variable -> variable number
};

// Encodes a proof of --> target; nullopt when it does not fit the layout or
// uses formulas the tables cannot express (And/Or of arity other than 2,
// target occurring inside another formula of the proof).
std::optional<CompactInstance> compact_encode(const CompactLayout& L, const Proof& pi, const PropP& target);

// Sigma_0 formulas: free X for fla, free P and X for prf, free Z and X for
// the satisfaction matrix (E is the node-value string).
FormulaP fla_formula(const CompactLayout& L);
FormulaP prf_formula(const CompactLayout& L, CheckerVariant v = CheckerVariant::Honest);
FormulaP sat_matrix(const CompactLayout& L);
// Z |= X: forall E <= N (matrix -> E(root)); the Delta_1 definition's universal form.
FormulaP sat_formula(const CompactLayout& L);

// forall P <= n forall X <= n forall Z <= n ((Fla(X) and Prf(P, X)) -> Z |= X), n = t(x)
FormulaP reflection_instance(const ProofSystem& sys, const PolyBound& t, std::uint64_t x,
                             CheckerVariant v = CheckerVariant::Honest);
// slice large enough to evaluate the instance
FiniteSlice reflection_slice(const CompactLayout& L);

struct ReflectionSweep {
  bool holds = true;
  std::uint64_t accepted_pairs = 0;  // (P, X) pairs with Fla and Prf
  std::optional<std::pair<std::string, std::string>> counterexample;  // (P, X)
};
// Exhaustive over all strings of length <= n using the direct checkers.
ReflectionSweep reflection_sweep_direct(const CompactLayout& L, CheckerVariant v = CheckerVariant::Honest);

}  // namespace forge
