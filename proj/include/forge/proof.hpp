#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forge/prop.hpp"

namespace forge {

// Gamma --> Delta. Both sides are read as sets when a rule is matched, so
// duplicates and order do not matter (contraction and exchange are implicit).
struct Sequent {
  std::vector<PropP> left, right;
};

enum class Rule { Axiom, WeakLeft, WeakRight, AndLeft, AndRight, OrLeft, OrRight, NotLeft, NotRight, Cut };

struct RuleTag {
  Rule rule = Rule::Axiom;
  // Cut only: position of the cut formula in the right side of the first premise
  std::size_t cut_index = 0;
};

struct ProofLine {
  Sequent seq;
  RuleTag tag;
  std::vector<std::size_t> premises;
};

struct Proof {
  std::vector<ProofLine> lines;
};

std::string rule_name(const RuleTag& t);
RuleTag parse_rule(const std::string& token);  // "cut(2)" for cuts; ParseError otherwise

// Text format, one line per proof line:
//   n: (seq (f ...) (f ...)) rule [p1 p2 ...]
// Line numbers must be 0, 1, 2, ... in order. `;` starts a comment.
Proof parse_proof(const std::string& text);
std::string print_proof(const Proof& pi);

bool equal(const Sequent& a, const Sequent& b);  // as sets
bool equal(const Proof& a, const Proof& b);      // literal, line by line

// Purely syntactic. MalformedProof when a premise index is not strictly
// earlier than its line; false for any other defect.
bool check_frege(const Proof& pi, const PropP& target);
bool check_depth_frege(const Proof& pi, const PropP& target, unsigned d);
// Does line i follow from its premises? (premises assumed in range)
bool line_ok(const Proof& pi, std::size_t i);
unsigned proof_depth(const Proof& pi);  // max prop_depth over all formulas

// Self-delimiting bit encoding (version 1), see README for the layout.
std::string encode_proof(const Proof& pi);
Proof decode_proof(const std::string& bits);  // DecodeError on malformed input

struct ProofSystem {
  bool bounded = false;  // depth-d Frege when set
  unsigned d = 0;
  static ProofSystem frege() { return {}; }
  static ProofSystem depth_frege(unsigned d) { return {true, d}; }
  bool check(const Proof& pi, const PropP& target) const;
  std::string name() const;
};

// The formula A when the endsequent is --> A.
std::optional<PropP> proved_formula(const Proof& pi);

// Every corruption of a single line: other rule tags (cut indices 0..2),
// changed, dropped and extra premises, removed, moved, negated and added
// formulas. Labelled "line i: what".
std::vector<std::pair<std::string, Proof>> single_line_mutations(const Proof& pi);

struct SweepItem {
  std::string name;
  Proof proof;
  PropP target;
};

struct SoundnessReport {
  std::size_t accepted = 0, rejected = 0;
  std::vector<std::string> failures;  // accepted but not a tautology
  std::vector<std::string> rejected_names;
};

// Every *.proof file of a directory, sorted by name; the target is the
// proved formula of the last line (ParseError when there is none).
std::vector<SweepItem> load_proof_corpus(const std::string& dir);

// taut_check on the target of every accepted item; variable counts above
// var_cap raise CapExceeded.
SoundnessReport soundness_sweep(const ProofSystem& sys, std::size_t var_cap, const std::vector<SweepItem>& corpus);

}  // namespace forge
