#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "forge/errors.hpp"

namespace forge {

using Nat = boost::multiprecision::cpp_int;

enum class TermKind { Num, Var, Plus, Times, Len, Pair };

struct Term;
using TermP = std::shared_ptr<const Term>;

struct Term {
  TermKind kind;
  Nat value;         // Num
  std::string name;  // Var (number variable) or Len (string variable)
  TermP a, b;        // Plus, Times, Pair
};

// Bit(t, u): bit u of the binary expansion of t is set. Not part of the
// textbook language; used to read number-coded tables.
enum class FKind { Eq, Leq, SetEq, In, Bit, And, Or, Not, Imp, ExN, AlN, ExS, AlS };

struct Formula;
using FormulaP = std::shared_ptr<const Formula>;

struct Formula {
  FKind kind;
  TermP s, t;          // Eq, Leq, Bit: (s, t); In: s; quantifiers: s is the bound
  std::string x, y;    // SetEq: (x, y); In: x; quantifiers: bound variable
  FormulaP f, g;       // connectives, quantifier body in f
};

enum class Sort { Number, String };

// term constructors
TermP num(const Nat& v);
TermP zero();
TermP one();
TermP var(const std::string& name);
TermP plus(TermP a, TermP b);
TermP times(TermP a, TermP b);
TermP len(const std::string& X);
TermP tpair(TermP a, TermP b);
TermP tuple(const std::vector<TermP>& xs);

// formula constructors
FormulaP eq(TermP a, TermP b);
FormulaP leq(TermP a, TermP b);
FormulaP lt(TermP a, TermP b);  // (leq (+ a 1) b)
FormulaP seteq(const std::string& X, const std::string& Y);
FormulaP in(TermP t, const std::string& X);
FormulaP bit(TermP t, TermP i);
FormulaP land(FormulaP a, FormulaP b);
FormulaP lor(FormulaP a, FormulaP b);
FormulaP lnot(FormulaP a);
FormulaP imp(FormulaP a, FormulaP b);
FormulaP iff(FormulaP a, FormulaP b);
FormulaP exN(const std::string& x, TermP bound, FormulaP body);
FormulaP alN(const std::string& x, TermP bound, FormulaP body);
FormulaP exS(const std::string& X, TermP bound, FormulaP body);
FormulaP alS(const std::string& X, TermP bound, FormulaP body);
FormulaP truth();    // (= 0 0)
FormulaP falsity();  // (= 0 1)
FormulaP conj(const std::vector<FormulaP>& fs);  // right-nested, empty -> truth
FormulaP disj(const std::vector<FormulaP>& fs);  // right-nested, empty -> falsity

bool equal(const TermP& a, const TermP& b);
bool equal(const FormulaP& a, const FormulaP& b);

std::string print_term(const TermP& t);
std::string print_formula(const FormulaP& f, bool pretty = false);

bool is_atom(const FormulaP& f);
bool is_quantifier(FKind k);
bool is_string_var(const std::string& name);

struct QuantClass {
  enum Kind { SigmaB, PiB } kind;
  unsigned i;
  bool operator==(const QuantClass&) const = default;
};
std::string to_string(const QuantClass& q);

QuantClass classify(const FormulaP& f);
unsigned depth(const FormulaP& f);
std::size_t formula_size(const FormulaP& f);
std::size_t term_size(const TermP& t);

// capture-avoiding; a bound occurrence of var stops the substitution
FormulaP substitute(const FormulaP& f, const std::string& var, const TermP& t);
TermP substitute(const TermP& s, const std::string& var, const TermP& t);

std::set<std::string> free_vars(const FormulaP& f);
std::set<std::string> free_vars(const TermP& t);
bool string_len_referenced(const FormulaP& f, const std::string& X);

}  // namespace forge
