#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forge/eval.hpp"
#include "forge/formula.hpp"
#include "forge/tm.hpp"

namespace forge {

struct Rational {
  std::uint64_t num = 1, den = 2;
  static Rational parse(const std::string& text);  // "p/q" or "p"
  std::string str() const;
};

struct NepoBounds {
  unsigned c = 1;       // time m^c
  Rational eps{1, 2};   // space exponent
  unsigned k = 1;       // input length m^k
  std::uint64_t m = 4;
  std::optional<unsigned> d;  // derived when absent
};

// Integer parameters of the construction for one machine.
struct NepoLayout {
  Nat L;               // len(I) = m^k
  std::uint64_t W;     // tape cells: ceil(L^eps)
  std::uint64_t B;     // lines per level: ceil(L^((1-k eps)/k))
  Nat T;               // total steps m^c
  unsigned d;
  unsigned sb;         // state bits
  unsigned cw;         // bits per cell, 1 + sb
  std::uint64_t cfg_bits;   // W * cw
  std::uint64_t comp_bits;  // (B+1) * W * cw
  Nat cfg_max, comp_max, cell_max;  // all-ones bounds
  Nat num_bound;       // slice bound covering every quantifier bound
};

// Least x with x^den >= base^num.
Nat ceil_rational_power(const Nat& base, std::uint64_t num, std::uint64_t den);

NepoLayout nepo_layout(const TM& tm, const NepoBounds& b);
FiniteSlice nepo_slice(const NepoLayout& lay);

// A cell is coded as bit | state << 1; a configuration as the concatenation of
// its cells (cell z at bit z*cw); a computation as its rows (row r at r*W*cw).
std::uint64_t cell_code(const Cell& c);
Nat config_to_number(const Configuration& c, unsigned sb);
Configuration config_from_number(const Nat& n, std::size_t width, unsigned sb);
Nat rows_to_number(const std::vector<Configuration>& rows, unsigned sb);

// Free cfg, p1, p2, cell, comp: comp is the level-0 computation of B steps from
// configuration cfg and cell is cell p2 of row p1.
FormulaP compile_reach0(const TM& tm, const NepoBounds& b);
// Same shape for any level; row r of a level-l computation is r * B^l steps in.
FormulaP compile_reach_body(const TM& tm, const NepoBounds& b, unsigned level);
// Exists comp . reach^level; free cfg, p1, p2, cell.
FormulaP compile_Reach(const TM& tm, const NepoBounds& b, unsigned level);
// Free X, i, j, cell: cell j after i steps of the run on input X.
FormulaP compile_cell_predicate(const TM& tm, const NepoBounds& b);
// Free X: state k after T steps.
FormulaP compile_acceptance_sigma0(const TM& tm, const NepoBounds& b);

// Mixed radix digits of i: r[0..d-1] < B, r[d] <= B.
std::vector<std::uint64_t> radix_digits(const Nat& i, std::uint64_t B, unsigned d);

struct SizeReport {
  std::vector<std::size_t> reach_sizes;  // per level
  std::size_t acceptance_size = 0;
  std::size_t cap = 0;
  bool over_cap = false;
  std::string str() const;
};
// Cap from FORGE_NODE_CAP when set, else 5'000'000 nodes.
std::size_t node_cap();
SizeReport size_report(const TM& tm, const NepoBounds& b);

}  // namespace forge
