#pragma once
#include <cstddef>
#include <string>

#include "forge/formula.hpp"

namespace forge {

// Heap-layout monotone formula. G[x] = '1' means node x is AND, '0' OR, for
// internal nodes 1..a-1 (G[0] is unused). Leaves are nodes a..2a-1 and node
// a+x reads input bit I[x].
struct MonotoneTree {
  std::string G;
  std::size_t a = 1;
};

void validate_tree(const MonotoneTree& t);

struct NodeValueTrace {
  std::size_t max_depth = 0;
  std::size_t calls = 0;
};

// Recursive NodeValue: positions past 2a give 0, positions a..2a-1 are
// leaves, anything else combines its two children with G's gate.
bool node_value(const MonotoneTree& t, const std::string& I, std::size_t i,
                NodeValueTrace* trace = nullptr);

std::size_t node_value_depth_bound(const MonotoneTree& t);

// Straightforward bottom-up evaluation used as an oracle.
bool eval_tree_naive(const MonotoneTree& t, const std::string& I, std::size_t i = 1);

// Y of length 2a with Y(0)=1 and Y(x) = node_value(x) for 1 <= x < 2a.
std::string mfv_witness(const MonotoneTree& t, const std::string& I);

bool check_mfv(const MonotoneTree& t, const std::string& I, const std::string& Y);

// delta_MFV(a,G,I,Y) as a formula with free a, G, I, Y.
FormulaP delta_mfv_formula();

}  // namespace forge
