#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "forge/formula.hpp"

namespace forge {

enum Move : unsigned { Stay = 0, Left = 1, Right = 2 };

struct Transition {
  unsigned state;  // 1..k
  unsigned write;  // 0/1
  unsigned move;   // Move
};

struct TM {
  std::string name;
  unsigned k = 0;
  std::vector<Transition> table;  // index (q-1)*2 + b
  const Transition& delta(unsigned q, unsigned b) const;
  unsigned state_bits() const;  // bit length of k
};

TM parse_tm(const std::string& text, const std::string& name = "");
TM load_tm(const std::string& path);
std::string print_tm(const TM& tm);

TM scan1();
TM parity();
TM zeros();
std::vector<TM> corpus_machines();

struct Cell {
  unsigned bit = 0;
  unsigned mark = 0;  // 0 = head absent, else the current state
  bool operator==(const Cell&) const = default;
};
using Configuration = std::vector<Cell>;

struct Tableau {
  std::vector<Configuration> rows;
  std::size_t width = 0;
};

Configuration initial_configuration(const std::string& input, std::size_t width);
std::size_t head_position(const Configuration& c);  // throws on invariant violation
Configuration step(const TM& tm, const Configuration& c);
Tableau run(const TM& tm, const std::string& input, std::size_t steps, std::size_t width);

struct PolyBound {
  std::vector<std::uint64_t> coeffs;  // coeffs[i] * n^i
  std::uint64_t operator()(std::uint64_t n) const;
  TermP as_term(const TermP& n) const;
  std::string str() const;
  static PolyBound parse(const std::string& text);  // "2,1" -> 2 + n
};

// state k at row p(|input|) of the run on a tape of width p(|input|)
bool accepts(const TM& tm, const std::string& input, const PolyBound& p);

// Flat layout: bit of cell (i,j) at <i,j,0>, state bits (lsb first) at <i,j,1..sb>.
std::size_t witness_position(std::size_t i, std::size_t j, std::size_t field);
std::size_t witness_length(std::size_t last_row, std::size_t width, unsigned state_bits);
std::string tableau_to_witness(const Tableau& t, unsigned state_bits);

std::vector<std::string> all_inputs(std::size_t max_len);

}  // namespace forge
