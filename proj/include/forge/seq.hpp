#pragma once
#include <string>
#include <utility>
#include <vector>

#include "forge/formula.hpp"

namespace forge {

Nat pair(const Nat& x, const Nat& y);
std::pair<Nat, Nat> unpair(const Nat& n);

Nat tuple_k(const std::vector<Nat>& xs);
Nat project(const Nat& n, std::size_t i, std::size_t k);

// Sequence code: pair(length, pair(width, packed)) where packed holds the
// elements little-endian in fields of `width` bits and width is the bit
// length of the largest element. Only canonical codes decode.
Nat encode_seq(const std::vector<Nat>& xs);
std::vector<Nat> decode_seq(const Nat& x);
Nat seq_get(const Nat& x, std::size_t j);

constexpr std::size_t kDefaultStrWidth = 4096;

Nat str_to_num(const std::string& bits, std::size_t width_cap = kDefaultStrWidth);
std::string num_to_str(const Nat& x, std::size_t n);

std::size_t bit_length(const Nat& x);
Nat pow2(std::size_t e);

}  // namespace forge
