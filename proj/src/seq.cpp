#include "forge/seq.hpp"

namespace forge {

std::size_t bit_length(const Nat& x) {
  if (x == 0) return 0;
  return boost::multiprecision::msb(x) + 1;
}

Nat pow2(std::size_t e) {
  Nat r = 1;
  r <<= e;
  return r;
}

Nat pair(const Nat& x, const Nat& y) {
  Nat s = x + y;
  return s * (s + 1) / 2 + y;
}

std::pair<Nat, Nat> unpair(const Nat& n) {
  // w = floor((sqrt(8n+1)-1)/2)
  Nat disc = 8 * n + 1;
  Nat w = (Nat(boost::multiprecision::sqrt(disc)) - 1) / 2;
  Nat t = w * (w + 1) / 2;
  Nat y = n - t;
  return {w - y, y};
}

Nat tuple_k(const std::vector<Nat>& xs) {
  if (xs.empty()) throw IndexError("tuple of arity 0");
  Nat r = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) r = pair(r, xs[i]);
  return r;
}

Nat project(const Nat& n, std::size_t i, std::size_t k) {
  if (k == 0 || i >= k) throw IndexError("project index " + std::to_string(i) + " out of arity " + std::to_string(k));
  Nat cur = n;
  // peel components k-1 down to i
  for (std::size_t j = k - 1; j > i; --j) cur = unpair(cur).first;
  if (i == 0) return cur;
  return unpair(cur).second;
}

Nat encode_seq(const std::vector<Nat>& xs) {
  Nat mx = 0;
  for (auto& v : xs)
    if (v > mx) mx = v;
  std::size_t w = bit_length(mx);
  Nat packed = 0;
  for (std::size_t i = xs.size(); i-- > 0;) {
    packed <<= w;
    packed |= xs[i];
  }
  return pair(Nat(xs.size()), pair(Nat(w), packed));
}

std::vector<Nat> decode_seq(const Nat& x) {
  auto [n, rest] = unpair(x);
  auto [w, packed] = unpair(rest);
  if (w > 4096 || n > 1u << 20) throw DecodeError("sequence header out of range");
  std::size_t len = static_cast<std::size_t>(n), width = static_cast<std::size_t>(w);
  if (bit_length(packed) > len * width) throw DecodeError("packed body longer than header allows");
  std::vector<Nat> out(len);
  Nat mask = pow2(width) - 1;
  Nat cur = packed, mx = 0;
  for (std::size_t i = 0; i < len; ++i) {
    out[i] = cur & mask;
    cur >>= width;
    if (out[i] > mx) mx = out[i];
  }
  if (bit_length(mx) != width) throw DecodeError("field width is not canonical");
  return out;
}

Nat seq_get(const Nat& x, std::size_t j) {
  auto xs = decode_seq(x);
  return j < xs.size() ? xs[j] : Nat(0);
}

Nat str_to_num(const std::string& bits, std::size_t width_cap) {
  if (bits.size() > width_cap)
    throw SliceExceeded("string of length " + std::to_string(bits.size()) + " exceeds width " + std::to_string(width_cap));
  std::vector<Nat> xs;
  for (char c : bits) {
    if (c != '0' && c != '1') throw DecodeError("not a bit string");
    xs.push_back(c == '1' ? 1 : 0);
  }
  return encode_seq(xs);
}

std::string num_to_str(const Nat& x, std::size_t n) {
  auto xs = decode_seq(x);
  if (xs.size() > n) throw DecodeError("sequence longer than requested length");
  std::string out(n, '0');
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] > 1) throw DecodeError("sequence element is not a bit");
    out[i] = xs[i] == 1 ? '1' : '0';
  }
  return out;
}

}  // namespace forge
