#include <gtest/gtest.h>

#include <map>

#include "forge/seq.hpp"

using namespace forge;

namespace {
// walk the diagonals x+y = 0,1,2,... in order of increasing y
std::map<std::pair<int, int>, int> diagonal_index(int limit) {
  std::map<std::pair<int, int>, int> idx;
  int n = 0;
  for (int s = 0; s < limit; ++s)
    for (int y = 0; y <= s; ++y) idx[{s - y, y}] = n++;
  return idx;
}
}  // namespace

TEST(Pair, FrozenValues) {
  auto idx = diagonal_index(4);
  EXPECT_EQ(idx.at({1, 0}), 1);
  EXPECT_EQ(idx.at({0, 1}), 2);
  EXPECT_EQ(pair(0, 0), 0);
  EXPECT_EQ(pair(1, 0), 1);
  EXPECT_EQ(pair(0, 1), 2);
  EXPECT_EQ(unpair(0), std::make_pair(Nat(0), Nat(0)));
  EXPECT_EQ(unpair(2), std::make_pair(Nat(0), Nat(1)));
  EXPECT_EQ(unpair(1), std::make_pair(Nat(1), Nat(0)));
}

TEST(Pair, AgreesWithDiagonalWalk) {
  auto idx = diagonal_index(40);
  for (auto& [xy, n] : idx) EXPECT_EQ(pair(xy.first, xy.second), n);
}

TEST(Pair, InjectiveMonotoneExhaustive) {
  std::vector<Nat> seen;
  seen.reserve(512 * 512);
  for (int x = 0; x < 512; ++x)
    for (int y = 0; y < 512; ++y) {
      Nat p = pair(x, y);
      if (x + 1 < 512) ASSERT_LT(p, pair(x + 1, y));
      if (y + 1 < 512) ASSERT_LT(p, pair(x, y + 1));
      auto [a, b] = unpair(p);
      ASSERT_EQ(a, x);
      ASSERT_EQ(b, y);
      seen.push_back(p);
    }
  std::sort(seen.begin(), seen.end());
  EXPECT_EQ(std::adjacent_find(seen.begin(), seen.end()), seen.end());
}

TEST(Pair, BigArguments) {
  Nat x("98765432109876543210987654321"), y("12345678901234567890");
  auto [a, b] = unpair(pair(x, y));
  EXPECT_EQ(a, x);
  EXPECT_EQ(b, y);
}

TEST(Tuple, Examples) {
  EXPECT_EQ(tuple_k({5}), 5);
  Nat t = tuple_k({3, 4, 7});
  EXPECT_EQ(t, pair(pair(3, 4), 7));
  EXPECT_EQ(project(t, 2, 3), 7);
  EXPECT_EQ(project(t, 0, 3), 3);
  EXPECT_EQ(project(t, 1, 3), 4);
  EXPECT_THROW(project(t, 3, 3), IndexError);
  EXPECT_THROW(tuple_k({}), IndexError);
}

TEST(Tuple, RoundtripExhaustive) {
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b)
      for (int c = 0; c < 16; ++c) {
        Nat t = tuple_k({a, b, c});
        ASSERT_EQ(project(t, 0, 3), a);
        ASSERT_EQ(project(t, 1, 3), b);
        ASSERT_EQ(project(t, 2, 3), c);
      }
}

TEST(Seq, Examples) {
  Nat s = encode_seq({4, 9});
  EXPECT_EQ(seq_get(s, 1), 9);
  EXPECT_EQ(seq_get(s, 0), 4);
  EXPECT_EQ(seq_get(s, 5), 0);
  EXPECT_EQ(seq_get(encode_seq({}), 0), 0);
  EXPECT_EQ(decode_seq(s), (std::vector<Nat>{4, 9}));
}

TEST(Seq, NonCanonicalCodesRejected) {
  // width 3 but largest element only needs 1 bit
  EXPECT_THROW(decode_seq(pair(2, pair(3, 1))), DecodeError);
  // body longer than length*width
  EXPECT_THROW(decode_seq(pair(1, pair(1, 2))), DecodeError);
}

TEST(Seq, InjectiveOnSmallSequences) {
  std::set<Nat> codes;
  int count = 0;
  for (int len = 0; len <= 3; ++len) {
    int total = 1;
    for (int i = 0; i < len; ++i) total *= 5;
    for (int v = 0; v < total; ++v) {
      std::vector<Nat> xs;
      int w = v;
      for (int i = 0; i < len; ++i) {
        xs.push_back(w % 5);
        w /= 5;
      }
      Nat c = encode_seq(xs);
      codes.insert(c);
      ++count;
      ASSERT_EQ(decode_seq(c), xs);
    }
  }
  EXPECT_EQ(codes.size(), static_cast<std::size_t>(count));
}

TEST(Strings, Examples) {
  Nat x = str_to_num("101");
  EXPECT_EQ(seq_get(x, 0), 1);
  EXPECT_EQ(seq_get(x, 1), 0);
  EXPECT_EQ(seq_get(x, 2), 1);
  EXPECT_EQ(num_to_str(str_to_num("0110"), 4), "0110");
  EXPECT_EQ(str_to_num(""), encode_seq({}));
  EXPECT_THROW(str_to_num("0101", 3), SliceExceeded);
}

TEST(Strings, RoundtripExhaustive) {
  for (int n = 0; n <= 10; ++n)
    for (int v = 0; v < (1 << n); ++v) {
      std::string s(n, '0');
      for (int i = 0; i < n; ++i) s[i] = ((v >> i) & 1) ? '1' : '0';
      Nat x = str_to_num(s);
      ASSERT_EQ(num_to_str(x, n), s);
      for (int i = 0; i < n; ++i) ASSERT_EQ(seq_get(x, i), s[i] == '1' ? 1 : 0);
    }
}
