#include <gtest/gtest.h>

#include "forge/tm.hpp"

using namespace forge;

TEST(TMFormat, ParsesAndRejects) {
  TM t = scan1();
  EXPECT_EQ(t.k, 2u);
  EXPECT_EQ(t.delta(1, 0).move, Right);
  EXPECT_EQ(parse_tm(print_tm(t)).table.size(), t.table.size());
  EXPECT_THROW(parse_tm("states 2\n1 0 -> 1 0 2\n1 0 -> 2 0 2\n1 1 -> 2 1 0\n2 0 -> 2 0 0\n2 1 -> 2 1 0\n"), TMError);
  EXPECT_THROW(parse_tm("states 2\n1 0 -> 1 0 2\n"), TMError);
  EXPECT_THROW(parse_tm("states 2\n1 0 -> 3 0 2\n"), TMError);
  EXPECT_THROW(parse_tm("states 2\n1 0 -> 1 0 3\n"), TMError);
}

TEST(TMFiles, ShippedCorpusMatchesBuiltins) {
  for (auto& t : corpus_machines()) {
    TM f = load_tm(std::string(FORGE_DATA_DIR) + "/tm/" + t.name + ".tm");
    EXPECT_EQ(print_tm(f), print_tm(t));
  }
}

TEST(Step, Examples) {
  TM t = scan1();
  auto c = step(t, initial_configuration("00", 2));
  EXPECT_EQ(head_position(c), 1u);
  EXPECT_EQ(c[1].mark, 1u);
  EXPECT_EQ(c[0].bit, 0u);
  EXPECT_EQ(c[1].bit, 0u);
  auto d = step(t, initial_configuration("10", 2));
  EXPECT_EQ(head_position(d), 0u);
  EXPECT_EQ(d[0].mark, 2u);
  EXPECT_EQ(d[0].bit, 1u);
  Configuration bad(3);
  EXPECT_THROW(step(t, bad), TMError);
}

TEST(Step, LeftMoveAtCellZeroClamps) {
  TM t = parse_tm("states 2\n1 0 -> 2 1 1\n1 1 -> 2 1 1\n2 0 -> 2 0 0\n2 1 -> 2 1 0\n");
  auto c = step(t, initial_configuration("0", 3));
  EXPECT_EQ(head_position(c), 0u);
  EXPECT_EQ(c[0].mark, 2u);
  EXPECT_EQ(c[0].bit, 1u);
}

TEST(Step, StayMachineComposition) {
  TM t = parse_tm("states 2\n1 0 -> 1 1 0\n1 1 -> 1 0 0\n2 0 -> 2 0 0\n2 1 -> 2 1 0\n");
  auto c0 = initial_configuration("01", 2);
  auto twice = step(t, step(t, c0));
  auto r = run(t, "01", 2, 2);
  EXPECT_EQ(r.rows[2], twice);
  EXPECT_EQ(twice, c0);
}

TEST(Run, Examples) {
  TM t = scan1();
  auto r = run(t, "01", 2, 4);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[2][1].mark, 2u);
  auto z = run(t, "00", 4, 4);
  for (auto& row : z.rows)
    for (auto& c : row) EXPECT_NE(c.mark, t.k);
  auto e = run(t, "", 0, 1);
  ASSERT_EQ(e.rows.size(), 1u);
  EXPECT_EQ(e.rows[0][0].mark, 1u);
  EXPECT_THROW(run(t, "0101", 1, 3), TMError);
}

TEST(Accepts, Examples) {
  TM t = scan1();
  PolyBound p{{2, 1}};
  EXPECT_TRUE(accepts(t, "001", p));
  EXPECT_FALSE(accepts(t, "000", p));
  EXPECT_FALSE(accepts(t, "", p));
}

TEST(Accepts, CorpusLanguages) {
  PolyBound p{{2, 1}};
  for (auto& x : all_inputs(6)) {
    int ones = std::count(x.begin(), x.end(), '1');
    EXPECT_EQ(accepts(scan1(), x, p), ones > 0) << x;
    EXPECT_EQ(accepts(parity(), x, p), ones % 2 == 1) << x;
    EXPECT_EQ(accepts(zeros(), x, p), ones == 0) << x;
  }
}

TEST(Accepts, ScanAcceptingStateAbsorbing) {
  TM t = scan1();
  for (auto& x : all_inputs(5)) {
    auto r = run(t, x, 12, 12);
    bool seen = false;
    for (auto& row : r.rows) {
      bool here = false;
      for (auto& c : row) here |= c.mark == t.k;
      if (seen) EXPECT_TRUE(here);
      seen |= here;
    }
  }
}

TEST(Property, SingleHeadAndFrame) {
  for (auto& t : corpus_machines())
    for (auto& x : all_inputs(5)) {
      auto r = run(t, x, 9, 8);
      for (std::size_t i = 0; i < r.rows.size(); ++i) {
        EXPECT_NO_THROW(head_position(r.rows[i]));
        if (i == 0) continue;
        std::size_t h = head_position(r.rows[i - 1]);
        for (std::size_t j = 0; j < r.width; ++j)
          if (j != h) EXPECT_EQ(r.rows[i][j].bit, r.rows[i - 1][j].bit);
      }
      auto again = run(t, x, 9, 8);
      EXPECT_EQ(again.rows, r.rows);
    }
}

TEST(Witness, LayoutPositions) {
  auto r = run(scan1(), "1", 1, 3);
  std::string w = tableau_to_witness(r, 2);
  EXPECT_EQ(w.size(), witness_length(1, 3, 2));
  EXPECT_EQ(w[witness_position(0, 0, 0)], '1');
  EXPECT_EQ(w[witness_position(0, 0, 1)], '1');  // state 1, low bit
  EXPECT_EQ(w[witness_position(0, 0, 2)], '0');
  EXPECT_EQ(w[witness_position(1, 0, 1)], '0');  // state 2
  EXPECT_EQ(w[witness_position(1, 0, 2)], '1');
}
