#include <gtest/gtest.h>

#include "forge/acc.hpp"
#include "forge/eval.hpp"
#include "forge/parser.hpp"

using namespace forge;

namespace {
const PolyBound kLinear{{2, 1}};  // n + 2

bool eval_acc(Evaluator& ev, const std::string& X) { return ev(Assignment{}.str("X", X)); }

FiniteSlice acc_slice() { return FiniteSlice{Nat(1) << 32, 1 << 16}; }
}  // namespace

TEST(Acc, ClassifiesSigmaB1) {
  for (auto& tm : corpus_machines()) {
    auto f = compile_acc(tm, kLinear);
    EXPECT_EQ(classify(f), (QuantClass{QuantClass::SigmaB, 1}));
    EXPECT_EQ(classify(acc_matrix(tm, kLinear)).i, 0u);
    EXPECT_TRUE(equal(parse_formula(print_formula(f)), f));
  }
}

TEST(Acc, ScanExamples) {
  Evaluator ev(compile_acc(scan1(), kLinear), acc_slice());
  EXPECT_TRUE(eval_acc(ev, "10"));
  EXPECT_FALSE(eval_acc(ev, "00"));
}

TEST(Acc, OracleEquivalenceShortInputs) {
  for (auto& tm : corpus_machines()) {
    Evaluator ev(compile_acc(tm, kLinear), acc_slice());
    for (auto& x : all_inputs(4)) EXPECT_EQ(eval_acc(ev, x), accepts(tm, x, kLinear)) << tm.name << " " << x;
  }
}

TEST(Witness, SimulatorWitnessAccepted) {
  auto w = tableau_to_witness(run(scan1(), "1", 3, 3), scan1().state_bits());
  EXPECT_TRUE(check_witness(scan1(), kLinear, "1", w));
  EXPECT_FALSE(check_witness(scan1(), kLinear, "1", std::string(w.size(), '0')));
  EXPECT_THROW(check_witness(scan1(), kLinear, "1", w.substr(0, w.size() - 1)), LayoutError);
}

TEST(Witness, FinalStateEditRejected) {
  TM tm = scan1();
  auto w = tableau_to_witness(run(tm, "1", 3, 3), tm.state_bits());
  // the head sits on cell 0 in state 2 at row 3; turn it into state 1
  w[witness_position(3, 0, 1)] = '1';
  w[witness_position(3, 0, 2)] = '0';
  EXPECT_FALSE(check_witness(tm, kLinear, "1", w));
}

TEST(Witness, RejectingRunNotAWitness) {
  for (auto& tm : corpus_machines())
    for (auto& x : all_inputs(3)) {
      std::size_t P = kLinear(x.size());
      auto w = tableau_to_witness(run(tm, x, P, P), tm.state_bits());
      EXPECT_EQ(check_witness(tm, kLinear, x, w), accepts(tm, x, kLinear)) << tm.name << " " << x;
    }
}

TEST(Witness, SingleBitMutationsAtConstrainedPositions) {
  for (auto& tm : corpus_machines())
    for (auto& x : {std::string("1"), std::string("01"), std::string("0000"), std::string("101")}) {
      if (!accepts(tm, x, kLinear)) continue;
      std::size_t P = kLinear(x.size());
      auto w = tableau_to_witness(run(tm, x, P, P), tm.state_bits());
      for (auto pos : constrained_positions(tm, kLinear, x.size())) {
        auto m = w;
        m[pos] = m[pos] == '1' ? '0' : '1';
        EXPECT_FALSE(check_witness(tm, kLinear, x, m)) << tm.name << " " << x << " pos " << pos;
      }
    }
}

TEST(Reach, SimulatedPairsHold) {
  PolyBound p{{1, 1}};  // w + 1 steps
  auto f = compile_reach(scan1(), p);
  EXPECT_EQ(classify(f), (QuantClass{QuantClass::SigmaB, 1}));
  Evaluator ev(f, acc_slice());
  TM tm = scan1();
  unsigned sb = tm.state_bits();
  for (auto& x : all_inputs(3)) {
    if (x.empty()) continue;
    std::size_t w = x.size();
    auto r = run(tm, x, p(w), w);
    auto Y = config_to_string(r.rows[0], sb), Yp = config_to_string(r.rows.back(), sb);
    EXPECT_TRUE(ev(Assignment{}.str("Y", Y).str("Yp", Yp))) << x;
    for (std::size_t pos = 0; pos < Yp.size(); ++pos) {
      auto bad = Yp;
      bad[pos] = bad[pos] == '1' ? '0' : '1';
      EXPECT_FALSE(ev(Assignment{}.str("Y", Y).str("Yp", bad))) << x << " " << pos;
    }
  }
}

TEST(Reach, StayMachineFixedPoint) {
  TM stay = parse_tm("states 2\n1 0 -> 1 0 0\n1 1 -> 1 1 0\n2 0 -> 2 0 0\n2 1 -> 2 1 0\n");
  PolyBound p{{0, 1}};
  Evaluator ev(compile_reach(stay, p), acc_slice());
  auto Y = config_to_string(initial_configuration("101", 3), stay.state_bits());
  EXPECT_TRUE(ev(Assignment{}.str("Y", Y).str("Yp", Y)));
}

TEST(Reach, Composes) {
  PolyBound p{{1}};  // one step
  TM tm = parity();
  unsigned sb = tm.state_bits();
  Evaluator ev(compile_reach(tm, p), acc_slice());
  for (auto& x : all_inputs(3)) {
    if (x.empty()) continue;
    auto r = run(tm, x, 2, x.size());
    auto a = config_to_string(r.rows[0], sb), b = config_to_string(r.rows[1], sb), c = config_to_string(r.rows[2], sb);
    ASSERT_TRUE(ev(Assignment{}.str("Y", a).str("Yp", b)));
    ASSERT_TRUE(ev(Assignment{}.str("Y", b).str("Yp", c)));
    EXPECT_EQ(step(tm, step(tm, config_from_string(a, sb))), config_from_string(c, sb));
  }
}
