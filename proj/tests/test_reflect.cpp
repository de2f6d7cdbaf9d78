#include <gtest/gtest.h>

#include <random>

#include "forge/errors.hpp"
#include "forge/eval.hpp"
#include "forge/reflect.hpp"

using namespace forge;

namespace {

std::vector<SweepItem> corpus() { return load_proof_corpus(std::string(FORGE_DATA_DIR) + "/proofs"); }

const char* kExcludedMiddle =
    "0: (seq ((pv p 0)) ((pv p 0))) axiom []\n"
    "1: (seq () ((pv p 0) (pnot (pv p 0)))) not-right [0]\n"
    "2: (seq () ((por (pv p 0) (pnot (pv p 0))) (pnot (pv p 0)))) or-right [1]\n"
    "3: (seq () ((por (pv p 0) (pnot (pv p 0))))) or-right [2]\n";

std::string flip(std::string s, std::size_t i) {
  s[i] = s[i] == '1' ? '0' : '1';
  return s;
}

std::string bits_of(std::uint64_t v, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i)
    if ((v >> i) & 1) s[i] = '1';
  return s;
}

struct Formulas {
  CompactLayout L;
  Evaluator fla, prf, sat;
  Formulas(const CompactLayout& l, CheckerVariant v = CheckerVariant::Honest)
      : L(l),
        fla(fla_formula(l), reflection_slice(l)),
        prf(prf_formula(l, v), reflection_slice(l)),
        sat(sat_formula(l), reflection_slice(l)) {}
  bool f(const std::string& X) { return fla(Assignment{}.str("X", X)); }
  bool p(const std::string& P, const std::string& X) { return prf(Assignment{}.str("P", P).str("X", X)); }
  bool s(const std::string& Z, const std::string& X) { return sat(Assignment{}.str("Z", Z).str("X", X)); }
};

}  // namespace

TEST(Reflect, PolyBound) {
  auto t = PolyBound::parse("4,2");
  EXPECT_EQ(t(4), 12u);
  EXPECT_EQ(t(0), 4u);
  EXPECT_EQ(PolyBound::parse("0,0,1")(5), 25u);
  EXPECT_EQ(t.str(), "4,2");
  EXPECT_THROW(PolyBound::parse("1,,2"), Error);
  EXPECT_THROW(PolyBound::parse("x"), Error);
}

TEST(Reflect, LayoutValues) {
  auto a = compact_layout(12, ProofSystem::frege());
  EXPECT_EQ(a.N, 1u);
  EXPECT_EQ(a.w, 1u);
  EXPECT_EQ(a.K, 4u);
  EXPECT_EQ(a.Lw, 8u);
  EXPECT_EQ(a.M, 1u);

  auto b = compact_layout(64, ProofSystem::frege());
  EXPECT_EQ(b.N, 4u);
  EXPECT_EQ(b.w, 2u);
  EXPECT_EQ(b.K, 6u);
  EXPECT_EQ(b.wl, 2u);
  EXPECT_EQ(b.Lw, 16u);
  EXPECT_EQ(b.M, 4u);

  auto c = compact_layout(400, ProofSystem::frege());
  EXPECT_EQ(c.N, 11u);
  EXPECT_EQ(c.M, 11u);

  auto d = compact_layout(3, ProofSystem::frege());
  EXPECT_EQ(d.N, 0u);
  EXPECT_FALSE(compact_fla(d, "000"));
}

TEST(Reflect, EncodeExcludedMiddle) {
  auto L = compact_layout(64, ProofSystem::frege());
  Proof pi = parse_proof(kExcludedMiddle);
  auto inst = compact_encode(L, pi, parse_prop("(por (pv p 0) (pnot (pv p 0)))"));
  ASSERT_TRUE(inst);
  // p = leaf var 0; not node 0; or of nodes 0 and 1
  EXPECT_EQ(inst->X, "001000" "100000" "110010");
  EXPECT_EQ(inst->P.size(), 4 * L.Lw);
  // line 1: not-right (code 8) from line 0, left {}, right {0, 1}
  EXPECT_EQ(inst->P.substr(L.Lw, L.Lw), std::string("0001") + "00" "00" "0000" "1100");
  EXPECT_TRUE(compact_fla(L, inst->X));
  EXPECT_TRUE(compact_prf(L, inst->P, inst->X));
  for (std::uint64_t z = 0; z < 2; ++z) EXPECT_TRUE(compact_sat(L, bits_of(z, 1), inst->X));

  Formulas F(L);
  EXPECT_TRUE(F.f(inst->X));
  EXPECT_TRUE(F.p(inst->P, inst->X));
  EXPECT_TRUE(F.s("0", inst->X));
  EXPECT_TRUE(F.s("1", inst->X));

  // does not fit at the smallest size
  EXPECT_FALSE(compact_encode(compact_layout(12, ProofSystem::frege()), pi, parse_prop("(por (pv p 0) (pnot (pv p 0)))")));
}

// the table checker and the sequent checker agree on the corpus and on every
// encodable single-line mutation
TEST(Reflect, DirectCheckerMatchesSequentChecker) {
  auto L = compact_layout(400, ProofSystem::frege());
  std::size_t encoded = 0, compared = 0;
  for (const auto& item : corpus()) {
    auto inst = compact_encode(L, item.proof, item.target);
    if (!inst) continue;
    ++encoded;
    EXPECT_TRUE(compact_fla(L, inst->X)) << item.name;
    EXPECT_TRUE(compact_prf(L, inst->P, inst->X)) << item.name;
    for (std::size_t i = 0; i < item.proof.lines.size(); ++i)
      for (int r = 0; r < 9; ++r) {
        Proof m = item.proof;
        m.lines[i].tag = {static_cast<Rule>(r), 0};
        auto mi = compact_encode(L, m, item.target);
        if (!mi) continue;
        ++compared;
        EXPECT_EQ(compact_prf(L, mi->P, mi->X), check_frege(m, item.target)) << item.name << " line " << i;
      }
  }
  EXPECT_EQ(encoded, 10u);
  EXPECT_GT(compared, 50u);
}

TEST(Reflect, DepthLabels) {
  for (unsigned d = 0; d <= 4; ++d) {
    auto L = compact_layout(600, ProofSystem::depth_frege(d));
    for (const auto& item : corpus()) {
      auto inst = compact_encode(L, item.proof, item.target);
      ASSERT_TRUE(inst) << item.name;
      EXPECT_EQ(compact_prf(L, inst->P, inst->X), check_depth_frege(item.proof, item.target, d))
          << item.name << " d=" << d;
    }
  }
}

TEST(Reflect, FlaFormulaMatchesDirect) {
  auto L = compact_layout(12, ProofSystem::frege());
  Formulas F(L);
  for (std::size_t len = 0; len <= 12; ++len)
    for (std::uint64_t v = 0; v < (1ull << len); ++v) {
      auto X = bits_of(v, len);
      ASSERT_EQ(F.f(X), compact_fla(L, X)) << X;
    }
  auto L2 = compact_layout(64, ProofSystem::frege());
  Formulas F2(L2);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 3000; ++k) {
    auto X = bits_of(rng(), L2.K * (1 + rng() % L2.N));
    ASSERT_EQ(F2.f(X), compact_fla(L2, X)) << X;
  }
}

TEST(Reflect, SatFormulaMatchesDirect) {
  auto L = compact_layout(64, ProofSystem::frege());
  Formulas F(L);
  std::mt19937_64 rng(11);
  int tables = 0;
  while (tables < 300) {
    auto X = bits_of(rng(), L.K * (1 + rng() % L.N));
    if (!compact_fla(L, X)) continue;
    ++tables;
    for (std::uint64_t z = 0; z < 16; ++z) {
      auto Z = bits_of(z, 4);
      ASSERT_EQ(F.s(Z, X), compact_sat(L, Z, X)) << X << " " << Z;
    }
  }
}

// Prf as a formula against the direct checker: encoded corpus proofs and all
// their single-bit corruptions
TEST(Reflect, PrfFormulaMatchesDirect) {
  for (bool bounded : {false, true}) {
    auto sys = bounded ? ProofSystem::depth_frege(2) : ProofSystem::frege();
    auto L = compact_layout(bounded ? 120 : 100, sys);
    Formulas F(L);
    int encoded = 0;
    for (const auto& item : corpus()) {
      auto inst = compact_encode(L, item.proof, item.target);
      if (!inst) continue;
      ++encoded;
      ASSERT_EQ(F.p(inst->P, inst->X), compact_prf(L, inst->P, inst->X)) << item.name;
      for (std::size_t i = 0; i < inst->P.size(); ++i)
        ASSERT_EQ(F.p(flip(inst->P, i), inst->X), compact_prf(L, flip(inst->P, i), inst->X)) << item.name << " P bit " << i;
      for (std::size_t i = 0; i < inst->X.size(); ++i)
        ASSERT_EQ(F.p(inst->P, flip(inst->X, i)), compact_prf(L, inst->P, flip(inst->X, i))) << item.name << " X bit " << i;
    }
    EXPECT_GE(encoded, 2) << "bounded=" << bounded;
  }
}

TEST(Reflect, BrokenCheckerAcceptsNonTautology) {
  auto L = compact_layout(12, ProofSystem::frege());
  std::string X = "0010";    // leaf, variable 0
  std::string P = "0000" "00" "0" "1";  // axiom, --> node 0
  EXPECT_TRUE(compact_fla(L, X));
  EXPECT_FALSE(compact_prf(L, P, X));
  EXPECT_TRUE(compact_prf(L, P, X, CheckerVariant::BrokenAxiom));
  EXPECT_FALSE(compact_sat(L, "0", X));
  // --> 1 is an honest axiom
  EXPECT_TRUE(compact_prf(L, P, "0001"));
}

TEST(Reflect, InstanceShape) {
  auto phi = reflection_instance(ProofSystem::frege(), PolyBound::parse("4,2"), 4);
  EXPECT_EQ(to_string(classify(phi)), "PiB(1)");
  EXPECT_TRUE(free_vars(phi).empty());
  EXPECT_EQ(to_string(classify(fla_formula(compact_layout(12, ProofSystem::frege())))), "SigmaB(0)");
  EXPECT_EQ(to_string(classify(prf_formula(compact_layout(64, ProofSystem::depth_frege(2))))), "SigmaB(0)");
  EXPECT_EQ(to_string(classify(sat_matrix(compact_layout(64, ProofSystem::frege())))), "SigmaB(0)");
}

TEST(Reflect, GarbageFormulaIsVacuous) {
  auto L = compact_layout(12, ProofSystem::frege());
  Formulas F(L);
  auto matrix = imp(land(fla_formula(L), prf_formula(L)), sat_formula(L));
  for (const char* X : {"1", "111", "1111", "01110"}) {
    EXPECT_FALSE(F.f(X));
    EXPECT_TRUE(eval(matrix, reflection_slice(L), Assignment{}.str("X", X).str("P", "00000001").str("Z", "")));
  }
}

TEST(Reflect, SweepAtTwelve) {
  auto t = PolyBound::parse("0,1");
  auto L = compact_layout(12, ProofSystem::frege());
  auto direct = reflection_sweep_direct(L);
  EXPECT_TRUE(direct.holds);
  EXPECT_GE(direct.accepted_pairs, 1u);
  auto broken = reflection_sweep_direct(L, CheckerVariant::BrokenAxiom);
  EXPECT_FALSE(broken.holds);

  EXPECT_TRUE(eval(reflection_instance(ProofSystem::frege(), t, 12), reflection_slice(L), {}));
  EXPECT_FALSE(eval(reflection_instance(ProofSystem::frege(), t, 12, CheckerVariant::BrokenAxiom), reflection_slice(L), {}));
}
