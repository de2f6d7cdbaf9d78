#include <gtest/gtest.h>

#include <random>

#include "forge/formula.hpp"
#include "forge/parser.hpp"

using namespace forge;

TEST(Parse, Atoms) {
  auto f = parse_formula("(leq 0 1)");
  EXPECT_TRUE(equal(f, leq(zero(), one())));
  auto g = parse_formula("(alN z (len X) (or (in z X) (not (in z X))))");
  EXPECT_TRUE(equal(g, alN("z", len("X"), lor(in(var("z"), "X"), lnot(in(var("z"), "X"))))));
}

TEST(Parse, SyntaxErrorCarriesPosition) {
  try {
    parse_formula("(exN x");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 1);
    EXPECT_GE(e.col, 1);
  }
  try {
    parse_formula("; comment\n  (leq 0 1))");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 2);
  }
}

TEST(Parse, SortErrors) {
  EXPECT_THROW(parse_formula("(in 0 x)"), SortError);
  EXPECT_THROW(parse_formula("(leq X 0)"), SortError);
  EXPECT_THROW(parse_formula("(exN X 3 (leq 0 0))"), SortError);
  EXPECT_THROW(parse_formula("(exS x 3 (leq 0 0))"), SortError);
  EXPECT_THROW(parse_formula("(leq (len y) 0)"), SortError);
}

TEST(Parse, DuplicateBindingOnPath) {
  EXPECT_THROW(parse_formula("(exN x 3 (alN x 2 (leq x x)))"), DuplicateBindingError);
}

TEST(Parse, SiblingBindersRenamed) {
  auto f = parse_formula("(and (exN x 1 (leq x 1)) (exN x 2 (leq x 0)))");
  ASSERT_EQ(f->kind, FKind::And);
  EXPECT_EQ(f->f->x, "x");
  EXPECT_NE(f->g->x, "x");
  EXPECT_EQ(f->g->f->s->name, f->g->x);
}

TEST(Parse, CommentsAndBigNumerals) {
  auto f = parse_formula("; header\n(leq 123456789012345678901234567890 (pair x 1)) ; tail");
  EXPECT_EQ(f->s->value, Nat("123456789012345678901234567890"));
  EXPECT_EQ(f->t->kind, TermKind::Pair);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(parse_formula("(alN z (len X) (or (in z X) (not (in z X))))")), (QuantClass{QuantClass::SigmaB, 0}));
  EXPECT_EQ(classify(parse_formula("(exS W 5 (in 0 W))")), (QuantClass{QuantClass::SigmaB, 1}));
  EXPECT_EQ(classify(parse_formula("(leq 0 1)")), (QuantClass{QuantClass::SigmaB, 0}));
  EXPECT_EQ(classify(parse_formula("(alS W 5 (in 0 W))")), (QuantClass{QuantClass::PiB, 1}));
  EXPECT_EQ(classify(parse_formula("(exS W 5 (alS V 5 (in 0 W)))")), (QuantClass{QuantClass::SigmaB, 2}));
  EXPECT_EQ(classify(parse_formula("(not (exS W 5 (in 0 W)))")), (QuantClass{QuantClass::PiB, 1}));
  EXPECT_EQ(classify(parse_formula("(imp (exS W 5 (in 0 W)) (leq 0 1))")), (QuantClass{QuantClass::PiB, 1}));
  // number quantifiers do not count
  EXPECT_EQ(classify(parse_formula("(exN x 3 (exS W x (alN y 2 (in y W))))")), (QuantClass{QuantClass::SigmaB, 1}));
}

TEST(Depth, Examples) {
  EXPECT_EQ(depth(parse_formula("(leq 0 1)")), 0u);
  EXPECT_EQ(depth(parse_formula("(and (or (leq 0 1) (leq 1 0)) (leq 0 0))")), 2u);
  EXPECT_EQ(depth(parse_formula("(and (and (leq 0 1) (leq 1 0)) (leq 0 0))")), 1u);
  EXPECT_EQ(depth(parse_formula("(not (not (leq 0 1)))")), 1u);
  EXPECT_EQ(depth(parse_formula("(alN x 2 (alN y 2 (or (leq x y) (leq y x))))")), 2u);
}

TEST(Substitute, Examples) {
  auto s1 = substitute(parse_formula("(leq x 1)"), "x", zero());
  EXPECT_TRUE(equal(s1, parse_formula("(leq 0 1)")));
  auto f2 = parse_formula("(exN x 1 (leq x 1))");
  EXPECT_TRUE(equal(substitute(f2, "x", zero()), f2));
  auto s3 = substitute(parse_formula("(leq x y)"), "x", plus(var("y"), one()));
  EXPECT_TRUE(equal(s3, parse_formula("(leq (+ y 1) y)")));
  EXPECT_THROW(substitute(parse_formula("(exN y 3 (leq x y))"), "x", var("y")), CaptureError);
  // the bound term lies outside the binder
  auto s4 = substitute(parse_formula("(exN x x (leq x 1))"), "x", one());
  EXPECT_TRUE(equal(s4, parse_formula("(exN x 1 (leq x 1))")));
}

TEST(Size, NodeCount) {
  EXPECT_EQ(formula_size(parse_formula("(leq 0 1)")), 3u);
  EXPECT_EQ(formula_size(parse_formula("(not (leq (+ x 1) 0))")), 6u);
}

// random generator used for the roundtrip and monotonicity properties
namespace {
struct Gen {
  std::mt19937_64 rng;
  int counter = 0;
  TermP term(int d) {
    int c = d <= 0 ? rng() % 3 : rng() % 6;
    switch (c) {
      case 0: return num(rng() % 3);
      case 1: return var("n" + std::to_string(rng() % 3));
      case 2: return len("S" + std::to_string(rng() % 2));
      case 3: return plus(term(d - 1), term(d - 1));
      case 4: return times(term(d - 1), term(d - 1));
      default: return tpair(term(d - 1), term(d - 1));
    }
  }
  FormulaP form(int d) {
    int c = d <= 0 ? rng() % 4 : rng() % 12;
    std::string fresh = std::to_string(counter++);
    switch (c) {
      case 0: return eq(term(1), term(1));
      case 1: return leq(term(1), term(1));
      case 2: return in(term(1), "S" + std::to_string(rng() % 2));
      case 3: return seteq("S0", "S1");
      case 4: return land(form(d - 1), form(d - 1));
      case 5: return lor(form(d - 1), form(d - 1));
      case 6: return lnot(form(d - 1));
      case 7: return imp(form(d - 1), form(d - 1));
      case 8: return exN("q" + fresh, term(1), form(d - 1));
      case 9: return alN("q" + fresh, term(1), form(d - 1));
      case 10: return exS("Q" + fresh, term(1), form(d - 1));
      default: return alS("Q" + fresh, term(1), form(d - 1));
    }
  }
};
}  // namespace

TEST(Property, PrintParseRoundtrip) {
  Gen g{std::mt19937_64(7)};
  for (int i = 0; i < 500; ++i) {
    auto f = g.form(4);
    auto back = parse_formula(print_formula(f));
    ASSERT_TRUE(equal(f, back)) << print_formula(f);
    auto pretty = parse_formula(print_formula(f, true));
    ASSERT_TRUE(equal(f, pretty));
  }
}

TEST(Property, ClassifyMonotoneUnderConjunction) {
  Gen g{std::mt19937_64(11)};
  for (int i = 0; i < 500; ++i) {
    auto a = g.form(3), b = g.form(3);
    unsigned c = classify(land(a, b)).i;
    EXPECT_GE(c, classify(a).i);
    EXPECT_GE(c, classify(b).i);
  }
}

TEST(Property, ClassZeroIffNoStringQuantifier) {
  Gen g{std::mt19937_64(13)};
  for (int i = 0; i < 500; ++i) {
    auto f = g.form(4);
    std::string s = print_formula(f);
    bool has = s.find("exS") != std::string::npos || s.find("alS") != std::string::npos;
    EXPECT_EQ(classify(f).i == 0, !has) << s;
  }
}

TEST(Property, DepthUnderConnectives) {
  Gen g{std::mt19937_64(17)};
  for (int i = 0; i < 500; ++i) {
    auto a = g.form(3), b = g.form(3);
    EXPECT_LE(depth(lnot(a)), depth(a) + 1);
    EXPECT_GE(depth(land(a, b)), std::max(depth(a), depth(b)));
    EXPECT_GE(depth(lor(a, b)), std::max(depth(a), depth(b)));
    EXPECT_GE(depth(lnot(a)), depth(a));
  }
}
