#include <gtest/gtest.h>

#include <random>

#include "forge/eval.hpp"
#include "forge/parser.hpp"

using namespace forge;

namespace {
FiniteSlice slice(unsigned n = 16, std::size_t w = 16) { return FiniteSlice{n, w}; }
bool ev(const std::string& f, const Assignment& a = {}) { return eval(parse_formula(f), slice(), a); }
}  // namespace

TEST(Eval, Examples) {
  EXPECT_TRUE(ev("(leq 1 (+ 1 1))"));
  EXPECT_TRUE(ev("(exN x 2 (= (+ x x) (* 2 1)))"));
  EXPECT_TRUE(ev("(alS X 2 (leq (len X) 2))"));
  EXPECT_FALSE(ev("(exS X 2 (leq 3 (len X)))"));
}

TEST(Eval, Errors) {
  EXPECT_THROW(ev("(leq x 1)"), UnboundVariable);
  EXPECT_THROW(eval(parse_formula("(exN x 100 (leq x x))"), slice(16), {}), SliceExceeded);
  EXPECT_THROW(eval(parse_formula("(exS X 100 (in 0 X))"), slice(200, 16), {}), SliceExceeded);
  EXPECT_THROW(ev("(in 0 X)", Assignment{}.num("X", 1)), SortError);
  EXPECT_THROW(ev("(leq x 0)", Assignment{}.str("x", "1")), SortError);
}

TEST(Eval, StringsAndBits) {
  Assignment a;
  a.str("X", "0101").num("x", 6);
  EXPECT_TRUE(ev("(in 1 X)", a));
  EXPECT_FALSE(ev("(in 2 X)", a));
  EXPECT_FALSE(ev("(in 9 X)", a));
  EXPECT_TRUE(ev("(= (len X) 4)", a));
  EXPECT_TRUE(ev("(bit x 1)", a));
  EXPECT_FALSE(ev("(bit x 0)", a));
  EXPECT_TRUE(ev("(exS Y 4 (seteq X Y))", a));
  EXPECT_FALSE(ev("(exS Y 3 (seteq X Y))", a));
}

TEST(Eval, BigNumbersSearchedBitwise) {
  // a 100-bit number whose bits are pinned by a string
  std::string bits(100, '0');
  for (int i = 0; i < 100; i += 3) bits[i] = '1';
  auto f = parse_formula(
      "(exN c 1267650600228229401496703205375 (alN i 99 (and (imp (in i X) (bit c i)) (imp (bit c i) (in i X)))))");
  FiniteSlice s{Nat("1267650600228229401496703205375"), 128};
  EXPECT_TRUE(eval(f, s, Assignment{}.str("X", bits)));
  auto g = parse_formula(
      "(exN c 1000 (and (alN i 9 (and (imp (in i X) (bit c i)) (imp (bit c i) (in i X)))) (leq 1000 c)))");
  EXPECT_FALSE(eval(g, FiniteSlice{1000, 16}, Assignment{}.str("X", "0000000000")));
}

TEST(Comprehension, Examples) {
  EXPECT_EQ(comprehension_witness(parse_formula("(leq z 1)"), 3, slice(), {}), "110");
  EXPECT_EQ(comprehension_witness(parse_formula("(= 0 1)"), 3, slice(), {}, "z"), "000");
  EXPECT_EQ(comprehension_witness(parse_formula("(= 0 0)"), 2, slice(), {}, "z"), "11");
  EXPECT_THROW(comprehension_witness(parse_formula("(exS Y 2 (in z Y))"), 3, slice(), {}), ClassError);
}

TEST(Comprehension, SatisfiesInstance) {
  // X(z) <-> phi(z) for every z < y, checked by evaluating the comprehension instance
  for (auto src : {"(leq z 2)", "(in (+ z 1) A)", "(exN u z (and (= (* u 2) z) (in u A)))", "(not (in z A))"}) {
    auto phi = parse_formula(src);
    Assignment env;
    env.str("A", "011010");
    std::string X = comprehension_witness(phi, 6, slice(), env, "z");
    auto inst = alN("z", num(5), iff(in(var("z"), "X"), phi));
    env.str("X", X);
    EXPECT_TRUE(eval(inst, slice(), env)) << src << " " << X;
  }
}

namespace {
struct Gen {
  std::mt19937_64 rng;
  int counter = 0;
  std::vector<std::string> nvars{"a"}, svars{"S"};
  TermP term(int d) {
    int c = d <= 0 ? rng() % 3 : rng() % 5;
    switch (c) {
      case 0: return num(rng() % 3);
      case 1: return var(nvars[rng() % nvars.size()]);
      case 2: return len(svars[rng() % svars.size()]);
      case 3: return plus(term(d - 1), term(d - 1));
      default: return times(term(d - 1), term(d - 1));
    }
  }
  TermP small_bound() { return rng() % 2 ? num(rng() % 3) : len(svars[rng() % svars.size()]); }
  FormulaP form(int d) {
    int c = d <= 0 ? rng() % 5 : rng() % 13;
    switch (c) {
      case 0: return eq(term(1), term(1));
      case 1: return leq(term(1), term(1));
      case 2: case 3: return in(term(1), svars[rng() % svars.size()]);
      case 4: return bit(term(1), term(0));
      case 5: return land(form(d - 1), form(d - 1));
      case 6: return lor(form(d - 1), form(d - 1));
      case 7: return lnot(form(d - 1));
      case 8: return imp(form(d - 1), form(d - 1));
      case 9: case 10: {
        std::string x = "q" + std::to_string(counter++);
        auto b = small_bound();
        nvars.push_back(x);
        auto body = form(d - 1);
        nvars.pop_back();
        return c == 9 ? exN(x, b, body) : alN(x, b, body);
      }
      default: {
        std::string X = "Q" + std::to_string(counter++);
        auto b = num(rng() % 3);
        svars.push_back(X);
        auto body = form(d - 1);
        svars.pop_back();
        return c == 11 ? exS(X, b, body) : alS(X, b, body);
      }
    }
  }
};
}  // namespace

TEST(Property, SearchAgreesWithNaiveExpansion) {
  Gen g{std::mt19937_64(2024)};
  FiniteSlice s{64, 8};
  EvalOptions search_all;
  search_all.enumerate_below = 0;
  EvalOptions no_cache;
  no_cache.witness_cache = false;
  int trues = 0;
  for (int i = 0; i < 1500; ++i) {
    auto f = g.form(4);
    for (int a = 0; a < 3; ++a)
      for (auto S : {"", "1", "01", "110"}) {
        Assignment env;
        env.num("a", a).str("S", S);
        bool expect = eval_naive(f, s, env);
        trues += expect;
        ASSERT_EQ(Evaluator(f, s)(env), expect) << print_formula(f) << " a=" << a << " S=" << S;
        ASSERT_EQ(Evaluator(f, s, search_all)(env), expect) << print_formula(f) << " a=" << a << " S=" << S;
        ASSERT_EQ(Evaluator(f, s, no_cache)(env), expect) << print_formula(f);
      }
  }
  EXPECT_GT(trues, 1000);
}

TEST(Property, InvariantUnderRenamingAndLargerSlice) {
  Gen g{std::mt19937_64(99)};
  for (int i = 0; i < 300; ++i) {
    auto f = g.form(4);
    std::string text = print_formula(f);
    // rename every binder by a textual suffix
    std::string renamed;
    for (std::size_t j = 0; j < text.size(); ++j) {
      renamed += text[j];
      if ((text[j] == 'q' || text[j] == 'Q') && (j == 0 || !std::isalnum(static_cast<unsigned char>(text[j - 1]))))
        renamed += "z";
    }
    auto h = parse_formula(renamed);
    Assignment env;
    env.num("a", 1).str("S", "101");
    bool v = eval(f, FiniteSlice{64, 8}, env);
    EXPECT_EQ(eval(h, FiniteSlice{64, 8}, env), v) << text;
    EXPECT_EQ(eval(f, FiniteSlice{100000, 40}, env), v);
  }
}
