#include "rulerunner/corpus.hpp"
#include "rulerunner/formula.hpp"
#include "rulerunner/oracle.hpp"
#include "rulerunner/parse.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rulerunner;

namespace {

Formula a() { return Formula::atom("a"); }
Formula b() { return Formula::atom("b"); }
Formula c() { return Formula::atom("c"); }

} // namespace

TEST(Parse, Examples) {
  EXPECT_EQ(parse_formula("a | F b"), Formula::disjunction(a(), Formula::eventually(b())));
  EXPECT_EQ(parse_formula("true"), Formula::truth());
  EXPECT_EQ(parse_formula("a U (b & X c)"), Formula::until(a(), Formula::conjunction(b(), Formula::next(c()))));
}

TEST(Parse, Precedence) {
  // unary > U > & > |
  EXPECT_EQ(parse_formula("a | b & c"), Formula::disjunction(a(), Formula::conjunction(b(), c())));
  EXPECT_EQ(parse_formula("a & b U c"), Formula::conjunction(a(), Formula::until(b(), c())));
  EXPECT_EQ(parse_formula("X a U b"), Formula::until(Formula::next(a()), b()));
  EXPECT_EQ(parse_formula("a U b U c"), Formula::until(a(), Formula::until(b(), c())));
  EXPECT_EQ(parse_formula("a & b & c"), Formula::conjunction(Formula::conjunction(a(), b()), c()));
  EXPECT_EQ(parse_formula("a | b | c"), Formula::disjunction(Formula::disjunction(a(), b()), c()));
}

TEST(Parse, AliasesAndNegation) {
  EXPECT_EQ(parse_formula("<> a"), Formula::eventually(a()));
  EXPECT_EQ(parse_formula("[] a"), Formula::always(a()));
  EXPECT_EQ(parse_formula("!a"), Formula::neg_atom("a"));
  EXPECT_EQ(parse_formula("W!a"), Formula::weak_next(Formula::neg_atom("a")));
  EXPECT_EQ(parse_formula("!(a | b)").op(), Op::Not);
  EXPECT_EQ(parse_formula("  G (a & F b) "), Formula::always(Formula::conjunction(a(), Formula::eventually(b()))));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_formula(""), parse_error);
  EXPECT_THROW(parse_formula("   "), parse_error);
  EXPECT_THROW(parse_formula("a U"), parse_error);
  EXPECT_THROW(parse_formula("(a"), parse_error);
  EXPECT_THROW(parse_formula("a b"), parse_error);
  EXPECT_THROW(parse_formula("a & & b"), parse_error);
  EXPECT_THROW(parse_formula("A"), parse_error);
  try {
    parse_formula("a U");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.position(), 3u);
    EXPECT_NE(std::string(e.what()).find("position 3"), std::string::npos);
  }
}

TEST(Nnf, Rewrites) {
  EXPECT_EQ(parse_nnf("!(a | b)"), Formula::conjunction(Formula::neg_atom("a"), Formula::neg_atom("b")));
  EXPECT_EQ(parse_nnf("!(a & b)"), Formula::disjunction(Formula::neg_atom("a"), Formula::neg_atom("b")));
  EXPECT_EQ(parse_nnf("!(X a)"), Formula::weak_next(Formula::neg_atom("a")));
  EXPECT_EQ(parse_nnf("!(W a)"), Formula::next(Formula::neg_atom("a")));
  EXPECT_EQ(parse_nnf("!F a"), Formula::always(Formula::neg_atom("a")));
  EXPECT_EQ(parse_nnf("!G a"), Formula::eventually(Formula::neg_atom("a")));
  EXPECT_EQ(parse_nnf("!!a"), a());
  EXPECT_EQ(parse_nnf("!!!a"), Formula::neg_atom("a"));
  EXPECT_TRUE(parse_nnf("!(a | X !b)").is_nnf());
}

TEST(Nnf, Rejections) {
  EXPECT_THROW(parse_nnf("!true"), formula_error);
  EXPECT_THROW(parse_nnf("!(a U b)"), formula_error);
  EXPECT_THROW(parse_nnf("a | !(G (a U b))"), formula_error);
  EXPECT_NO_THROW(parse_nnf("!!(a U b)"));
}

namespace {

Formula random_general(int depth, std::mt19937_64& rng) {
  static const std::vector<std::string> atoms{"a", "b"};
  if (depth == 0 || rng() % 4 == 0) {
    switch (rng() % 3) {
    case 0:
      return Formula::truth();
    case 1:
      return Formula::atom(atoms[rng() % 2]);
    default:
      return Formula::neg_atom(atoms[rng() % 2]);
    }
  }
  switch (rng() % 8) {
  case 0: {
    // the parser reads !a as a negated atom
    const Formula s = random_general(depth - 1, rng);
    return s.op() == Op::Atom ? Formula::neg_atom(s.name()) : Formula::negation(s);
  }
  case 1:
  case 2:
  case 3:
  case 4:
    return Formula::unary(unary_ops[rng() % 4], random_general(depth - 1, rng));
  default: {
    Formula l = random_general(depth - 1, rng);
    return Formula::binary(binary_ops[rng() % 3], l, random_general(depth - 1, rng));
  }
  }
}

} // namespace

TEST(Nnf, PreservesSemantics) {
  const auto traces = rrtest::all_traces({"a", "b"}, 4);
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    const Formula g = random_general(4, rng);
    Formula n;
    try {
      n = to_nnf(g);
    } catch (const formula_error&) {
      continue;
    }
    ASSERT_TRUE(n.is_nnf()) << format_formula(g);
    for (const Trace& u : traces)
      ASSERT_EQ(oracle_eval(n, u, 0), oracle_eval_with_negation(g, u, 0))
          << format_formula(g) << " on " << format_trace_inline(u);
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

TEST(Format, Examples) {
  EXPECT_EQ(format_formula(Formula::disjunction(a(), Formula::eventually(b()))), "a | F b");
  EXPECT_EQ(format_formula(Formula::truth()), "true");
  EXPECT_EQ(format_formula(Formula::until(a(), b())), "a U b");
  EXPECT_EQ(format_formula(parse_formula("(a U b) U c")), "(a U b) U c");
  EXPECT_EQ(format_formula(parse_formula("a U (b U c)")), "a U b U c");
  EXPECT_EQ(format_formula(parse_formula("a & (b | c)")), "a & (b | c)");
  EXPECT_EQ(format_formula(parse_formula("a | (b | c)")), "a | (b | c)");
  EXPECT_EQ(format_formula(parse_formula("X (a | b)")), "X(a | b)");
  EXPECT_EQ(format_formula(parse_formula("!(a | b)")), "!(a | b)");
}

TEST(Format, Symbolic) {
  EXPECT_EQ(format_symbolic(parse_formula("a | F b")), "a∨◇b");
  EXPECT_EQ(format_symbolic(parse_formula("a | X b")), "a∨Xb");
  EXPECT_EQ(format_symbolic(parse_formula("G (a & b)")), "□(a∧b)");
}

TEST(Format, RoundTrip) {
  for (const Formula& f : enumerate_formulas(2, {"a", "b"}))
    ASSERT_EQ(parse_formula(format_formula(f)), f) << format_formula(f);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const Formula f = random_general(6, rng);
    ASSERT_EQ(parse_formula(format_formula(f)), f) << format_formula(f);
  }
}

TEST(Subformulas, PostOrder) {
  const auto idx = subformulas(parse_formula("a | F b"));
  ASSERT_EQ(idx.size(), 4u);
  EXPECT_EQ(format_formula(idx.at(FormulaId{0})), "a");
  EXPECT_EQ(format_formula(idx.at(FormulaId{1})), "b");
  EXPECT_EQ(format_formula(idx.at(FormulaId{2})), "F b");
  EXPECT_EQ(format_formula(idx.at(FormulaId{3})), "a | F b");
  EXPECT_EQ(idx.root(), FormulaId{3});

  EXPECT_EQ(subformulas(a()).size(), 1u);

  const auto dup = subformulas(parse_formula("a & a"));
  ASSERT_EQ(dup.size(), 2u);
  EXPECT_EQ(dup.at(FormulaId{0}), a());
}

TEST(Subformulas, ChildrenBeforeParents) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const Formula f = random_formula(5, {"a", "b"}, rng);
    const auto idx = subformulas(f);
    EXPECT_EQ(idx.at(idx.root()), f);
    for (const Formula& g : idx) {
      const auto id = index(idx.id_of(g));
      if (is_binary(g.op())) {
        EXPECT_LT(index(idx.id_of(g.left())), id);
        EXPECT_LT(index(idx.id_of(g.right())), id);
      } else if (is_unary(g.op())) {
        EXPECT_LT(index(idx.id_of(g.sub())), id);
      }
    }
  }
}

TEST(Formula, Accessors) {
  const Formula f = parse_formula("G (a & F !b)");
  EXPECT_EQ(f.depth(), 3u);
  EXPECT_EQ(f.size(), 5u);
  EXPECT_EQ(f.atoms(), (std::set<std::string>{"a", "b"}));
  EXPECT_TRUE(f.is_nnf());
  EXPECT_FALSE(parse_formula("!(a | b)").is_nnf());
  EXPECT_THROW(Formula::atom("Bad"), formula_error);
  EXPECT_THROW(Formula::atom("true"), formula_error);
}
