#include "rulerunner/corpus.hpp"
#include "rulerunner/oracle.hpp"
#include "rulerunner/parse.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rulerunner;

namespace {
bool holds(const char* f, const char* u, std::size_t i = 0) {
  return oracle_eval(parse_nnf(f), parse_trace_inline(u), i);
}
} // namespace

TEST(Oracle, Examples) {
  EXPECT_TRUE(holds("a | F b", "[c - a - b,d - b]"));
  EXPECT_FALSE(holds("X a", "[a]"));
  EXPECT_TRUE(holds("W a", "[b]"));
  EXPECT_TRUE(holds("a U b", "[a - a - b]"));
}

TEST(Oracle, Basics) {
  EXPECT_TRUE(holds("true", "[.]"));
  EXPECT_TRUE(holds("!a", "[b]"));
  EXPECT_FALSE(holds("a U b", "[a - a - a]"));
  EXPECT_TRUE(holds("G a", "[a - a]"));
  EXPECT_FALSE(holds("F a", "[. - .]"));
  EXPECT_TRUE(holds("X a", "[. - a]"));
  EXPECT_FALSE(holds("W a", "[. - .]"));
  EXPECT_TRUE(holds("a", "[. - a]", 1));
}

TEST(Oracle, Errors) {
  EXPECT_THROW(holds("a", "[a]", 1), usage_error);
  EXPECT_THROW(oracle_eval(parse_formula("!(a | b)"), parse_trace_inline("[a]"), 0), formula_error);
  EXPECT_FALSE(oracle_eval_with_negation(parse_formula("!(a | b)"), parse_trace_inline("[a]"), 0));
}

TEST(Oracle, UntilUnfolding) {
  const auto traces = rrtest::all_traces({"a", "b"}, 4);
  for (const Formula& phi : enumerate_formulas(1, {"a", "b"})) {
    for (const Formula& psi : {parse_nnf("b"), parse_nnf("X a"), parse_nnf("F b")}) {
      const Formula u = Formula::until(phi, psi);
      for (const Trace& t : traces)
        for (std::size_t i = 0; i < t.size(); ++i) {
          const bool rhs = oracle_eval(psi, t, i) ||
                           (oracle_eval(phi, t, i) && i + 1 < t.size() && oracle_eval(u, t, i + 1));
          ASSERT_EQ(oracle_eval(u, t, i), rhs);
        }
    }
  }
}

TEST(Oracle, DerivedOperators) {
  const auto traces = rrtest::all_traces({"a", "b"}, 4);
  for (const Formula& phi : enumerate_formulas(1, {"a", "b"})) {
    const Formula ev = Formula::eventually(phi);
    const Formula via_until = Formula::until(Formula::truth(), phi);
    const Formula al = Formula::always(phi);
    const Formula dual = Formula::negation(Formula::eventually(Formula::negation(phi)));
    for (const Trace& t : traces)
      for (std::size_t i = 0; i < t.size(); ++i) {
        ASSERT_EQ(oracle_eval(ev, t, i), oracle_eval(via_until, t, i));
        ASSERT_EQ(oracle_eval(al, t, i), oracle_eval_with_negation(dual, t, i));
      }
  }
}

TEST(Judgement, Evaluation) {
  const Trace u = parse_trace_inline("[b - b]");
  const Judgement row1 = Judgement::join(Judgement::leaf(parse_nnf("a"), 0), Judgement::leaf(parse_nnf("X b"), 0));
  EXPECT_TRUE(eval_judgement(row1, u));
  EXPECT_TRUE(eval_judgement(Judgement::join(Judgement::bottom(), Judgement::top()), u));
  EXPECT_FALSE(eval_judgement(Judgement::meet(Judgement::bottom(), Judgement::top()), u));
  EXPECT_TRUE(eval_judgement(Judgement::leaf(parse_nnf("b"), 1), u));
  EXPECT_THROW(eval_judgement(Judgement::leaf(parse_nnf("b"), 2), u), usage_error);
}

TEST(Judgement, Rendering) {
  const Judgement row1 = Judgement::join(Judgement::leaf(parse_nnf("a"), 0), Judgement::leaf(parse_nnf("X b"), 0));
  EXPECT_EQ(render(row1), "[u,0 ⊨ a]_F ⊔ [u,0 ⊨ Xb]_F");
  EXPECT_EQ(render(Judgement::join(Judgement::bottom(), Judgement::leaf(parse_nnf("X b"), 0))), "⊥ ⊔ [u,0 ⊨ Xb]_F");
  EXPECT_EQ(render(Judgement::leaf(parse_nnf("W !a"), 2)), "[u,2 ⊨ X̄¬a]_F");
  const Judgement mixed =
      Judgement::join(Judgement::top(), Judgement::meet(Judgement::bottom(), Judgement::top()));
  EXPECT_EQ(render(mixed), "⊤ ⊔ (⊥ ⊓ ⊤)");
}

TEST(Corpus, Enumeration) {
  const auto d0 = enumerate_formulas(0, {"a"});
  ASSERT_EQ(d0.size(), 3u);
  EXPECT_EQ(format_formula(d0[0]), "true");
  EXPECT_EQ(format_formula(d0[1]), "a");
  EXPECT_EQ(format_formula(d0[2]), "!a");

  const auto d1 = enumerate_formulas(1, {"a"});
  auto has = [&](const char* text) {
    const Formula f = parse_nnf(text);
    return std::find(d1.begin(), d1.end(), f) != d1.end();
  };
  for (const char* t : {"X a", "W a", "F a", "G a", "a U a", "a | !a", "true & !a"})
    EXPECT_TRUE(has(t)) << t;

  // |F(d)| = |leaves| + 4|F(d-1)| + 3|F(d-1)|^2
  std::size_t n = 5;
  for (int d = 1; d <= 2; ++d)
    n = 5 + 4 * n + 3 * n * n;
  EXPECT_EQ(enumerate_formulas(2, {"a", "b"}).size(), n);
  EXPECT_EQ(n, 30405u);
}

TEST(Corpus, RandomFormulas) {
  EXPECT_EQ(random_formula(4, {"a", "b"}, 99u), random_formula(4, {"a", "b"}, 99u));
  for (std::uint64_t s = 0; s < 50; ++s)
    EXPECT_EQ(random_formula(0, {"a", "b"}, s).depth(), 0u);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const Formula f = random_formula(4, {"a", "b"}, rng);
    ASSERT_TRUE(f.is_nnf());
    ASSERT_LE(f.depth(), 4u);
  }
}
