#include "rulerunner/trace.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

using namespace rulerunner;

TEST(TraceInline, Examples) {
  const Trace t = parse_trace_inline("[c - a - b,d - b]");
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0], (Cell{"c"}));
  EXPECT_EQ(t[1], (Cell{"a"}));
  EXPECT_EQ(t[2], (Cell{"b", "d"}));
  EXPECT_EQ(t[3], (Cell{"b"}));
  EXPECT_EQ(parse_trace_inline("[b - b]"), (Trace{{"b"}, {"b"}}));
  EXPECT_EQ(parse_trace_inline(". - a"), (Trace{{}, {"a"}}));
  EXPECT_EQ(parse_trace_inline("  [ b , d ]  "), (Trace{{"b", "d"}}));
}

TEST(TraceInline, Errors) {
  EXPECT_THROW(parse_trace_inline(""), parse_error);
  EXPECT_THROW(parse_trace_inline("[]"), parse_error);
  EXPECT_THROW(parse_trace_inline("[a - ]"), parse_error);
  EXPECT_THROW(parse_trace_inline("[a,,b]"), parse_error);
  EXPECT_THROW(parse_trace_inline("[a - END]"), parse_error);
  EXPECT_THROW(parse_trace_inline("[a - B]"), parse_error);
  EXPECT_THROW(parse_trace_inline("[a"), parse_error);
  try {
    parse_trace_inline("[a - b - ?]");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.position(), 8u);
  }
}

TEST(TraceInline, RoundTrip) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 500; ++i) {
    const Trace t = random_trace({"a", "b", "c_1"}, 1 + rng() % 8, unit_interval(rng), rng);
    ASSERT_EQ(parse_trace_inline(format_trace_inline(t)), t) << format_trace_inline(t);
    ASSERT_EQ(parse_trace_file_text(format_trace_file(t)), t);
  }
}

TEST(TraceFile, Format) {
  EXPECT_EQ(parse_trace_file_text("c\na\nb,d\nb\n"), parse_trace_inline("[c - a - b,d - b]"));
  EXPECT_EQ(parse_trace_file_text("a\n"), (Trace{{"a"}}));
  EXPECT_EQ(parse_trace_file_text("# comment\na\n"), (Trace{{"a"}}));
  EXPECT_EQ(parse_trace_file_text("a b\n\nc, d\n"), (Trace{{"a", "b"}, {}, {"c", "d"}}));
  EXPECT_EQ(parse_trace_file_text("a\r\nb\r\n"), (Trace{{"a"}, {"b"}}));
  EXPECT_THROW(parse_trace_file_text(""), parse_error);
  EXPECT_THROW(parse_trace_file_text("# only\n"), parse_error);
  try {
    parse_trace_file_text("a\nb\nX\n");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.position(), 3u); // line number
  }
}

TEST(TraceFile, ReadFromDisk) {
  const std::string path = ::testing::TempDir() + "rr_trace.txt";
  {
    std::ofstream out(path);
    out << "# sample trace\nc\na\nb,d\nb\n";
  }
  EXPECT_EQ(read_trace_file(path), parse_trace_inline("[c - a - b,d - b]"));
  std::remove(path.c_str());
  EXPECT_THROW(read_trace_file(path), std::runtime_error);
}

TEST(TraceSet, Separators) {
  const auto set = parse_trace_set("a\nb\n---\n\nc\n");
  ASSERT_EQ(set.size(), 2u);
  EXPECT_EQ(set[0], (Trace{{"a"}, {"b"}}));
  EXPECT_EQ(set[1], (Trace{{}, {"c"}}));
  const std::vector<Trace> ts{Trace{{"a"}}, Trace{{}, {}}, Trace{{"a", "b"}}};
  EXPECT_EQ(parse_trace_set(format_trace_set(ts)), ts);
}

TEST(Gen, Degenerate) {
  GenParams p{{"a", "b"}, 10, 0.0, 5, 3};
  for (const Trace& t : gen_traces(p)) {
    EXPECT_EQ(t.size(), 10u);
    for (const Cell& c : t)
      EXPECT_TRUE(c.empty());
  }
  p.density = 1.0;
  const auto full = gen_traces(p);
  EXPECT_EQ(full.size(), 3u);
  for (const Trace& t : full)
    for (const Cell& c : t)
      EXPECT_EQ(c, (Cell{"a", "b"}));
}

TEST(Gen, DeterministicAndCalibrated) {
  GenParams p{{"a"}, 10000, 0.3, 42, 1};
  const auto x = gen_traces(p);
  EXPECT_EQ(x, gen_traces(p));
  std::size_t hits = 0;
  for (const Cell& c : x[0])
    hits += c.count("a");
  const double n = 10000, sigma = std::sqrt(n * 0.3 * 0.7);
  EXPECT_LE(std::abs(double(hits) - n * 0.3), 3 * sigma);
  p.seed = 43;
  EXPECT_NE(x, gen_traces(p));
}

TEST(Gen, InvalidParams) {
  EXPECT_THROW(gen_traces({{}, 1, 0.5, 0, 1}), usage_error);
  EXPECT_THROW(gen_traces({{"a"}, 0, 0.5, 0, 1}), usage_error);
  EXPECT_THROW(gen_traces({{"a"}, 1, 1.5, 0, 1}), usage_error);
  EXPECT_THROW(gen_traces({{"a"}, 1, -0.1, 0, 1}), usage_error);
  EXPECT_THROW(gen_traces({{"a"}, 1, 0.5, 0, 0}), usage_error);
  EXPECT_THROW(gen_traces({{"Bad"}, 1, 0.5, 0, 1}), usage_error);
}

TEST(Trace, Validation) {
  EXPECT_THROW(Trace(std::vector<Cell>{}), usage_error);
  EXPECT_THROW((Trace{{"A"}}), usage_error);
}
