#pragma once

// Engine-vs-oracle comparison over formula and trace corpora.

#include "rulerunner/corpus.hpp"
#include "rulerunner/error.hpp"
#include "rulerunner/monitor.hpp"
#include "rulerunner/oracle.hpp"
#include "rulerunner/rules.hpp"
#include "rulerunner/trace.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace rulerunner {

struct TraceCorpusParams {
  std::vector<std::string> atoms{"a", "b"};
  std::size_t count = 50;
  std::size_t min_length = 1;
  std::size_t max_length = 5;
  std::vector<double> densities{0.0, 0.3, 0.7, 1.0}; // used round-robin
  std::uint64_t seed = 1;
};

/// Seeded traces with lengths uniform in [min_length, max_length].
inline std::vector<Trace> trace_corpus(const TraceCorpusParams& p) {
  if (p.min_length < 1 || p.max_length < p.min_length)
    throw usage_error("trace lengths must satisfy 1 <= min <= max");
  if (p.densities.empty())
    throw usage_error("no densities given");
  GenParams check{p.atoms, p.min_length, 0.0, p.seed, 1};
  validate(check);
  std::mt19937_64 rng(p.seed);
  std::uniform_int_distribution<std::size_t> len(p.min_length, p.max_length);
  std::vector<Trace> out;
  out.reserve(p.count);
  for (std::size_t i = 0; i < p.count; ++i) {
    const std::size_t n = len(rng);
    out.push_back(random_trace(p.atoms, n, p.densities[i % p.densities.size()], rng));
  }
  return out;
}

struct Counterexample {
  Formula formula;
  Trace trace;
  Verdict engine = Verdict::Undecided;
  bool oracle = false;
  std::string note; // engine error text, if any
};

struct DiffReport {
  std::size_t formulas = 0;
  std::size_t runs = 0;
  std::size_t mismatches = 0;
  std::size_t non_binary = 0; // runs ending without SUCCESS/FAILURE
  std::size_t early = 0;      // runs decided before the last cell
  std::vector<Counterexample> counterexamples;

  bool pass() const noexcept { return mismatches == 0 && non_binary == 0; }
};

/// Exit status of the diff command: 0 on full agreement, 3 otherwise.
inline int exit_status(const DiffReport& r) noexcept { return r.pass() ? 0 : 3; }

using SystemFactory = std::function<RuleSystem(const Formula&)>;

inline RuleSystem default_factory(const Formula& f) { return compile(f); }

/// Runs every formula over every trace. Engine errors count as mismatches.
/// At most `keep` counterexamples are retained.
inline DiffReport differential(const std::vector<Formula>& formulas, const std::vector<Trace>& traces,
                               const SystemFactory& factory = default_factory, std::size_t keep = 10) {
  DiffReport r;
  r.formulas = formulas.size();
  for (const Formula& f : formulas) {
    const RuleSystem sys = factory(f);
    for (const Trace& u : traces) {
      ++r.runs;
      const bool expected = oracle_eval(f, u, 0);
      Verdict got = Verdict::Undecided;
      std::string note;
      try {
        const auto [v, at] = verdict_of(sys, u);
        got = v;
        if (v != Verdict::Undecided && at + 1 < u.size())
          ++r.early;
      } catch (const internal_error& e) {
        note = e.what();
      }
      if (got == Verdict::Undecided)
        ++r.non_binary;
      const bool ok = got == (expected ? Verdict::Success : Verdict::Failure);
      if (ok)
        continue;
      ++r.mismatches;
      if (r.counterexamples.size() < keep)
        r.counterexamples.push_back({f, u, got, expected, note});
    }
  }
  return r;
}

inline std::string render(const Counterexample& c) {
  std::string out = format_formula(c.formula) + " on " + format_trace_inline(c.trace) +
                    ": engine " + to_string(c.engine) + ", oracle " + (c.oracle ? "SUCCESS" : "FAILURE");
  if (!c.note.empty())
    out += " (" + c.note + ")";
  return out;
}

inline std::string render(const DiffReport& r) {
  std::string out;
  out += "formulas:   " + std::to_string(r.formulas) + "\n";
  out += "runs:       " + std::to_string(r.runs) + "\n";
  out += "early:      " + std::to_string(r.early) + "\n";
  out += "non-binary: " + std::to_string(r.non_binary) + "\n";
  out += "mismatches: " + std::to_string(r.mismatches) + "\n";
  for (const Counterexample& c : r.counterexamples)
    out += "  " + render(c) + "\n";
  return out;
}

} // namespace rulerunner
