// rulerunner: compile LTL formulas into rule systems and monitor traces.
//
// Exit status: 0 SUCCESS (or command ok), 1 FAILURE, 2 usage or parse
// error, 3 internal error or differential mismatch.

#include "rulerunner/corpus.hpp"
#include "rulerunner/differential.hpp"
#include "rulerunner/explain.hpp"
#include "rulerunner/map_checker.hpp"
#include "rulerunner/monitor.hpp"
#include "rulerunner/parse.hpp"
#include "rulerunner/rules.hpp"
#include "rulerunner/serialize.hpp"
#include "rulerunner/trace.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

using namespace rulerunner;

namespace {

enum Exit { ok = 0, failure = 1, usage = 2, internal = 3 };

int verdict_exit(Verdict v) { return v == Verdict::Success ? ok : v == Verdict::Failure ? failure : internal; }

struct TraceSource {
  std::string inline_text;
  std::string file;
};

Trace load_trace(const TraceSource& src) {
  if (!src.inline_text.empty() && !src.file.empty())
    throw usage_error("give either --trace or --trace-file, not both");
  if (!src.inline_text.empty())
    return parse_trace_inline(src.inline_text);
  if (!src.file.empty())
    return read_trace_file(src.file);
  throw usage_error("a trace is required (--trace or --trace-file)");
}

std::vector<std::string> split_atoms(const std::string& text) {
  std::vector<std::string> atoms;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',' || c == ' ') {
      if (!cur.empty())
        atoms.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return atoms;
}

int cmd_compile(const std::string& formula, bool as_json) {
  const RuleSystem sys = compile(parse_nnf(formula));
  if (as_json)
    std::cout << to_json(sys).dump(2) << "\n";
  else
    std::cout << dump_rules(sys);
  return ok;
}

int cmd_run(const std::string& formula, const TraceSource& src, bool explain_it, bool as_json) {
  const RuleSystem sys = compile(parse_nnf(formula));
  const Trace u = load_trace(src);
  const RunResult r = run_trace(sys, u);
  if (as_json) {
    std::cout << to_json(sys, r).dump(2) << "\n";
  } else {
    if (explain_it)
      std::cout << explain(sys, r.steps) << "\n";
    std::cout << to_string(r.verdict) << " at cell " << r.decided_at << "\n";
  }
  return verdict_exit(r.verdict);
}

// One inline cell per line; "$end" announces that the previous cell was the
// last one. End of input counts as "$end".
int cmd_stream(const std::string& formula) {
  auto sys = std::make_shared<const RuleSystem>(compile(parse_nnf(formula)));
  StreamMonitor mon(sys);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(std::cin, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line == "$end")
      break;
    Cell cell;
    try {
      cell = parse_cell(line);
    } catch (const parse_error& e) {
      std::cerr << "line " << lineno << ": " << e.what() << " (skipped)\n";
      continue;
    }
    const Verdict v = mon.feed(cell);
    std::cout << to_string(v) << std::endl;
    if (mon.done())
      return verdict_exit(v);
  }
  const Verdict v = mon.finish();
  std::cout << to_string(v) << std::endl;
  return verdict_exit(v);
}

int cmd_gen(const GenParams& p, const std::string& output) {
  const std::string text = format_trace_set(gen_traces(p));
  if (output.empty()) {
    std::cout << text;
    return ok;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write '" + output + "'");
  out << text;
  return ok;
}

struct DiffArgs {
  int max_depth = 2;
  std::string atoms = "a,b";
  std::size_t traces = 50;
  std::size_t max_length = 5;
  std::uint64_t seed = 1;
  std::size_t sample = 0;
  bool inject_fault = false;
};

// Test hook: flips the first T-headed table rule of the root to F.
RuleSystem faulty_compile(const Formula& f) {
  RuleSystem sys = compile(f);
  const auto& rules = sys.evaluation_rules();
  for (std::size_t i = 0; i < rules.size(); ++i)
    if (!rules[i].terminal && rules[i].head_formula == sys.root() && rules[i].head_value.is_true())
      return sys.with_head(i, TruthValue::F());
  return sys;
}

int cmd_diff(const DiffArgs& a) {
  if (a.max_depth < 0)
    throw usage_error("--max-depth must be non-negative");
  const auto atoms = split_atoms(a.atoms);
  std::vector<Formula> formulas;
  if (a.sample > 0) {
    std::mt19937_64 rng(a.seed);
    for (std::size_t i = 0; i < a.sample; ++i)
      formulas.push_back(random_formula(a.max_depth, atoms, rng));
  } else {
    formulas = enumerate_formulas(a.max_depth, atoms);
  }
  TraceCorpusParams tp;
  tp.atoms = atoms;
  tp.count = a.traces;
  tp.max_length = a.max_length;
  tp.seed = a.seed;
  const auto traces = trace_corpus(tp);
  const DiffReport r =
      differential(formulas, traces, a.inject_fault ? SystemFactory(faulty_compile) : SystemFactory(default_factory));
  std::cout << render(r);
  return exit_status(r);
}

int cmd_map(const std::string& formula, const TraceSource& src) {
  const RuleSystem sys = compile(parse_nnf(formula));
  const MapReport r = check_run(sys, load_trace(src));
  std::cout << render(r);
  return r.pass() ? ok : internal;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"RuleRunner: rule-based runtime verification for finite-trace LTL"};
  app.require_subcommand(1);
  int status = ok;

  std::string formula;
  bool as_json = false, explain_flag = false;
  TraceSource src;

  auto* compile_cmd = app.add_subcommand("compile", "print the rule system for a formula");
  compile_cmd->add_option("formula", formula, "LTL formula")->required();
  compile_cmd->add_flag("--json", as_json, "machine-readable output");

  auto add_trace_opts = [&](CLI::App* c) {
    c->add_option("formula", formula, "LTL formula")->required();
    c->add_option("--trace", src.inline_text, "inline trace, e.g. \"[c - a - b,d - b]\"");
    c->add_option("--trace-file", src.file, "trace file, one cell per line");
  };

  auto* run_cmd = app.add_subcommand("run", "monitor a trace and print the verdict");
  add_trace_opts(run_cmd);
  run_cmd->add_flag("--explain", explain_flag, "print the per-cell evolution");
  run_cmd->add_flag("--json", as_json, "machine-readable per-cell snapshots");

  auto* explain_cmd = app.add_subcommand("explain", "same as run --explain");
  add_trace_opts(explain_cmd);

  auto* stream_cmd = app.add_subcommand("stream", "read cells from standard input, one per line");
  stream_cmd->add_option("formula", formula, "LTL formula")->required();

  GenParams gen;
  std::string atoms = "a,b", output;
  auto* gen_cmd = app.add_subcommand("gen", "generate random traces");
  gen_cmd->add_option("--atoms", atoms, "comma-separated alphabet")->capture_default_str();
  gen_cmd->add_option("--length", gen.length, "cells per trace")->capture_default_str();
  gen_cmd->add_option("--density", gen.density, "probability of each atom in each cell")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
  gen_cmd->add_option("--count", gen.count, "number of traces")->capture_default_str();
  gen_cmd->add_option("--output", output, "write to a file instead of standard output");

  DiffArgs diff;
  auto* diff_cmd = app.add_subcommand("diff", "compare engine verdicts with the brute-force evaluator");
  diff_cmd->add_option("--max-depth", diff.max_depth, "formula depth bound")->capture_default_str();
  diff_cmd->add_option("--atoms", diff.atoms, "comma-separated alphabet")->capture_default_str();
  diff_cmd->add_option("--traces", diff.traces, "random traces per formula")->capture_default_str();
  diff_cmd->add_option("--max-length", diff.max_length, "longest trace")->capture_default_str();
  diff_cmd->add_option("--seed", diff.seed, "corpus seed")->capture_default_str();
  diff_cmd->add_option("--sample", diff.sample, "random formulas instead of full enumeration");
  diff_cmd->add_flag("--inject-fault", diff.inject_fault, "corrupt one root rule (harness self-check)");

  auto* map_cmd = app.add_subcommand("map", "map every engine state to a judgement and check it");
  add_trace_opts(map_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (*compile_cmd)
      status = cmd_compile(formula, as_json);
    else if (*run_cmd)
      status = cmd_run(formula, src, explain_flag, as_json);
    else if (*explain_cmd)
      status = cmd_run(formula, src, true, false);
    else if (*stream_cmd)
      status = cmd_stream(formula);
    else if (*gen_cmd) {
      gen.atoms = split_atoms(atoms);
      status = cmd_gen(gen, output);
    } else if (*diff_cmd)
      status = cmd_diff(diff);
    else if (*map_cmd)
      status = cmd_map(formula, src);
  } catch (const internal_error& e) {
    std::cerr << "rulerunner: internal error: " << e.what() << "\n";
    return internal;
  } catch (const std::exception& e) {
    std::cerr << "rulerunner: " << e.what() << "\n";
    return usage;
  }
  return status;
}
