#pragma once

// Translates engine states into finite-trace judgements and checks, along a
// whole run, that the judgement's value never changes and matches the
// verdict. Only ◇/□-free formulas are supported, and only states where each
// subformula has a single live instance can be mapped.

#include "rulerunner/error.hpp"
#include "rulerunner/explain.hpp"
#include "rulerunner/monitor.hpp"
#include "rulerunner/oracle.hpp"
#include "rulerunner/rules.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rulerunner {

/// A snapshot between two actions of the monitoring cycle.
struct StateView {
  std::size_t index = 0; // cells whose reactivation rules have fired
  std::vector<Activation> active;
  Cell observations;
  std::vector<Evaluation> evaluations;
  std::optional<Terminal> terminal;
};

inline bool uses_eventually_or_always(const Formula& f) {
  if (f.op() == Op::Eventually || f.op() == Op::Always)
    return true;
  if (is_binary(f.op()))
    return uses_eventually_or_always(f.left()) || uses_eventually_or_always(f.right());
  if (is_unary(f.op()))
    return uses_eventually_or_always(f.sub());
  return false;
}

/// True when no subformula has two live instances in the view.
inline bool is_flat(const StateView& s) {
  std::map<FormulaId, std::set<Epoch>> epochs;
  for (const Activation& a : s.active)
    epochs[a.name.formula].insert(a.epoch);
  for (const Evaluation& e : s.evaluations)
    epochs[e.formula].insert(e.epoch);
  for (const auto& [id, set] : epochs)
    if (set.size() > 1)
      return false;
  return true;
}

namespace detail {

class StateMapper {
public:
  StateMapper(const RuleSystem& sys, const StateView& s) : sys_(sys), s_(s) {}

  Judgement map(FormulaId id) const {
    if (s_.terminal)
      return *s_.terminal == Terminal::Success ? Judgement::top() : Judgement::bottom();

    Mode aux = Mode::Plain;
    if (const Evaluation* e = evaluation(id)) {
      if (e->value.is_true())
        return Judgement::top();
      if (e->value.is_false())
        return Judgement::bottom();
      aux = e->value.mode();
    } else if (const Activation* a = activation(id)) {
      aux = a->name.mode;
    } else {
      throw internal_error("state has neither an evaluation nor an activation for " + render(sys_, id));
    }

    const Formula& phi = sys_.subformulas().at(id);
    const Subformula& node = sys_.node(id);
    switch (node.op) {
    case Op::True:
    case Op::Atom:
    case Op::NegAtom:
      return Judgement::leaf(phi, s_.index);
    case Op::Or:
    case Op::And:
    case Op::Until:
      if (aux == Mode::L)
        return map(node.left);
      if (aux == Mode::R)
        return map(node.right);
      if (node.op == Op::Or)
        return Judgement::join(map(node.left), map(node.right));
      if (node.op == Op::And)
        return Judgement::meet(map(node.left), map(node.right));
      {
        const Judgement later = Judgement::leaf(Formula::next(phi), s_.index);
        if (aux == Mode::B)
          return Judgement::meet(map(node.left), later);
        return Judgement::join(map(node.right), Judgement::meet(map(node.left), later));
      }
    case Op::Next:
    case Op::WeakNext:
      if (aux == Mode::M)
        return map(node.left);
      return Judgement::leaf(phi, s_.index);
    default:
      throw formula_error("◇ and □ have no judgement mapping");
    }
  }

private:
  const Evaluation* evaluation(FormulaId id) const {
    for (const Evaluation& e : s_.evaluations)
      if (e.formula == id)
        return &e;
    return nullptr;
  }

  const Activation* activation(FormulaId id) const {
    for (const Activation& a : s_.active)
      if (a.name.formula == id)
        return &a;
    return nullptr;
  }

  const RuleSystem& sys_;
  const StateView& s_;
};

} // namespace detail

/// Judgement for the root formula in state `s`. Requires a ◇/□-free
/// formula and a flat state.
inline Judgement map_state(const RuleSystem& sys, const StateView& s) {
  if (uses_eventually_or_always(sys.formula()))
    throw formula_error("map_state supports only formulas without ◇ and □");
  if (!is_flat(s))
    throw usage_error("state has several live instances of one subformula");
  return detail::StateMapper(sys, s).map(sys.root());
}

inline std::string render_state(const RuleSystem& sys, const StateView& s) {
  if (s.terminal)
    return terminal_token(*s.terminal);
  TokenRow row(sys);
  row.add_all(s.active);
  for (const std::string& a : s.observations)
    row.add_text(a);
  row.add_all(s.evaluations);
  return row.str();
}

/// Every intermediate state of a run: the initial state, then per cell the
/// state with observations, one state per evaluation, and finally either
/// the reactivated state or the terminal verdict.
inline std::vector<StateView> run_states(const RunResult& run) {
  std::vector<StateView> out;
  if (run.steps.empty())
    return out;
  out.push_back({0, run.steps.front().record.state, {}, {}, {}});
  for (const StepOutcome& s : run.steps) {
    const CellRecord& rec = s.record;
    StateView v{rec.cell, rec.state, rec.observations, {}, {}};
    out.push_back(v);
    for (const Evaluation& e : rec.evaluations) {
      v.evaluations.push_back(e);
      out.push_back(v);
    }
    if (rec.terminal)
      out.push_back({rec.cell, {}, {}, {}, rec.terminal});
    else
      out.push_back({rec.cell + 1, rec.next, {}, {}, {}});
  }
  return out;
}

struct MapStep {
  std::size_t index = 0;
  std::string state;
  bool skipped = false; // several live instances of one subformula
  std::string judgement;
  bool value = false;
};

struct MapReport {
  bool expected = false; // oracle value of the formula at position 0
  Verdict verdict = Verdict::Undecided;
  std::vector<MapStep> steps;
  std::optional<std::size_t> first_violation;

  bool pass() const noexcept { return !first_violation; }
  std::size_t checked() const noexcept {
    std::size_t n = 0;
    for (const MapStep& s : steps)
      n += !s.skipped;
    return n;
  }
};

/// Runs the monitor over `u` and checks that every mappable state's
/// judgement evaluates to the oracle value, and that terminal states map to
/// ⊤/⊥ in agreement with the verdict.
inline MapReport check_run(const RuleSystem& sys, const Trace& u) {
  if (uses_eventually_or_always(sys.formula()))
    throw formula_error("check_run supports only formulas without ◇ and □");
  MapReport report;
  report.expected = oracle_eval(sys.formula(), u, 0);
  const RunResult run = run_trace(sys, u);
  report.verdict = run.verdict;

  for (const StateView& s : run_states(run)) {
    MapStep st;
    st.index = s.index;
    st.state = render_state(sys, s);
    if (!is_flat(s)) {
      st.skipped = true;
      report.steps.push_back(std::move(st));
      continue;
    }
    bool ok = true;
    try {
      const Judgement j = detail::StateMapper(sys, s).map(sys.root());
      st.judgement = render(j);
      st.value = eval_judgement(j, u);
      ok = st.value == report.expected;
      if (s.terminal) {
        const bool success = *s.terminal == Terminal::Success;
        ok = ok && success == st.value &&
             j.kind() == (success ? Judgement::Kind::Top : Judgement::Kind::Bottom);
      }
    } catch (const internal_error& e) {
      st.judgement = e.what();
      ok = false;
    }
    if (!ok && !report.first_violation)
      report.first_violation = report.steps.size();
    report.steps.push_back(std::move(st));
  }
  return report;
}

inline std::string render(const MapReport& r) {
  std::string out;
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const MapStep& s = r.steps[i];
    out += std::to_string(i + 1) + "\tindex " + std::to_string(s.index) + "\t" + s.state + "\t";
    out += s.skipped ? "(skipped)" : s.judgement + "\t" + (s.value ? "true" : "false");
    out += "\n";
  }
  out += r.pass() ? "PASS" : "FAIL at step " + std::to_string(*r.first_violation + 1);
  out += "\n";
  return out;
}

} // namespace rulerunner
