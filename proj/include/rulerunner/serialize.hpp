#pragma once

// Machine-readable dumps. Field order is fixed (ordered_json).

#include "rulerunner/monitor.hpp"
#include "rulerunner/rules.hpp"

#include <json.hpp>

#include <string>

namespace rulerunner {

using json = nlohmann::ordered_json;

inline json to_json(const RuleSystem& sys, const Condition& c) {
  switch (c.kind) {
  case Condition::Kind::Value:
    return {{"kind", "value"}, {"formula", render(sys, c.formula)}, {"value", to_string(c.value)}};
  case Condition::Kind::Observed:
    return {{"kind", "observed"}, {"atom", c.atom}};
  case Condition::Kind::NotObserved:
    return {{"kind", "not_observed"}, {"atom", c.atom}};
  case Condition::Kind::End:
    return {{"kind", "end"}};
  }
  return {};
}

inline json to_json(const RuleSystem& sys, const EvaluationRule& r) {
  json j;
  if (r.guard == EvaluationRule::Guard::Activation)
    j["guard"] = render(sys, r.name);
  else
    j["guard"] = render(sys, r.guard_formula, r.guard_value);
  json conds = json::array();
  for (const Condition& c : r.conditions)
    conds.push_back(to_json(sys, c));
  j["conditions"] = std::move(conds);
  if (r.terminal)
    j["output"] = *r.terminal == Terminal::Success ? "SUCCESS" : "FAILURE";
  else
    j["output"] = render(sys, r.head_formula, r.head_value);
  return j;
}

inline json to_json(const RuleSystem& sys) {
  json j;
  j["formula"] = format_formula(sys.formula());
  json ev = json::array();
  for (const EvaluationRule& r : sys.evaluation_rules())
    ev.push_back(to_json(sys, r));
  j["evaluation_rules"] = std::move(ev);
  json re = json::array();
  for (const ReactivationRule& r : sys.reactivation_rules()) {
    json names = json::array();
    for (const RuleName& n : detail::merge_names(r.respawn, {r.continuation}))
      names.push_back(render(sys, n));
    re.push_back({{"trigger", render(sys, r.trigger_formula, r.trigger_value)}, {"activate", std::move(names)}});
  }
  j["reactivation_rules"] = std::move(re);
  json init = json::array();
  for (const RuleName& n : sys.initial_state())
    init.push_back(render(sys, n));
  j["initial_state"] = std::move(init);
  return j;
}

/// Per-cell snapshot: cell index, verdict after the cell, evaluations in
/// firing order.
inline json to_json(const RuleSystem& sys, const StepOutcome& s) {
  json evals = json::array();
  for (const Evaluation& e : s.record.evaluations)
    evals.push_back({{"formula", render(sys, e.formula)}, {"epoch", e.epoch}, {"value", to_string(e.value)}});
  json obs = json::array();
  for (const std::string& a : s.record.observations)
    obs.push_back(a);
  return {{"cell", s.record.cell},
          {"end", s.record.at_end},
          {"verdict", to_string(s.verdict)},
          {"observations", std::move(obs)},
          {"evaluations", std::move(evals)}};
}

inline json to_json(const RuleSystem& sys, const RunResult& r) {
  json cells = json::array();
  for (const StepOutcome& s : r.steps)
    cells.push_back(to_json(sys, s));
  return {{"formula", format_formula(sys.formula())},
          {"verdict", to_string(r.verdict)},
          {"decided_at", r.decided_at},
          {"cells", std::move(cells)}};
}

} // namespace rulerunner
