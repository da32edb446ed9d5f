#pragma once

#include "rulerunner/monitor.hpp"
#include "rulerunner/rules.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace rulerunner {

/// Renders state tokens. Epoch suffixes ("@3") appear only on formulas with
/// more than one live instance among the rendered tokens.
class TokenRow {
public:
  explicit TokenRow(const RuleSystem& sys) : sys_(sys) {}

  TokenRow& add(const Activation& a) {
    items_.push_back({Item::Activation, a.name, a.epoch, TruthValue::undecided(), {}});
    epochs_[a.name.formula].insert(a.epoch);
    return *this;
  }

  TokenRow& add(const Evaluation& e) {
    items_.push_back({Item::Evaluation, {e.formula, Mode::Plain}, e.epoch, e.value, {}});
    epochs_[e.formula].insert(e.epoch);
    return *this;
  }

  TokenRow& add_text(std::string text) {
    items_.push_back({Item::Text, {}, 0, TruthValue::undecided(), std::move(text)});
    return *this;
  }

  template <class Range> TokenRow& add_all(const Range& r) {
    for (const auto& x : r)
      add(x);
    return *this;
  }

  std::string str() const {
    std::string out;
    for (const Item& it : items_) {
      if (!out.empty())
        out += ", ";
      switch (it.kind) {
      case Item::Activation:
        out += render(sys_, it.name);
        break;
      case Item::Evaluation:
        out += render(sys_, it.name.formula, it.value);
        break;
      case Item::Text:
        out += it.text;
        continue;
      }
      if (epochs_.at(it.name.formula).size() > 1)
        out += "@" + std::to_string(it.epoch);
    }
    return out;
  }

private:
  struct Item {
    enum Kind { Activation, Evaluation, Text } kind;
    RuleName name;
    Epoch epoch;
    TruthValue value = TruthValue::undecided();
    std::string text;
  };

  const RuleSystem& sys_;
  std::vector<Item> items_;
  std::map<FormulaId, std::set<Epoch>> epochs_;
};

inline std::string terminal_token(Terminal t) { return t == Terminal::Success ? "SUCCESS" : "FAILURE"; }

/// The four rows of one cell: state, state plus observations, evaluations,
/// and either the reactivated state or the stop line.
inline std::string explain_cell(const RuleSystem& sys, const CellRecord& rec) {
  TokenRow state(sys), with_obs(sys), eval(sys);
  state.add_all(rec.state);
  with_obs.add_all(rec.state);
  for (const std::string& a : rec.observations)
    with_obs.add_text(a);
  eval.add_all(rec.evaluations);
  if (rec.terminal)
    eval.add_text(terminal_token(*rec.terminal));

  std::string out;
  out += "state | " + state.str() + "\n";
  out += "+ obs | " + with_obs.str() + "\n";
  out += "eval  | " + eval.str() + "\n";
  if (rec.terminal) {
    out += std::string("STOP  | ") +
           (*rec.terminal == Terminal::Success ? "PROPERTY SATISFIED" : "PROPERTY VIOLATED") + "\n";
  } else {
    TokenRow react(sys);
    react.add_all(rec.next);
    out += "react | " + react.str() + "\n";
  }
  return out;
}

/// Evolution listing for a run, one block per cell separated by blank lines.
inline std::string explain(const RuleSystem& sys, const std::vector<StepOutcome>& steps) {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i > 0)
      out += "\n";
    out += explain_cell(sys, steps[i].record);
  }
  return out;
}

} // namespace rulerunner
