#pragma once

#include "rulerunner/error.hpp"
#include "rulerunner/rules.hpp"
#include "rulerunner/trace.hpp"
#include "rulerunner/truth.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rulerunner {

/// Cell index at which a monitor instance was spawned. An instance
/// (φ, epoch) computes the value of φ at that trace position.
using Epoch = std::uint32_t;

/// An active rule name. Several instances of one subformula can be live at
/// once (e.g. ◇Xa respawns Xa every cell); epochs keep them apart.
struct Activation {
  RuleName name;
  Epoch epoch = 0;

  friend bool operator==(const Activation&, const Activation&) = default;
  friend std::strong_ordering operator<=>(const Activation& a, const Activation& b) {
    if (auto c = a.name.formula <=> b.name.formula; c != 0)
      return c;
    if (auto c = a.epoch <=> b.epoch; c != 0)
      return c;
    return a.name.mode <=> b.name.mode;
  }
};

struct Evaluation {
  FormulaId formula{};
  Epoch epoch = 0;
  TruthValue value = TruthValue::undecided();

  friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

enum class Verdict : std::uint8_t { Success, Failure, Undecided };

inline std::string to_string(Verdict v) {
  return v == Verdict::Success ? "SUCCESS" : v == Verdict::Failure ? "FAILURE" : "?";
}

/// Everything that happened in one cell, in firing order.
struct CellRecord {
  std::size_t cell = 0;
  bool at_end = false;
  std::vector<Activation> state;
  Cell observations;
  std::vector<Evaluation> evaluations;
  std::vector<std::size_t> fired; // evaluation-rule indices
  std::optional<Terminal> terminal;
  std::vector<Activation> next; // empty once a terminal verdict is reached
};

struct StepOutcome {
  Verdict verdict = Verdict::Undecided;
  TruthValue root = TruthValue::undecided();
  CellRecord record;
};

/// Witness bookkeeping for one until instance. Entry k describes the operand
/// instances spawned at cell `first + k`. Leading entries whose left operand
/// held and whose right operand failed are folded into `first`, and nothing
/// past the first failed left operand is tracked.
struct UntilLedger {
  struct Entry {
    Epoch epoch = 0;
    Tri left = Tri::U;
    Tri right = Tri::U;
  };
  std::vector<Entry> entries;
  bool broken = false; // some left operand failed
};

class MonitorState {
public:
  std::size_t cell() const noexcept { return cell_; }
  const std::vector<Activation>& active() const noexcept { return active_; }
  const std::optional<Terminal>& terminal() const noexcept { return terminal_; }

  /// Activations plus bookkeeping entries. Bounded for formulas whose
  /// instances do not pile up, independent of how many cells were read.
  std::size_t footprint() const noexcept {
    std::size_t n = active_.size();
    for (const auto& [key, pending] : pending_)
      n += pending.size();
    for (const auto& [key, ledger] : until_)
      n += ledger.entries.size();
    return n;
  }

private:
  friend MonitorState new_monitor(const RuleSystem& sys);
  friend StepOutcome step(const RuleSystem& sys, MonitorState& m, const Cell& obs, bool is_last);

  using Key = std::pair<std::uint32_t, Epoch>;

  std::size_t cell_ = 0;
  std::vector<Activation> active_;
  std::optional<Terminal> terminal_;
  std::map<Key, std::vector<Epoch>> pending_; // ◇/□: operand instances not yet decided
  std::map<Key, UntilLedger> until_;
};

inline MonitorState new_monitor(const RuleSystem& sys) {
  MonitorState m;
  for (const RuleName& n : sys.initial_state())
    m.active_.push_back({n, 0});
  std::sort(m.active_.begin(), m.active_.end());
  return m;
}

namespace detail {

class CellEvaluator {
public:
  CellEvaluator(const RuleSystem& sys, const Cell& obs, bool at_end, std::vector<Evaluation>& out)
      : sys_(sys), obs_(obs), at_end_(at_end), out_(out) {}

  // Evaluations are appended in (formula, epoch) order, so lookups can
  // binary-search.
  TruthValue lookup(FormulaId id, Epoch epoch) const {
    auto it = std::lower_bound(out_.begin(), out_.end(), std::pair{id, epoch},
                               [](const Evaluation& e, const std::pair<FormulaId, Epoch>& k) {
                                 return std::pair{e.formula, e.epoch} < k;
                               });
    if (it == out_.end() || it->formula != id || it->epoch != epoch)
      throw internal_error("operand [" + render(sys_, id) + "]@" + std::to_string(epoch) +
                           " has no evaluation in this cell");
    return it->value;
  }

  Tri lookup_tri(FormulaId id, Epoch epoch) const { return lookup(id, epoch).tri(); }

  bool observed(const std::string& atom) const { return obs_.contains(atom); }
  bool at_end() const noexcept { return at_end_; }

  /// Fires the unique table rule guarded by `name` whose conditions hold.
  std::size_t fire(const RuleName& name, Tri left, Tri right, Tri sub) const {
    std::optional<std::size_t> hit;
    for (std::size_t r : sys_.rules_for(name)) {
      bool ok = true;
      for (const Condition& c : sys_.evaluation_rules()[r].conditions) {
        switch (c.kind) {
        case Condition::Kind::Value: {
          const Tri v = c.operand == Operand::Left ? left : c.operand == Operand::Right ? right : sub;
          ok = v == c.value;
          break;
        }
        case Condition::Kind::Observed:
          ok = observed(c.atom);
          break;
        case Condition::Kind::NotObserved:
          ok = !observed(c.atom);
          break;
        case Condition::Kind::End:
          ok = at_end_;
          break;
        }
        if (!ok)
          break;
      }
      if (!ok)
        continue;
      if (hit)
        throw internal_error("two evaluation rules fired for " + render(sys_, name));
      hit = r;
    }
    if (!hit)
      throw internal_error("no evaluation rule fired for " + render(sys_, name));
    return *hit;
  }

private:
  const RuleSystem& sys_;
  const Cell& obs_;
  bool at_end_;
  std::vector<Evaluation>& out_;
};

struct UntilAggregate {
  Tri left;    // left chain can still carry a witness into the future
  Tri right;   // some admissible right-operand instance holds
  Tri outcome; // value of the whole until instance
};

inline UntilAggregate aggregate(const UntilLedger& ledger, bool at_end) {
  bool witness = false;
  bool chain_true = true; // every left operand so far held
  bool right_open = false;
  for (const auto& e : ledger.entries) {
    if (e.right == Tri::T && chain_true)
      witness = true;
    if (e.right != Tri::F)
      right_open = true;
    if (e.left != Tri::T)
      chain_true = false;
  }
  UntilAggregate a{};
  a.right = witness ? Tri::T : right_open ? Tri::U : Tri::F;
  a.left = ledger.broken || at_end ? Tri::F : chain_true ? Tri::T : Tri::U;
  a.outcome = witness ? Tri::T : (a.right == Tri::F && a.left == Tri::F) ? Tri::F : Tri::U;
  return a;
}

} // namespace detail

/// One monitoring cycle: add observations, fire evaluation rules in compiled
/// order, check the terminal rules, then fire reactivation rules. Atoms the
/// formula does not mention are ignored.
inline StepOutcome step(const RuleSystem& sys, MonitorState& m, const Cell& obs, bool is_last) {
  if (m.terminal_)
    throw usage_error("monitor already reached a verdict");

  StepOutcome outcome;
  CellRecord& rec = outcome.record;
  rec.cell = m.cell_;
  rec.at_end = is_last;
  rec.state = m.active_;
  rec.observations = obs;

  const auto cell = static_cast<Epoch>(m.cell_);
  detail::CellEvaluator ev(sys, obs, is_last, rec.evaluations);

  for (std::size_t i = 0; i < m.active_.size(); ++i) {
    const Activation& act = m.active_[i];
    if (i > 0 && m.active_[i - 1].name.formula == act.name.formula && m.active_[i - 1].epoch == act.epoch)
      throw internal_error("instance " + render(sys, act.name) + "@" + std::to_string(act.epoch) +
                           " is active in two modes");
    const FormulaId id = act.name.formula;
    const Subformula& node = sys.node(id);
    const MonitorState::Key key{index(id), act.epoch};
    Tri left = Tri::U, right = Tri::U, sub = Tri::U;

    switch (node.op) {
    case Op::Or:
    case Op::And:
      if (act.name.mode != Mode::R)
        left = ev.lookup_tri(node.left, act.epoch);
      if (act.name.mode != Mode::L)
        right = ev.lookup_tri(node.right, act.epoch);
      break;
    case Op::Next:
    case Op::WeakNext:
      if (act.name.mode == Mode::M)
        sub = ev.lookup_tri(node.left, act.epoch + 1);
      break;
    case Op::Eventually:
    case Op::Always: {
      auto [it, fresh] = m.pending_.try_emplace(key);
      if (fresh)
        it->second.push_back(act.epoch);
      const Tri decisive = node.op == Op::Eventually ? Tri::T : Tri::F;
      bool hit = false;
      std::vector<Epoch> still;
      for (Epoch j : it->second) {
        const Tri v = ev.lookup_tri(node.left, j);
        hit = hit || v == decisive;
        if (v == Tri::U)
          still.push_back(j);
      }
      it->second = std::move(still);
      sub = hit ? decisive : it->second.empty() ? (decisive == Tri::T ? Tri::F : Tri::T) : Tri::U;
      break;
    }
    case Op::Until: {
      auto [it, fresh] = m.until_.try_emplace(key);
      UntilLedger& ledger = it->second;
      if (fresh)
        ledger.entries.push_back({act.epoch});
      for (auto& e : ledger.entries) {
        if (e.left == Tri::U)
          e.left = ev.lookup_tri(node.left, e.epoch);
        if (e.right == Tri::U)
          e.right = ev.lookup_tri(node.right, e.epoch);
      }
      auto brk = std::find_if(ledger.entries.begin(), ledger.entries.end(),
                              [](const auto& e) { return e.left == Tri::F; });
      if (brk != ledger.entries.end()) {
        ledger.broken = true;
        ledger.entries.erase(brk + 1, ledger.entries.end());
      }
      const detail::UntilAggregate agg = detail::aggregate(ledger, is_last);
      // Settled prefix: left held, right failed. It can neither witness nor
      // break the chain any more.
      auto settled = std::find_if(ledger.entries.begin(), ledger.entries.end(), [](const auto& e) {
        return !(e.left == Tri::T && e.right == Tri::F);
      });
      ledger.entries.erase(ledger.entries.begin(), settled);
      switch (act.name.mode) {
      case Mode::A:
        left = agg.left;
        right = agg.right;
        break;
      case Mode::R:
        right = agg.right;
        break;
      default:
        left = agg.outcome;
        break;
      }
      break;
    }
    default:
      break;
    }

    const std::size_t rule = ev.fire(act.name, left, right, sub);
    rec.fired.push_back(rule);
    TruthValue value = sys.evaluation_rules()[rule].head_value;
    if (is_last && value.is_undecided()) {
      if (auto end = sys.end_rule(id); end && value == sys.evaluation_rules()[*end].guard_value) {
        rec.fired.push_back(*end);
        value = sys.evaluation_rules()[*end].head_value;
      }
    }
    rec.evaluations.push_back({id, act.epoch, value});
    if (value.is_decided()) {
      m.pending_.erase(key);
      m.until_.erase(key);
    }
  }

  const TruthValue root = ev.lookup(sys.root(), 0);
  outcome.root = root;
  if (root.is_decided()) {
    const std::size_t rule = root.is_true() ? sys.success_rule() : sys.failure_rule();
    rec.fired.push_back(rule);
    m.terminal_ = sys.evaluation_rules()[rule].terminal;
    rec.terminal = m.terminal_;
    outcome.verdict = *m.terminal_ == Terminal::Success ? Verdict::Success : Verdict::Failure;
    m.active_.clear();
    m.pending_.clear();
    m.until_.clear();
    ++m.cell_;
    return outcome;
  }

  std::vector<Activation> next;
  for (const Evaluation& e : rec.evaluations) {
    if (e.value.is_decided())
      continue;
    const ReactivationRule* r = sys.reactivation_for(e.formula, e.value);
    if (!r)
      throw internal_error("no reactivation rule for " + render(sys, e.formula, e.value));
    next.push_back({r->continuation, e.epoch});
    for (const RuleName& n : r->respawn)
      next.push_back({n, cell + 1});
    const MonitorState::Key key{index(e.formula), e.epoch};
    switch (sys.node(e.formula).op) {
    case Op::Eventually:
    case Op::Always:
      m.pending_[key].push_back(cell + 1);
      break;
    case Op::Until:
      if (auto& ledger = m.until_[key]; !ledger.broken)
        ledger.entries.push_back({cell + 1});
      break;
    default:
      break;
    }
  }
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  rec.next = next;
  m.active_ = std::move(next);
  ++m.cell_;
  return outcome;
}

struct RunResult {
  Verdict verdict = Verdict::Undecided;
  std::size_t decided_at = 0; // cell index of the verdict
  std::vector<StepOutcome> steps;
};

/// Monitors a complete trace; END is in effect on its last cell. Cells after
/// a verdict are not read.
inline RunResult run_trace(const RuleSystem& sys, const Trace& trace) {
  if (trace.empty())
    throw usage_error("cannot monitor an empty trace");
  RunResult result;
  MonitorState m = new_monitor(sys);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    StepOutcome out = step(sys, m, trace[i], i + 1 == trace.size());
    const Verdict v = out.verdict;
    result.steps.push_back(std::move(out));
    if (v != Verdict::Undecided) {
      result.verdict = v;
      result.decided_at = i;
      return result;
    }
  }
  throw internal_error("trace ended without a binary verdict");
}

/// Verdict only, without keeping per-cell records.
inline std::pair<Verdict, std::size_t> verdict_of(const RuleSystem& sys, const Trace& trace) {
  if (trace.empty())
    throw usage_error("cannot monitor an empty trace");
  MonitorState m = new_monitor(sys);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const Verdict v = step(sys, m, trace[i], i + 1 == trace.size()).verdict;
    if (v != Verdict::Undecided)
      return {v, i};
  }
  return {Verdict::Undecided, trace.size()};
}

/// Online front end for traces whose end is announced after the fact.
/// Each cell is stepped as not-last; finish() replays the last cell from a
/// saved state with END in effect.
class StreamMonitor {
public:
  explicit StreamMonitor(std::shared_ptr<const RuleSystem> sys)
      : sys_(std::move(sys)), state_(new_monitor(*sys_)) {}

  bool done() const noexcept { return verdict_ != Verdict::Undecided; }
  Verdict verdict() const noexcept { return verdict_; }
  std::size_t cells() const noexcept { return cells_; }

  Verdict feed(const Cell& obs) {
    if (done())
      throw usage_error("monitor already reached a verdict");
    before_last_ = state_;
    last_ = obs;
    verdict_ = step(*sys_, state_, obs, false).verdict;
    ++cells_;
    return verdict_;
  }

  /// Marks the most recent cell as the last one. With no cell fed, the trace
  /// is a single empty cell.
  Verdict finish() {
    if (done())
      return verdict_;
    if (cells_ == 0) {
      verdict_ = step(*sys_, state_, Cell{}, true).verdict;
      cells_ = 1;
    } else {
      state_ = *before_last_;
      verdict_ = step(*sys_, state_, *last_, true).verdict;
    }
    return verdict_;
  }

private:
  std::shared_ptr<const RuleSystem> sys_;
  MonitorState state_;
  std::optional<MonitorState> before_last_;
  std::optional<Cell> last_;
  Verdict verdict_ = Verdict::Undecided;
  std::size_t cells_ = 0;
};

} // namespace rulerunner
