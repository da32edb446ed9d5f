#pragma once

#include "rulerunner/error.hpp"
#include "rulerunner/formula.hpp"
#include "rulerunner/truth.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rulerunner {

/// R[φ] with an activation mode, e.g. R[a∨◇b]B.
struct RuleName {
  FormulaId formula{};
  Mode mode = Mode::Plain;

  friend auto operator<=>(const RuleName&, const RuleName&) = default;
};

/// Which operand of the guarded formula a value condition reads.
enum class Operand : std::uint8_t { Left, Right, Sub };

struct Condition {
  enum class Kind : std::uint8_t { Value, Observed, NotObserved, End };

  Kind kind = Kind::Value;
  Operand operand = Operand::Sub; // Value
  FormulaId formula{};            // Value: the operand's id, for rendering
  Tri value = Tri::T;             // Value
  std::string atom;               // Observed / NotObserved

  friend bool operator==(const Condition&, const Condition&) = default;
};

enum class Terminal : std::uint8_t { Success, Failure };

struct EvaluationRule {
  enum class Guard : std::uint8_t {
    Activation, // R[φ]Z, ... → [φ]V
    Evaluation, // [φ]?, [END] → [φ]V   and   [φ]T → SUCCESS
  };

  Guard guard = Guard::Activation;
  RuleName name;            // Activation
  FormulaId guard_formula{}; // Evaluation
  TruthValue guard_value = TruthValue::undecided();
  std::vector<Condition> conditions;
  FormulaId head_formula{};
  TruthValue head_value = TruthValue::T();
  std::optional<Terminal> terminal; // replaces the head when set

  friend bool operator==(const EvaluationRule&, const EvaluationRule&) = default;
};

/// [φ]?Z → continuation, respawn...  Respawned names start fresh instances
/// in the next cell; the continuation carries on the triggering instance.
struct ReactivationRule {
  FormulaId trigger_formula{};
  TruthValue trigger_value = TruthValue::undecided();
  RuleName continuation;
  std::vector<RuleName> respawn;

  friend bool operator==(const ReactivationRule&, const ReactivationRule&) = default;
};

/// Per-subformula view used by the engine.
struct Subformula {
  Op op = Op::True;
  FormulaId left{};  // binary operand, or the operand of a unary operator
  FormulaId right{}; // binary only
  std::string atom;  // literals
};

/// The compiled ⟨evaluation rules, reactivation rules, initial state⟩.
/// Immutable once built; any number of monitors may share one instance.
class RuleSystem {
public:
  const Formula& formula() const noexcept { return formula_; }
  const SubformulaIndex& subformulas() const noexcept { return index_; }
  const Subformula& node(FormulaId id) const { return nodes_.at(index(id)); }
  FormulaId root() const noexcept { return index_.root(); }

  const std::vector<EvaluationRule>& evaluation_rules() const noexcept { return evaluation_; }
  const std::vector<ReactivationRule>& reactivation_rules() const noexcept { return reactivation_; }
  const std::vector<RuleName>& initial_state() const noexcept { return initial_; }

  /// Initial activations of the subsystem rooted at `id`.
  const std::vector<RuleName>& initial_state(FormulaId id) const { return sub_initial_.at(index(id)); }

  /// Indices of the table rules guarded by `name`, in firing order.
  const std::vector<std::size_t>& rules_for(const RuleName& name) const {
    static const std::vector<std::size_t> none;
    auto it = by_name_.find(name);
    return it == by_name_.end() ? none : it->second;
  }

  /// Index of the end-of-trace rule for `id`, if its operator has one.
  std::optional<std::size_t> end_rule(FormulaId id) const { return end_rules_.at(index(id)); }

  std::size_t success_rule() const noexcept { return success_rule_; }
  std::size_t failure_rule() const noexcept { return failure_rule_; }

  const ReactivationRule* reactivation_for(FormulaId id, TruthValue trigger) const {
    auto it = by_trigger_.find({index(id), trigger.mode()});
    return it == by_trigger_.end() ? nullptr : &reactivation_[it->second];
  }

  /// Copy with one evaluation rule's head value replaced. Used to check that
  /// the differential harness notices a corrupted table.
  RuleSystem with_head(std::size_t rule, TruthValue value) const {
    RuleSystem copy = *this;
    copy.evaluation_.at(rule).head_value = value;
    return copy;
  }

private:
  friend RuleSystem compile(const Formula& f);

  explicit RuleSystem(const Formula& f) : formula_(f), index_(f) {}

  Formula formula_;
  SubformulaIndex index_;
  std::vector<Subformula> nodes_;
  std::vector<EvaluationRule> evaluation_;
  std::vector<ReactivationRule> reactivation_;
  std::vector<RuleName> initial_;
  std::vector<std::vector<RuleName>> sub_initial_;
  std::map<RuleName, std::vector<std::size_t>> by_name_;
  std::vector<std::optional<std::size_t>> end_rules_;
  std::map<std::pair<std::uint32_t, Mode>, std::size_t> by_trigger_;
  std::size_t success_rule_ = 0;
  std::size_t failure_rule_ = 0;
};

namespace detail {

inline std::vector<RuleName> merge_names(std::vector<RuleName> a, const std::vector<RuleName>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

inline Condition value_condition(Operand operand, FormulaId id, Tri value) {
  Condition c;
  c.kind = Condition::Kind::Value;
  c.operand = operand;
  c.formula = id;
  c.value = value;
  return c;
}

inline Condition observation_condition(bool observed, const std::string& atom) {
  Condition c;
  c.kind = observed ? Condition::Kind::Observed : Condition::Kind::NotObserved;
  c.atom = atom;
  return c;
}

inline EvaluationRule activation_rule(RuleName name, std::vector<Condition> conditions, TruthValue out) {
  EvaluationRule r;
  r.guard = EvaluationRule::Guard::Activation;
  r.name = name;
  r.conditions = std::move(conditions);
  r.head_formula = name.formula;
  r.head_value = out;
  return r;
}

inline std::optional<BinaryOp> binary_op(Op op) noexcept {
  switch (op) {
  case Op::Or:
    return BinaryOp::Or;
  case Op::And:
    return BinaryOp::And;
  case Op::Until:
    return BinaryOp::Until;
  default:
    return std::nullopt;
  }
}

inline std::optional<UnaryOp> unary_op(Op op) noexcept {
  switch (op) {
  case Op::Eventually:
    return UnaryOp::Eventually;
  case Op::Always:
    return UnaryOp::Always;
  case Op::Next:
    return UnaryOp::Next;
  case Op::WeakNext:
    return UnaryOp::WeakNext;
  default:
    return std::nullopt;
  }
}

// Table rules must be mutually exclusive and exhaustive for every operand
// combination, otherwise a cell could fire zero or two rules.
inline void check_exclusive(std::span<const BinaryCell> cells) {
  for (Tri l : all_tri)
    for (Tri r : all_tri) {
      int hits = 0;
      for (const BinaryCell& c : cells)
        hits += matches(c.left, l) && matches(c.right, r);
      if (hits != 1)
        throw internal_error("evaluation table cells overlap or leave a gap");
    }
}

inline void check_exclusive(std::span<const UnaryCell> cells) {
  for (Tri s : all_tri) {
    int hits = 0;
    for (const UnaryCell& c : cells)
      hits += matches(c.sub, s);
    if (hits != 1)
      throw internal_error("evaluation table cells overlap or leave a gap");
  }
}

} // namespace detail

/// Compiles an NNF formula into a rule system. Rules are emitted per distinct
/// subformula in post-order, so operand rules always precede their users.
inline RuleSystem compile(const Formula& f) {
  if (!f.is_nnf())
    throw formula_error("formula is not in negation normal form: " + format_formula(f));

  RuleSystem sys(f);
  const SubformulaIndex& idx = sys.index_;
  const std::size_t n = idx.size();
  sys.nodes_.resize(n);
  sys.sub_initial_.resize(n);
  sys.end_rules_.assign(n, std::nullopt);

  for (std::uint32_t i = 0; i < n; ++i) {
    const auto id = static_cast<FormulaId>(i);
    const Formula& phi = idx.at(id);
    Subformula& node = sys.nodes_[i];
    node.op = phi.op();
    std::vector<RuleName>& init = sys.sub_initial_[i];

    switch (phi.op()) {
    case Op::True: {
      const RuleName name{id, Mode::Plain};
      sys.evaluation_.push_back(detail::activation_rule(name, {}, TruthValue::T()));
      init = {name};
      break;
    }
    case Op::Atom:
    case Op::NegAtom: {
      node.atom = phi.name();
      const RuleName name{id, Mode::Plain};
      const bool positive = phi.op() == Op::Atom;
      sys.evaluation_.push_back(detail::activation_rule(
          name, {detail::observation_condition(true, node.atom)}, TruthValue::of(positive)));
      sys.evaluation_.push_back(detail::activation_rule(
          name, {detail::observation_condition(false, node.atom)}, TruthValue::of(!positive)));
      init = {name};
      break;
    }
    case Op::Or:
    case Op::And:
    case Op::Until: {
      const BinaryOp op = *detail::binary_op(phi.op());
      node.left = idx.id_of(phi.left());
      node.right = idx.id_of(phi.right());
      for (Mode mode : binary_modes(op)) {
        const auto cells = binary_table(op, mode);
        detail::check_exclusive(cells);
        for (const BinaryCell& cell : cells) {
          std::vector<Condition> conds;
          if (cell.left)
            conds.push_back(detail::value_condition(Operand::Left, node.left, *cell.left));
          if (cell.right)
            conds.push_back(detail::value_condition(Operand::Right, node.right, *cell.right));
          sys.evaluation_.push_back(detail::activation_rule({id, mode}, std::move(conds), cell.out));
        }
      }
      const std::vector<RuleName> operands =
          detail::merge_names(sys.sub_initial_[index(node.left)], sys.sub_initial_[index(node.right)]);
      const Mode start = op == BinaryOp::Until ? Mode::A : Mode::B;
      init = detail::merge_names(operands, {{id, start}});
      for (Mode mode : binary_modes(op)) {
        ReactivationRule r;
        r.trigger_formula = id;
        r.trigger_value = TruthValue::undecided(mode);
        r.continuation = {id, mode};
        if (op == BinaryOp::Until)
          r.respawn = operands;
        sys.reactivation_.push_back(std::move(r));
      }
      break;
    }
    case Op::Eventually:
    case Op::Always:
    case Op::Next:
    case Op::WeakNext: {
      const UnaryOp op = *detail::unary_op(phi.op());
      node.left = idx.id_of(phi.sub());
      const bool is_next = op == UnaryOp::Next || op == UnaryOp::WeakNext;
      auto emit_table = [&](Mode mode) {
        const auto cells = unary_table(op, mode);
        detail::check_exclusive(cells);
        for (const UnaryCell& cell : cells) {
          std::vector<Condition> conds;
          if (cell.sub)
            conds.push_back(detail::value_condition(Operand::Sub, node.left, *cell.sub));
          sys.evaluation_.push_back(detail::activation_rule({id, mode}, std::move(conds), cell.out));
        }
      };
      emit_table(Mode::Plain);
      {
        EvaluationRule end;
        end.guard = EvaluationRule::Guard::Evaluation;
        end.guard_formula = id;
        end.guard_value = TruthValue::undecided();
        Condition c;
        c.kind = Condition::Kind::End;
        end.conditions = {c};
        end.head_formula = id;
        end.head_value = end_value(op);
        sys.end_rules_[i] = sys.evaluation_.size();
        sys.evaluation_.push_back(std::move(end));
      }
      if (is_next)
        emit_table(Mode::M);

      const std::vector<RuleName>& operand = sys.sub_initial_[index(node.left)];
      ReactivationRule r;
      r.trigger_formula = id;
      r.trigger_value = TruthValue::undecided();
      r.continuation = {id, is_next ? Mode::M : Mode::Plain};
      r.respawn = operand;
      sys.reactivation_.push_back(std::move(r));
      if (is_next) {
        ReactivationRule mirror;
        mirror.trigger_formula = id;
        mirror.trigger_value = TruthValue::undecided(Mode::M);
        mirror.continuation = {id, Mode::M};
        sys.reactivation_.push_back(std::move(mirror));
        init = {{id, Mode::Plain}};
      } else {
        init = detail::merge_names(operand, {{id, Mode::Plain}});
      }
      break;
    }
    case Op::Not:
      throw formula_error("formula is not in negation normal form");
    }
  }

  const FormulaId root = idx.root();
  for (bool success : {true, false}) {
    EvaluationRule r;
    r.guard = EvaluationRule::Guard::Evaluation;
    r.guard_formula = root;
    r.guard_value = TruthValue::of(success);
    r.head_formula = root;
    r.terminal = success ? Terminal::Success : Terminal::Failure;
    (success ? sys.success_rule_ : sys.failure_rule_) = sys.evaluation_.size();
    sys.evaluation_.push_back(std::move(r));
  }

  sys.initial_ = sys.sub_initial_[index(root)];
  for (std::size_t r = 0; r < sys.evaluation_.size(); ++r)
    if (sys.evaluation_[r].guard == EvaluationRule::Guard::Activation)
      sys.by_name_[sys.evaluation_[r].name].push_back(r);
  for (std::size_t r = 0; r < sys.reactivation_.size(); ++r) {
    const ReactivationRule& rr = sys.reactivation_[r];
    sys.by_trigger_[{index(rr.trigger_formula), rr.trigger_value.mode()}] = r;
  }
  return sys;
}

/// Upper bound on the number of evaluation rules: at most 16 per distinct
/// subformula (until: 7 cells in mode A plus 3 each in B, L, R) plus the
/// two terminal rules.
inline std::size_t rule_count_bound(const Formula& f) { return 16 * subformulas(f).size() + 2; }

// ---------------------------------------------------------------------------
// Rendering

inline std::string render(const RuleSystem& sys, FormulaId id) {
  return format_symbolic(sys.subformulas().at(id));
}

/// "R[a∨◇b]B"
inline std::string render(const RuleSystem& sys, const RuleName& name) {
  return "R[" + render(sys, name.formula) + "]" + std::string(to_string(name.mode));
}

/// "[a∨◇b]?R"
inline std::string render(const RuleSystem& sys, FormulaId id, TruthValue v) {
  return "[" + render(sys, id) + "]" + to_string(v);
}

inline std::string render(const RuleSystem& sys, const Condition& c) {
  switch (c.kind) {
  case Condition::Kind::Value:
    return "[" + render(sys, c.formula) + "]" + std::string(to_string(c.value));
  case Condition::Kind::Observed:
    return c.atom + " is observed";
  case Condition::Kind::NotObserved:
    return c.atom + " is not observed";
  case Condition::Kind::End:
    return "[END]";
  }
  return {};
}

inline std::string render(const RuleSystem& sys, const EvaluationRule& r) {
  std::string out = r.guard == EvaluationRule::Guard::Activation
                        ? render(sys, r.name)
                        : render(sys, r.guard_formula, r.guard_value);
  for (const Condition& c : r.conditions)
    out += ", " + render(sys, c);
  out += " → ";
  if (r.terminal)
    out += *r.terminal == Terminal::Success ? "SUCCESS" : "FAILURE";
  else
    out += render(sys, r.head_formula, r.head_value);
  return out;
}

inline std::string render_names(const RuleSystem& sys, const std::vector<RuleName>& names) {
  std::string out;
  for (const RuleName& n : names) {
    if (!out.empty())
      out += ", ";
    out += render(sys, n);
  }
  return out;
}

inline std::string render(const RuleSystem& sys, const ReactivationRule& r) {
  return render(sys, r.trigger_formula, r.trigger_value) + " → " +
         render_names(sys, detail::merge_names(r.respawn, {r.continuation}));
}

/// Rule listing: evaluation rules in firing order, reactivation rules, and
/// the initial state, one item per line under three headings.
inline std::string dump_rules(const RuleSystem& sys) {
  std::string out = "EVALUATION RULES\n";
  for (const EvaluationRule& r : sys.evaluation_rules())
    out += render(sys, r) + "\n";
  out += "REACTIVATION RULES\n";
  for (const ReactivationRule& r : sys.reactivation_rules())
    out += render(sys, r) + "\n";
  out += "INITIAL STATE\n" + render_names(sys, sys.initial_state()) + "\n";
  return out;
}

} // namespace rulerunner
