#pragma once

// Brute-force finite-trace LTL semantics. Deliberately shares nothing with
// truth.hpp or monitor.hpp: it is the reference the engine is checked
// against.

#include "rulerunner/error.hpp"
#include "rulerunner/formula.hpp"
#include "rulerunner/trace.hpp"

#include <cstddef>
#include <memory>
#include <string>

namespace rulerunner {

namespace detail {

inline bool fltl(const Formula& f, const Trace& u, std::size_t i, bool allow_negation) {
  const std::size_t n = u.size();
  switch (f.op()) {
  case Op::True:
    return true;
  case Op::Atom:
    return u[i].contains(f.name());
  case Op::NegAtom:
    return !u[i].contains(f.name());
  case Op::Not:
    if (!allow_negation)
      throw formula_error("oracle_eval expects a negation-normal formula");
    return !fltl(f.sub(), u, i, true);
  case Op::Or:
    return fltl(f.left(), u, i, allow_negation) || fltl(f.right(), u, i, allow_negation);
  case Op::And:
    return fltl(f.left(), u, i, allow_negation) && fltl(f.right(), u, i, allow_negation);
  case Op::Next:
    return i + 1 < n && fltl(f.sub(), u, i + 1, allow_negation);
  case Op::WeakNext:
    return i + 1 >= n || fltl(f.sub(), u, i + 1, allow_negation);
  case Op::Eventually:
    for (std::size_t j = i; j < n; ++j)
      if (fltl(f.sub(), u, j, allow_negation))
        return true;
    return false;
  case Op::Always:
    for (std::size_t j = i; j < n; ++j)
      if (!fltl(f.sub(), u, j, allow_negation))
        return false;
    return true;
  case Op::Until:
    for (std::size_t j = i; j < n; ++j) {
      if (fltl(f.right(), u, j, allow_negation))
        return true;
      if (!fltl(f.left(), u, j, allow_negation))
        return false;
    }
    return false;
  }
  return false;
}

} // namespace detail

/// [u, i ⊨ f] under finite-trace semantics: strong next fails and weak next
/// holds at the last position.
inline bool oracle_eval(const Formula& f, const Trace& u, std::size_t i) {
  if (i >= u.size())
    throw usage_error("position " + std::to_string(i) + " outside a trace of " + std::to_string(u.size()) +
                      " cells");
  return detail::fltl(f, u, i, false);
}

/// Like oracle_eval() but also accepts general negation, read as the
/// complement of the negated subformula.
inline bool oracle_eval_with_negation(const Formula& f, const Trace& u, std::size_t i) {
  if (i >= u.size())
    throw usage_error("position outside the trace");
  return detail::fltl(f, u, i, true);
}

// ---------------------------------------------------------------------------
// Judgements

/// A judgement expression: leaves [u, i ⊨ φ], constants ⊤/⊥, and ⊔/⊓.
class Judgement {
public:
  enum class Kind { Leaf, Top, Bottom, Join, Meet };

  static Judgement leaf(const Formula& f, std::size_t index) { return Judgement(Kind::Leaf, f, index, {}, {}); }
  static Judgement top() { return Judgement(Kind::Top, {}, 0, {}, {}); }
  static Judgement bottom() { return Judgement(Kind::Bottom, {}, 0, {}, {}); }
  static Judgement join(const Judgement& a, const Judgement& b) { return Judgement(Kind::Join, {}, 0, a.node_, b.node_); }
  static Judgement meet(const Judgement& a, const Judgement& b) { return Judgement(Kind::Meet, {}, 0, a.node_, b.node_); }

  Kind kind() const noexcept { return node_->kind; }
  const Formula& formula() const noexcept { return node_->formula; }
  std::size_t index() const noexcept { return node_->index; }
  Judgement lhs() const { return Judgement(node_->lhs); }
  Judgement rhs() const { return Judgement(node_->rhs); }

private:
  struct Node {
    Kind kind;
    Formula formula;
    std::size_t index;
    std::shared_ptr<const Node> lhs, rhs;
  };

  Judgement(Kind k, Formula f, std::size_t i, std::shared_ptr<const Node> l, std::shared_ptr<const Node> r)
      : node_(std::make_shared<const Node>(Node{k, std::move(f), i, std::move(l), std::move(r)})) {}
  explicit Judgement(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

inline bool eval_judgement(const Judgement& j, const Trace& u) {
  switch (j.kind()) {
  case Judgement::Kind::Leaf:
    return oracle_eval(j.formula(), u, j.index());
  case Judgement::Kind::Top:
    return true;
  case Judgement::Kind::Bottom:
    return false;
  case Judgement::Kind::Join:
    return eval_judgement(j.lhs(), u) || eval_judgement(j.rhs(), u);
  case Judgement::Kind::Meet:
    return eval_judgement(j.lhs(), u) && eval_judgement(j.rhs(), u);
  }
  return false;
}

/// Leaf formulas use ¬ for negated atoms and X̄ for weak next.
inline constexpr Notation judgement_notation{"true", "¬", "∨", "∧", "U", "X", "X̄", "◇", "□", false};

inline std::string render(const Judgement& j) {
  switch (j.kind()) {
  case Judgement::Kind::Leaf:
    return "[u," + std::to_string(j.index()) + " ⊨ " + format_formula(j.formula(), judgement_notation) + "]_F";
  case Judgement::Kind::Top:
    return "⊤";
  case Judgement::Kind::Bottom:
    return "⊥";
  case Judgement::Kind::Join:
  case Judgement::Kind::Meet: {
    auto side = [&](const Judgement& s) {
      const bool compound = s.kind() == Judgement::Kind::Join || s.kind() == Judgement::Kind::Meet;
      return compound && s.kind() != j.kind() ? "(" + render(s) + ")" : render(s);
    };
    return side(j.lhs()) + (j.kind() == Judgement::Kind::Join ? " ⊔ " : " ⊓ ") + side(j.rhs());
  }
  }
  return {};
}

} // namespace rulerunner
