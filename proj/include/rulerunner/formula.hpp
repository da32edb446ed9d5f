#pragma once

#include "rulerunner/error.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rulerunner {

enum class Op : std::uint8_t {
  True,
  Atom,
  NegAtom,
  Not, // general negation; only present before to_nnf()
  Or,
  And,
  Until,
  Next,
  WeakNext,
  Eventually,
  Always,
};

constexpr bool is_binary(Op op) noexcept {
  return op == Op::Or || op == Op::And || op == Op::Until;
}

constexpr bool is_unary(Op op) noexcept {
  return op == Op::Not || op == Op::Next || op == Op::WeakNext ||
         op == Op::Eventually || op == Op::Always;
}

constexpr bool is_leaf(Op op) noexcept {
  return op == Op::True || op == Op::Atom || op == Op::NegAtom;
}

/// True iff `name` matches [a-z][a-z0-9_]* and is not a keyword.
inline bool is_atom_name(std::string_view name) noexcept {
  if (name.empty() || name[0] < 'a' || name[0] > 'z')
    return false;
  for (char c : name)
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'))
      return false;
  return name != "true";
}

/// Immutable LTL syntax tree. Copies share structure; equality and ordering
/// are structural.
class Formula {
  struct Node {
    Op op;
    std::string name;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

public:
  Formula() : Formula(make(Op::True, {}, nullptr, nullptr)) {}

  static Formula truth() { return {}; }

  static Formula atom(std::string name) {
    check_name(name);
    return make(Op::Atom, std::move(name), nullptr, nullptr);
  }

  static Formula neg_atom(std::string name) {
    check_name(name);
    return make(Op::NegAtom, std::move(name), nullptr, nullptr);
  }

  static Formula negation(const Formula& f) { return unary(Op::Not, f); }
  static Formula disjunction(const Formula& l, const Formula& r) { return binary(Op::Or, l, r); }
  static Formula conjunction(const Formula& l, const Formula& r) { return binary(Op::And, l, r); }
  static Formula until(const Formula& l, const Formula& r) { return binary(Op::Until, l, r); }
  static Formula next(const Formula& f) { return unary(Op::Next, f); }
  static Formula weak_next(const Formula& f) { return unary(Op::WeakNext, f); }
  static Formula eventually(const Formula& f) { return unary(Op::Eventually, f); }
  static Formula always(const Formula& f) { return unary(Op::Always, f); }

  static Formula unary(Op op, const Formula& f) {
    if (!is_unary(op))
      throw formula_error("not a unary operator");
    return make(op, {}, f.node_, nullptr);
  }

  static Formula binary(Op op, const Formula& l, const Formula& r) {
    if (!is_binary(op))
      throw formula_error("not a binary operator");
    return make(op, {}, l.node_, r.node_);
  }

  Op op() const noexcept { return node_->op; }

  /// Atom name; empty for non-literals.
  const std::string& name() const noexcept { return node_->name; }

  Formula left() const { return child(node_->lhs); }
  Formula right() const { return child(node_->rhs); }
  Formula sub() const { return child(node_->lhs); }

  bool is_nnf() const noexcept { return is_nnf(*node_); }

  std::size_t size() const noexcept { return size(*node_); }
  std::size_t depth() const noexcept { return depth(*node_); }

  /// Atom names in lexicographic order.
  std::set<std::string> atoms() const {
    std::set<std::string> out;
    collect_atoms(*node_, out);
    return out;
  }

  friend bool operator==(const Formula& a, const Formula& b) noexcept {
    return compare(a.node_.get(), b.node_.get()) == 0;
  }

  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
    return compare(a.node_.get(), b.node_.get()) <=> 0;
  }

private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Formula make(Op op, std::string name, std::shared_ptr<const Node> l,
                      std::shared_ptr<const Node> r) {
    return Formula(std::make_shared<const Node>(Node{op, std::move(name), std::move(l), std::move(r)}));
  }

  static Formula child(const std::shared_ptr<const Node>& n) {
    if (!n)
      throw formula_error("operator has no such operand");
    return Formula(n);
  }

  static void check_name(const std::string& name) {
    if (!is_atom_name(name))
      throw formula_error("invalid atom name '" + name + "'");
  }

  static int compare(const Node* a, const Node* b) noexcept {
    if (a == b)
      return 0;
    if (a->op != b->op)
      return a->op < b->op ? -1 : 1;
    if (int c = a->name.compare(b->name); c != 0)
      return c < 0 ? -1 : 1;
    if (a->lhs) {
      if (int c = compare(a->lhs.get(), b->lhs.get()); c != 0)
        return c;
    }
    if (a->rhs)
      return compare(a->rhs.get(), b->rhs.get());
    return 0;
  }

  static bool is_nnf(const Node& n) noexcept {
    if (n.op == Op::Not)
      return false;
    return (!n.lhs || is_nnf(*n.lhs)) && (!n.rhs || is_nnf(*n.rhs));
  }

  static std::size_t size(const Node& n) noexcept {
    return 1 + (n.lhs ? size(*n.lhs) : 0) + (n.rhs ? size(*n.rhs) : 0);
  }

  static std::size_t depth(const Node& n) noexcept {
    std::size_t d = 0;
    if (n.lhs)
      d = depth(*n.lhs) + 1;
    if (n.rhs)
      d = std::max(d, depth(*n.rhs) + 1);
    return d;
  }

  static void collect_atoms(const Node& n, std::set<std::string>& out) {
    if (n.op == Op::Atom || n.op == Op::NegAtom)
      out.insert(n.name);
    if (n.lhs)
      collect_atoms(*n.lhs, out);
    if (n.rhs)
      collect_atoms(*n.rhs, out);
  }

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Negation normal form

namespace detail {

inline Formula nnf(const Formula& f, bool negate) {
  switch (f.op()) {
  case Op::True:
    if (negate)
      throw formula_error("!true has no negation-normal form: the grammar has no false literal");
    return f;
  case Op::Atom:
    return negate ? Formula::neg_atom(f.name()) : f;
  case Op::NegAtom:
    return negate ? Formula::atom(f.name()) : f;
  case Op::Not:
    return nnf(f.sub(), !negate);
  case Op::Or:
  case Op::And: {
    Op op = f.op();
    if (negate)
      op = op == Op::Or ? Op::And : Op::Or;
    return Formula::binary(op, nnf(f.left(), negate), nnf(f.right(), negate));
  }
  case Op::Until:
    if (negate)
      throw formula_error("negated until cannot be normalized: the grammar has no release operator");
    return Formula::until(nnf(f.left(), false), nnf(f.right(), false));
  case Op::Next:
    return negate ? Formula::weak_next(nnf(f.sub(), true)) : Formula::next(nnf(f.sub(), false));
  case Op::WeakNext:
    return negate ? Formula::next(nnf(f.sub(), true)) : Formula::weak_next(nnf(f.sub(), false));
  case Op::Eventually:
    return negate ? Formula::always(nnf(f.sub(), true)) : Formula::eventually(nnf(f.sub(), false));
  case Op::Always:
    return negate ? Formula::eventually(nnf(f.sub(), true)) : Formula::always(nnf(f.sub(), false));
  }
  throw formula_error("unknown operator");
}

} // namespace detail

/// Pushes negation down to atoms. Throws formula_error on !true and on a
/// negated until.
inline Formula to_nnf(const Formula& f) { return detail::nnf(f, false); }

// ---------------------------------------------------------------------------
// Printing

/// Binding strength; larger binds tighter.
constexpr int precedence(Op op) noexcept {
  switch (op) {
  case Op::Or:
    return 1;
  case Op::And:
    return 2;
  case Op::Until:
    return 3;
  default:
    return 4;
  }
}

struct Notation {
  std::string_view truth, negation, disjunction, conjunction, until;
  std::string_view next, weak_next, eventually, always;
  bool unary_space; // "F b" vs "◇b"
};

/// ASCII concrete syntax accepted by parse_formula().
inline constexpr Notation ascii_notation{"true", "!", " | ", " & ", " U ", "X", "W", "F", "G", true};

/// Symbolic rendering used in rule listings and explanations: a∨◇b, Xb.
inline constexpr Notation symbolic_notation{"true", "!", "∨", "∧", "U", "X", "W", "◇", "□", false};

namespace detail {

inline void print(const Formula& f, const Notation& n, std::string& out) {
  auto operand = [&](const Formula& g, bool parens) {
    if (parens)
      out += '(';
    print(g, n, out);
    if (parens)
      out += ')';
  };
  switch (f.op()) {
  case Op::True:
    out += n.truth;
    return;
  case Op::Atom:
    out += f.name();
    return;
  case Op::NegAtom:
    out += n.negation;
    out += f.name();
    return;
  case Op::Not:
  case Op::Next:
  case Op::WeakNext:
  case Op::Eventually:
  case Op::Always: {
    const Op op = f.op();
    out += op == Op::Not          ? n.negation
           : op == Op::Next       ? n.next
           : op == Op::WeakNext   ? n.weak_next
           : op == Op::Eventually ? n.eventually
                                  : n.always;
    const Formula s = f.sub();
    const bool parens = precedence(s.op()) < precedence(op);
    if (op != Op::Not && n.unary_space && !parens)
      out += ' ';
    operand(s, parens);
    return;
  }
  case Op::Or:
  case Op::And:
  case Op::Until: {
    const Op op = f.op();
    const int p = precedence(op);
    const Formula l = f.left();
    const Formula r = f.right();
    // & and | associate left, U associates right.
    const bool left_parens = op == Op::Until ? precedence(l.op()) <= p : precedence(l.op()) < p;
    const bool right_parens = op == Op::Until ? precedence(r.op()) < p : precedence(r.op()) <= p;
    operand(l, left_parens);
    out += op == Op::Or ? n.disjunction : op == Op::And ? n.conjunction : n.until;
    operand(r, right_parens);
    return;
  }
  }
}

} // namespace detail

inline std::string format_formula(const Formula& f, const Notation& notation = ascii_notation) {
  std::string out;
  detail::print(f, notation, out);
  return out;
}

inline std::string format_symbolic(const Formula& f) { return format_formula(f, symbolic_notation); }

// ---------------------------------------------------------------------------
// Subformula index

enum class FormulaId : std::uint32_t {};

constexpr std::uint32_t index(FormulaId id) noexcept { return static_cast<std::uint32_t>(id); }

/// Distinct subformulae in post-order: children precede parents and the root
/// comes last. Structurally equal subformulae share one id.
class SubformulaIndex {
public:
  explicit SubformulaIndex(const Formula& root) { visit(root); }

  std::size_t size() const noexcept { return formulas_.size(); }
  const Formula& at(FormulaId id) const { return formulas_.at(index(id)); }
  FormulaId root() const noexcept { return static_cast<FormulaId>(formulas_.size() - 1); }

  FormulaId id_of(const Formula& f) const {
    auto it = ids_.find(f);
    if (it == ids_.end())
      throw formula_error("'" + format_formula(f) + "' is not a subformula");
    return it->second;
  }

  bool contains(const Formula& f) const { return ids_.contains(f); }

  auto begin() const noexcept { return formulas_.begin(); }
  auto end() const noexcept { return formulas_.end(); }

private:
  FormulaId visit(const Formula& f) {
    if (auto it = ids_.find(f); it != ids_.end())
      return it->second;
    if (is_binary(f.op())) {
      visit(f.left());
      visit(f.right());
    } else if (is_unary(f.op())) {
      visit(f.sub());
    }
    // A child may have inserted f already only if f occurs inside itself,
    // which a finite tree rules out.
    const auto id = static_cast<FormulaId>(formulas_.size());
    formulas_.push_back(f);
    ids_.emplace(f, id);
    return id;
  }

  std::vector<Formula> formulas_;
  std::map<Formula, FormulaId> ids_;
};

inline SubformulaIndex subformulas(const Formula& f) { return SubformulaIndex(f); }

} // namespace rulerunner
