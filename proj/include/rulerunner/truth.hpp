#pragma once

#include "rulerunner/error.hpp"
#include "rulerunner/formula.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rulerunner {

/// Activation variant of a rule name and annotation of an undecided value.
/// L/R/B: left, right or both operands still matter. A: full until
/// unfolding. M: next operator mirroring its operand.
enum class Mode : std::uint8_t { Plain, L, R, B, A, M };

constexpr std::string_view to_string(Mode m) noexcept {
  switch (m) {
  case Mode::Plain:
    return "";
  case Mode::L:
    return "L";
  case Mode::R:
    return "R";
  case Mode::B:
    return "B";
  case Mode::A:
    return "A";
  case Mode::M:
    return "M";
  }
  return "";
}

/// Operand value as seen by an evaluation-table cell: the mode of an
/// undecided operand is irrelevant there. Declared in table order T, ?, F.
enum class Tri : std::uint8_t { T, U, F };

inline constexpr std::array<Tri, 3> all_tri{Tri::T, Tri::U, Tri::F};

constexpr std::string_view to_string(Tri t) noexcept {
  return t == Tri::T ? "T" : t == Tri::F ? "F" : "?";
}

class TruthValue {
public:
  static constexpr TruthValue T() noexcept { return {Tri::T, Mode::Plain}; }
  static constexpr TruthValue F() noexcept { return {Tri::F, Mode::Plain}; }
  static constexpr TruthValue undecided(Mode m = Mode::Plain) noexcept { return {Tri::U, m}; }

  static constexpr TruthValue of(bool b) noexcept { return b ? T() : F(); }

  constexpr bool is_true() const noexcept { return tri_ == Tri::T; }
  constexpr bool is_false() const noexcept { return tri_ == Tri::F; }
  constexpr bool is_undecided() const noexcept { return tri_ == Tri::U; }
  constexpr bool is_decided() const noexcept { return tri_ != Tri::U; }

  constexpr Tri tri() const noexcept { return tri_; }
  constexpr Mode mode() const noexcept { return mode_; }

  friend constexpr bool operator==(TruthValue, TruthValue) noexcept = default;

private:
  constexpr TruthValue(Tri t, Mode m) noexcept : tri_(t), mode_(m) {}

  Tri tri_;
  Mode mode_;
};

/// "T", "F", "?", "?L", "?R", "?B", "?A", "?M".
inline std::string to_string(TruthValue v) {
  std::string s(to_string(v.tri()));
  if (v.is_undecided())
    s += to_string(v.mode());
  return s;
}

enum class BinaryOp : std::uint8_t { Or, And, Until };
enum class UnaryOp : std::uint8_t { Eventually, Always, Next, WeakNext };

constexpr Op to_op(BinaryOp op) noexcept {
  return op == BinaryOp::Or ? Op::Or : op == BinaryOp::And ? Op::And : Op::Until;
}

constexpr Op to_op(UnaryOp op) noexcept {
  switch (op) {
  case UnaryOp::Eventually:
    return Op::Eventually;
  case UnaryOp::Always:
    return Op::Always;
  case UnaryOp::Next:
    return Op::Next;
  case UnaryOp::WeakNext:
    return Op::WeakNext;
  }
  return Op::Next;
}

/// One cell of an evaluation table. An absent operand condition matches any
/// value (a wildcard, or an operand the mode does not look at).
struct BinaryCell {
  std::optional<Tri> left;
  std::optional<Tri> right;
  TruthValue out;
};

struct UnaryCell {
  std::optional<Tri> sub;
  TruthValue out;
};

namespace tables {

using TV = TruthValue;
inline constexpr auto T = Tri::T;
inline constexpr auto U = Tri::U;
inline constexpr auto F = Tri::F;
inline constexpr std::optional<Tri> any = std::nullopt;

inline constexpr std::array<BinaryCell, 9> or_both{{
    {T, T, TV::T()}, {T, U, TV::T()}, {T, F, TV::T()},
    {U, T, TV::T()}, {U, U, TV::undecided(Mode::B)}, {U, F, TV::undecided(Mode::L)},
    {F, T, TV::T()}, {F, U, TV::undecided(Mode::R)}, {F, F, TV::F()},
}};

inline constexpr std::array<BinaryCell, 9> and_both{{
    {T, T, TV::T()}, {T, U, TV::undecided(Mode::R)}, {T, F, TV::F()},
    {U, T, TV::undecided(Mode::L)}, {U, U, TV::undecided(Mode::B)}, {U, F, TV::F()},
    {F, T, TV::F()}, {F, U, TV::F()}, {F, F, TV::F()},
}};

inline constexpr std::array<BinaryCell, 3> left_only{{
    {T, any, TV::T()}, {U, any, TV::undecided(Mode::L)}, {F, any, TV::F()},
}};

inline constexpr std::array<BinaryCell, 3> right_only{{
    {any, T, TV::T()}, {any, U, TV::undecided(Mode::R)}, {any, F, TV::F()},
}};

// Until operands are aggregates over the instance's witness ledger (see
// monitor.hpp): left is "the left chain can still reach a future witness",
// right is "some admissible right-operand witness holds".
inline constexpr std::array<BinaryCell, 7> until_all{{
    {any, T, TV::T()},
    {T, U, TV::undecided(Mode::A)}, {T, F, TV::undecided(Mode::A)},
    {U, U, TV::undecided(Mode::A)}, {U, F, TV::undecided(Mode::B)},
    {F, U, TV::undecided(Mode::R)}, {F, F, TV::F()},
}};

// In mode B the single operand is the residual obligation of the whole until.
inline constexpr std::array<BinaryCell, 3> until_both{{
    {T, any, TV::T()}, {U, any, TV::undecided(Mode::B)}, {F, any, TV::F()},
}};

inline constexpr std::array<UnaryCell, 3> eventually_plain{{
    {T, TV::T()}, {U, TV::undecided()}, {F, TV::undecided()},
}};

inline constexpr std::array<UnaryCell, 3> always_plain{{
    {T, TV::undecided()}, {U, TV::undecided()}, {F, TV::F()},
}};

inline constexpr std::array<UnaryCell, 1> next_plain{{
    {any, TV::undecided()},
}};

inline constexpr std::array<UnaryCell, 3> next_mirror{{
    {T, TV::T()}, {U, TV::undecided(Mode::M)}, {F, TV::F()},
}};

} // namespace tables

/// Modes in which a binary operator has evaluation rules, in listing order.
inline std::span<const Mode> binary_modes(BinaryOp op) noexcept {
  static constexpr std::array<Mode, 3> boolean{Mode::B, Mode::L, Mode::R};
  static constexpr std::array<Mode, 4> until{Mode::A, Mode::B, Mode::L, Mode::R};
  if (op == BinaryOp::Until)
    return until;
  return boolean;
}

inline std::span<const Mode> unary_modes(UnaryOp op) noexcept {
  static constexpr std::array<Mode, 1> plain{Mode::Plain};
  static constexpr std::array<Mode, 2> next{Mode::Plain, Mode::M};
  if (op == UnaryOp::Next || op == UnaryOp::WeakNext)
    return next;
  return plain;
}

inline bool is_legal(BinaryOp op, Mode mode) noexcept {
  for (Mode m : binary_modes(op))
    if (m == mode)
      return true;
  return false;
}

inline bool is_legal(UnaryOp op, Mode mode) noexcept {
  for (Mode m : unary_modes(op))
    if (m == mode)
      return true;
  return false;
}

inline std::span<const BinaryCell> binary_table(BinaryOp op, Mode mode) {
  if (!is_legal(op, mode))
    throw formula_error("no evaluation table for this operator in mode " +
                        std::string(mode == Mode::Plain ? "plain" : to_string(mode)));
  if (mode == Mode::L)
    return tables::left_only;
  if (mode == Mode::R)
    return tables::right_only;
  switch (op) {
  case BinaryOp::Or:
    return tables::or_both;
  case BinaryOp::And:
    return tables::and_both;
  case BinaryOp::Until:
    return mode == Mode::A ? std::span<const BinaryCell>(tables::until_all)
                           : std::span<const BinaryCell>(tables::until_both);
  }
  return {};
}

inline std::span<const UnaryCell> unary_table(UnaryOp op, Mode mode) {
  if (!is_legal(op, mode))
    throw formula_error("no evaluation table for this operator in mode " +
                        std::string(mode == Mode::Plain ? "plain" : to_string(mode)));
  switch (op) {
  case UnaryOp::Eventually:
    return tables::eventually_plain;
  case UnaryOp::Always:
    return tables::always_plain;
  case UnaryOp::Next:
  case UnaryOp::WeakNext:
    return mode == Mode::M ? std::span<const UnaryCell>(tables::next_mirror)
                           : std::span<const UnaryCell>(tables::next_plain);
  }
  return {};
}

/// Value forced on a plain undecided evaluation in the last cell.
constexpr TruthValue end_value(UnaryOp op) noexcept {
  return op == UnaryOp::Eventually || op == UnaryOp::Next ? TruthValue::F() : TruthValue::T();
}

constexpr bool matches(const std::optional<Tri>& condition, Tri value) noexcept {
  return !condition || *condition == value;
}

inline TruthValue eval_binary(BinaryOp op, Mode mode, TruthValue left, TruthValue right) {
  for (const BinaryCell& cell : binary_table(op, mode))
    if (matches(cell.left, left.tri()) && matches(cell.right, right.tri()))
      return cell.out;
  throw internal_error("evaluation table is not total");
}

inline TruthValue eval_unary(UnaryOp op, Mode mode, TruthValue sub, bool at_end) {
  for (const UnaryCell& cell : unary_table(op, mode)) {
    if (!matches(cell.sub, sub.tri()))
      continue;
    if (at_end && cell.out == TruthValue::undecided(Mode::Plain))
      return end_value(op);
    return cell.out;
  }
  throw internal_error("evaluation table is not total");
}

} // namespace rulerunner
