#pragma once

// Exhaustive checks over the evaluation tables, shared by the unit and
// acceptance tests.

#include "rulerunner/truth.hpp"

#include <array>
#include <string>
#include <vector>

namespace rrtest {

using namespace rulerunner;

inline constexpr std::array<BinaryOp, 3> all_binary{BinaryOp::Or, BinaryOp::And, BinaryOp::Until};
inline constexpr std::array<UnaryOp, 4> all_unary{UnaryOp::Eventually, UnaryOp::Always, UnaryOp::Next,
                                                  UnaryOp::WeakNext};
inline constexpr std::array<Mode, 6> all_modes{Mode::Plain, Mode::L, Mode::R, Mode::B, Mode::A, Mode::M};

struct TotalityResult {
  std::size_t combinations = 0;
  std::vector<std::string> problems;
};

inline std::string name(BinaryOp op) { return op == BinaryOp::Or ? "or" : op == BinaryOp::And ? "and" : "until"; }
inline std::string name(UnaryOp op) {
  switch (op) {
  case UnaryOp::Eventually:
    return "eventually";
  case UnaryOp::Always:
    return "always";
  case UnaryOp::Next:
    return "next";
  case UnaryOp::WeakNext:
    return "weak-next";
  }
  return {};
}

inline std::string tri_name(Tri t) { return t == Tri::T ? "T" : t == Tri::F ? "F" : "?"; }

/// Every legal (op, mode), every operand value and both end flags must be
/// matched by exactly one table cell.
inline TotalityResult check_totality() {
  TotalityResult r;
  for (BinaryOp op : all_binary)
    for (Mode m : binary_modes(op)) {
      const auto table = binary_table(op, m);
      for (Tri l : all_tri)
        for (Tri rt : all_tri)
          for (bool end : {false, true}) {
            (void)end; // binary tables do not read END
            ++r.combinations;
            int hits = 0;
            for (const BinaryCell& c : table)
              hits += matches(c.left, l) && matches(c.right, rt);
            if (hits != 1)
              r.problems.push_back(std::string(name(op)) + "/" + std::string(to_string(m)) + " (" + std::string(tri_name(l)) + "," + std::string(tri_name(rt)) +
                                   "): " + std::to_string(hits) + " cells");
          }
    }
  for (UnaryOp op : all_unary)
    for (Mode m : unary_modes(op)) {
      const auto table = unary_table(op, m);
      for (Tri s : all_tri)
        for (bool end : {false, true}) {
          (void)end;
          ++r.combinations;
          int hits = 0;
          for (const UnaryCell& c : table)
            hits += matches(c.sub, s);
          if (hits != 1)
            r.problems.push_back(std::string(name(op)) + "/" + std::string(to_string(m)) + " (" + std::string(tri_name(s)) + "): " + std::to_string(hits) +
                                 " cells");
        }
    }
  return r;
}

inline Tri swap_tf(Tri t) { return t == Tri::T ? Tri::F : t == Tri::F ? Tri::T : Tri::U; }

inline TruthValue dual(TruthValue v) {
  if (v.is_decided())
    return TruthValue::of(!v.is_true());
  const Mode m = v.mode() == Mode::L ? Mode::R : v.mode() == Mode::R ? Mode::L : v.mode();
  return TruthValue::undecided(m);
}

inline TruthValue tv(Tri t) { return t == Tri::U ? TruthValue::undecided() : TruthValue::of(t == Tri::T); }

/// Or-B under T↔F and L↔R, where L↔R exchanges the operand positions along
/// with the mode labels, compared cell by cell with And-B.
inline bool or_and_duality() {
  for (Tri l : all_tri)
    for (Tri r : all_tri) {
      const TruthValue got = dual(eval_binary(BinaryOp::Or, Mode::B, tv(swap_tf(r)), tv(swap_tf(l))));
      if (!(got == eval_binary(BinaryOp::And, Mode::B, tv(l), tv(r))))
        return false;
    }
  return true;
}

} // namespace rrtest
