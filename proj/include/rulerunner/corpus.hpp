#pragma once

#include "rulerunner/formula.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace rulerunner {

/// true, then a, !a for each atom in the given order.
inline std::vector<Formula> leaf_formulas(const std::vector<std::string>& atoms) {
  std::vector<Formula> out{Formula::truth()};
  for (const std::string& a : atoms) {
    out.push_back(Formula::atom(a));
    out.push_back(Formula::neg_atom(a));
  }
  return out;
}

inline constexpr Op unary_ops[] = {Op::Next, Op::WeakNext, Op::Eventually, Op::Always};
inline constexpr Op binary_ops[] = {Op::Or, Op::And, Op::Until};

/// Every NNF formula of depth <= max_depth over `atoms`: leaves, then each
/// unary operator over the previous level, then each binary operator over
/// all ordered pairs. Deterministic order, no duplicates.
///
/// The result grows doubly exponentially; depth 2 over two atoms already has
/// 30405 members.
inline std::vector<Formula> enumerate_formulas(int max_depth, const std::vector<std::string>& atoms) {
  std::vector<Formula> level = leaf_formulas(atoms);
  for (int d = 1; d <= max_depth; ++d) {
    std::vector<Formula> next = leaf_formulas(atoms);
    for (Op op : unary_ops)
      for (const Formula& f : level)
        next.push_back(Formula::unary(op, f));
    for (Op op : binary_ops)
      for (const Formula& l : level)
        for (const Formula& r : level)
          next.push_back(Formula::binary(op, l, r));
    level = std::move(next);
  }
  std::set<Formula> seen;
  std::vector<Formula> out;
  out.reserve(level.size());
  for (Formula& f : level)
    if (seen.insert(f).second)
      out.push_back(std::move(f));
  return out;
}

namespace detail {

inline Formula random_formula(int depth, const std::vector<Formula>& leaves, std::mt19937_64& rng) {
  // Stop early a quarter of the time so shallow shapes stay represented.
  if (depth == 0 || rng() % 4 == 0)
    return leaves[rng() % leaves.size()];
  const auto pick = rng() % 7;
  if (pick < 4)
    return Formula::unary(unary_ops[pick], random_formula(depth - 1, leaves, rng));
  Formula l = random_formula(depth - 1, leaves, rng);
  Formula r = random_formula(depth - 1, leaves, rng);
  return Formula::binary(binary_ops[pick - 4], l, r);
}

inline Formula random_core_formula(int depth, const std::vector<Formula>& leaves, std::mt19937_64& rng) {
  if (depth == 0 || rng() % 4 == 0)
    return leaves[rng() % leaves.size()];
  const auto pick = rng() % 5;
  if (pick < 2)
    return Formula::unary(pick == 0 ? Op::Next : Op::WeakNext, random_core_formula(depth - 1, leaves, rng));
  Formula l = random_core_formula(depth - 1, leaves, rng);
  Formula r = random_core_formula(depth - 1, leaves, rng);
  return Formula::binary(binary_ops[pick - 2], l, r);
}

} // namespace detail

/// Random NNF formula of depth <= max_depth, fixed by `seed`.
inline Formula random_formula(int max_depth, const std::vector<std::string>& atoms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return detail::random_formula(max_depth, leaf_formulas(atoms), rng);
}

/// Same, drawing from a caller-owned generator.
inline Formula random_formula(int max_depth, const std::vector<std::string>& atoms, std::mt19937_64& rng) {
  return detail::random_formula(max_depth, leaf_formulas(atoms), rng);
}

/// Random formula without ◇ and □ (the fragment the judgement mapping covers).
inline Formula random_core_formula(int max_depth, const std::vector<std::string>& atoms, std::mt19937_64& rng) {
  return detail::random_core_formula(max_depth, leaf_formulas(atoms), rng);
}

} // namespace rulerunner
