#pragma once

#include "rulerunner/trace.hpp"

#include <string>
#include <vector>

namespace rrtest {

// Every trace over `atoms` with 1..max_len cells.
inline std::vector<rulerunner::Trace> all_traces(const std::vector<std::string>& atoms, std::size_t max_len) {
  std::vector<rulerunner::Cell> cells;
  const std::size_t n = std::size_t{1} << atoms.size();
  for (std::size_t mask = 0; mask < n; ++mask) {
    rulerunner::Cell c;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (mask >> i & 1)
        c.insert(atoms[i]);
    cells.push_back(c);
  }
  std::vector<rulerunner::Trace> out;
  std::vector<std::vector<rulerunner::Cell>> level{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<rulerunner::Cell>> next;
    for (const auto& prefix : level)
      for (const auto& c : cells) {
        auto t = prefix;
        t.push_back(c);
        out.emplace_back(t);
        next.push_back(std::move(t));
      }
    level = std::move(next);
  }
  return out;
}

} // namespace rrtest
