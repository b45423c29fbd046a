#pragma once

#include <cstdint>
#include <vector>

#include "rsol/structure.hpp"

namespace rsol {

struct LeibnizResult {
  FiniteStructure quotient;
  // block_of[a] is the quotient element of a; blocks are numbered by their
  // least member.
  std::vector<Element> block_of;
  std::uint32_t rounds = 0;
  bool stabilized = false;
};

// Elements identified when no identity-free atomic context with parameters
// separates them, refined through function applications for at most `depth`
// rounds. The limit is the Leibniz congruence.
std::vector<Element> leibniz_partition(const FiniteStructure& s, std::uint32_t depth, std::uint32_t* rounds = nullptr,
                                       bool* stabilized = nullptr);

LeibnizResult leibniz_reduce(const FiniteStructure& s, std::uint32_t depth);

}  // namespace rsol
