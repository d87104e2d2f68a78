#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ringforge {

/// Raised when a configured work cap is exceeded. Never a wrong answer:
/// callers surface it as an explicit UNDECIDED outcome.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised on precondition violations (mixed-ring operands, reducible field
/// modulus, non-comaximal inputs, ...).
struct ring_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Budgets {
  std::uint64_t enumeration_cap = 1ull << 20;  // max ring size for expansions/quotients
  std::uint64_t exhaustive_cap = 1ull << 20;   // |R|^n threshold for exhaustive scans
  std::uint64_t pair_reductions = 100000;      // Buchberger pair budget
  std::uint64_t staircase_cap = 4096;
  std::uint64_t ideal_lattice_cap = 4096;
  std::uint64_t sample_count = 64;
  std::uint64_t tower_size_cap = 1ull << 24;   // p^d cap for tower levels
  std::uint32_t max_tower_degree = 24;
};

}  // namespace ringforge
