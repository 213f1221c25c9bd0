#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fa {

/// Universally quantified checks over pairs run exhaustively while the pair
/// count fits the budget, and on `pair_budget` uniformly sampled pairs
/// otherwise.
struct SamplingPolicy {
  std::uint64_t pair_budget = 1'000'000;
  std::uint64_t seed = 20240229;
};

enum class CheckMode { Exhaustive, Sampled };

const char* to_string(CheckMode mode);

/// Pass/fail record for one family of checks.
struct CheckGroup {
  std::string name;
  bool passed = true;
  std::uint64_t checked = 0;
  /// Reproducers for the first few failures.
  std::vector<std::string> failures;

  void fail(std::string what);
};

/// Calls fn(i, j) for index pairs below n, exhaustively or sampled.
template <class Fn>
CheckMode for_each_pair(std::uint64_t n, const SamplingPolicy& policy, Fn&& fn) {
  // n*n compared without overflow
  if (n == 0 || n <= policy.pair_budget / n) {
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t j = 0; j < n; ++j) fn(i, j);
    return CheckMode::Exhaustive;
  }
  std::mt19937_64 rng(policy.seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
  for (std::uint64_t k = 0; k < policy.pair_budget; ++k) {
    const std::uint64_t i = pick(rng);
    const std::uint64_t j = pick(rng);
    fn(i, j);
  }
  return CheckMode::Sampled;
}

/// Same policy for single elements: exhaustive while n fits the budget.
template <class Fn>
CheckMode for_each_index(std::uint64_t n, const SamplingPolicy& policy, Fn&& fn) {
  if (n <= policy.pair_budget) {
    for (std::uint64_t i = 0; i < n; ++i) fn(i);
    return CheckMode::Exhaustive;
  }
  std::mt19937_64 rng(policy.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
  for (std::uint64_t k = 0; k < policy.pair_budget; ++k) fn(pick(rng));
  return CheckMode::Sampled;
}

}  // namespace fa
