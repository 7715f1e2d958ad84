#pragma once

#include <cstdint>
#include <optional>

#include "groupforge/types.hpp"

namespace groupforge {

/// Stirling number of the second kind S(n, k), saturating at 2^63-1.
std::uint64_t stirling2(std::size_t n, std::size_t k);

/// Number of set partitions of n elements into at most max_blocks non-empty
/// blocks (sum of Stirling numbers), saturating at 2^63-1.
std::uint64_t partition_count(std::size_t n, std::size_t max_blocks);

/// Enumerates every partition of {0..n-1} into at most max_blocks non-empty
/// blocks exactly once, in restricted-growth-string order.
class PartitionIterator {
 public:
  PartitionIterator(std::size_t n, std::size_t max_blocks);

  /// Fills `out` with the next partition; false once exhausted.
  bool next(Partition& out);

  /// Current restricted growth string (valid after a successful next()).
  const std::vector<std::uint8_t>& code() const { return digits_; }

 private:
  bool advance();

  std::size_t n_;
  std::size_t max_blocks_;
  std::vector<std::uint8_t> digits_;
  std::vector<std::uint8_t> prefix_max_;
  bool started_ = false;
  bool done_ = false;
};

struct ExactOptions {
  /// Maximum number of partitions to score before giving up with a
  /// BudgetExceededError.
  std::optional<std::uint64_t> node_limit;
  /// Prefix pruning with the LM satisfaction bound. Off by default so the
  /// oracle stays a plain scan; ignored under AV (the bound does not hold
  /// there).
  bool use_lm_bound = false;
};

/// Thrown when the enumeration budget runs out; carries the best outcome
/// found so far.
class BudgetExceededError : public Error {
 public:
  BudgetExceededError(std::string message, GroupingOutcome best,
                      std::uint64_t nodes_scored)
      : Error(std::move(message)),
        best_so_far(std::move(best)),
        nodes_scored(nodes_scored) {}

  GroupingOutcome best_so_far;
  std::uint64_t nodes_scored = 0;
};

/// Exact optimum by exhaustive enumeration. Among equal-objective optima the
/// first partition in enumeration order wins.
GroupingOutcome exact_optimum(const RatingMatrix& matrix,
                              const AlgorithmConfig& config,
                              const ExactOptions& options = {});

}  // namespace groupforge
