#include "groupforge/exact.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "groupforge/core.hpp"

namespace groupforge {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::int64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return (a > kSaturated - b) ? kSaturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

}  // namespace

std::uint64_t stirling2(std::size_t n, std::size_t k) {
  if (k == 0) return n == 0 ? 1 : 0;
  if (k > n) return 0;
  // S(n, k) = k*S(n-1, k) + S(n-1, k-1), rolled row by row.
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;  // S(0, 0)
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = std::min(i, k); j >= 1; --j) {
      row[j] = sat_add(sat_mul(j, row[j]), row[j - 1]);
    }
    row[0] = 0;
  }
  return row[k];
}

std::uint64_t partition_count(std::size_t n, std::size_t max_blocks) {
  std::uint64_t total = 0;
  for (std::size_t j = 1; j <= std::min(n, max_blocks); ++j) {
    total = sat_add(total, stirling2(n, j));
  }
  return total;
}

PartitionIterator::PartitionIterator(std::size_t n, std::size_t max_blocks)
    : n_(n), max_blocks_(max_blocks), digits_(n, 0), prefix_max_(n, 0) {
  if (n == 0 || max_blocks == 0) {
    throw ConfigError("partition enumeration needs n >= 1 and max_blocks >= 1");
  }
}

bool PartitionIterator::advance() {
  // Restricted growth string successor: bump the rightmost digit that can
  // still grow (a[i] <= prefix_max and below the block cap), zero the tail.
  const std::uint8_t cap = static_cast<std::uint8_t>(
      std::min<std::size_t>(max_blocks_, 255) - 1);
  for (std::size_t i = n_; i-- > 1;) {
    if (digits_[i] <= prefix_max_[i - 1] && digits_[i] < cap) {
      ++digits_[i];
      prefix_max_[i] = std::max(prefix_max_[i - 1], digits_[i]);
      for (std::size_t j = i + 1; j < n_; ++j) {
        digits_[j] = 0;
        prefix_max_[j] = prefix_max_[i];
      }
      return true;
    }
  }
  return false;
}

bool PartitionIterator::next(Partition& out) {
  if (done_) return false;
  if (started_ && !advance()) {
    done_ = true;
    return false;
  }
  started_ = true;

  out.blocks.assign(prefix_max_[n_ - 1] + 1, {});
  for (std::size_t u = 0; u < n_; ++u) {
    out.blocks[digits_[u]].push_back(static_cast<UserId>(u));
  }
  return true;
}

namespace {

/// Highest satisfaction any single block can reach, used to bound unopened
/// blocks during pruning.
double block_satisfaction_cap(const RatingMatrix& matrix,
                              const AlgorithmConfig& config) {
  const double r_max = matrix.scale().r_max;
  const std::size_t k_eff = std::min(config.top_k, matrix.item_count());
  switch (config.aggregation.kind) {
    case AggregationKind::Max:
    case AggregationKind::Min:
      return r_max;
    case AggregationKind::Sum:
      return static_cast<double>(k_eff) * r_max;
    case AggregationKind::WeightedSum: {
      double total = 0.0;
      for (std::size_t j = 0; j < k_eff; ++j) {
        total += config.aggregation.weights[j];
      }
      return total * r_max;
    }
  }
  return r_max;
}

/// Depth-first enumeration over restricted growth strings with LM-specific
/// pruning: a block's satisfaction can only drop as members join (LM scores
/// are anti-monotone), so the score of the current members plus a cap per
/// unopened block bounds every completion of the prefix.
class PrunedSearch {
 public:
  PrunedSearch(const RatingMatrix& matrix, const AlgorithmConfig& config)
      : matrix_(matrix),
        config_(config),
        n_(matrix.user_count()),
        m_(matrix.item_count()),
        max_blocks_(std::min(config.max_groups, n_)),
        cap_(block_satisfaction_cap(matrix, config)) {
    block_mins_.assign(max_blocks_ * m_, 0.0);
    block_sat_.assign(max_blocks_, 0.0);
    digits_.assign(n_, 0);
  }

  GroupingOutcome run() {
    descend(0, 0);
    Partition best;
    best.blocks.assign(best_block_count_, {});
    for (std::size_t u = 0; u < n_; ++u) {
      best.blocks[best_digits_[u]].push_back(static_cast<UserId>(u));
    }
    return partition_objective(matrix_, best, config_.top_k, config_.semantics,
                               config_.aggregation);
  }

 private:
  double block_score(std::size_t block) const {
    TopKList list;
    const double* mins = block_mins_.data() + block * m_;
    std::vector<ItemId> order(m_);
    for (std::size_t j = 0; j < m_; ++j) order[j] = static_cast<ItemId>(j);
    const std::size_t take = std::min(config_.top_k, m_);
    std::partial_sort(order.begin(), order.begin() + take, order.end(),
                      [mins](ItemId a, ItemId b) {
                        if (mins[a] != mins[b]) return mins[a] > mins[b];
                        return a < b;
                      });
    list.items.assign(order.begin(), order.begin() + take);
    for (ItemId item : list.items) list.scores.push_back(mins[item]);
    return group_satisfaction(list, config_.aggregation);
  }

  void descend(std::size_t user, std::size_t open_blocks) {
    if (user == n_) {
      double total = 0.0;
      for (std::size_t b = 0; b < open_blocks; ++b) total += block_sat_[b];
      if (!found_ || total > best_objective_) {
        found_ = true;
        best_objective_ = total;
        best_digits_ = digits_;
        best_block_count_ = open_blocks;
      }
      return;
    }

    const std::size_t remaining = n_ - user;
    const std::size_t choices =
        std::min(open_blocks + 1, max_blocks_);
    for (std::size_t b = 0; b < choices; ++b) {
      const bool opens = b == open_blocks;
      // Snapshot the block state touched by this assignment.
      std::vector<double> saved_mins;
      double saved_sat = block_sat_[b];
      double* mins = block_mins_.data() + b * m_;
      const double* row = matrix_.row(static_cast<UserId>(user));
      if (opens) {
        std::copy(row, row + m_, mins);
      } else {
        saved_mins.assign(mins, mins + m_);
        for (std::size_t j = 0; j < m_; ++j) mins[j] = std::min(mins[j], row[j]);
      }
      block_sat_[b] = block_score(b);
      digits_[user] = static_cast<std::uint8_t>(b);

      const std::size_t now_open = open_blocks + (opens ? 1 : 0);
      double bound = 0.0;
      for (std::size_t x = 0; x < now_open; ++x) bound += block_sat_[x];
      bound += static_cast<double>(
                   std::min(max_blocks_ - now_open, remaining - 1)) *
               cap_;
      if (!found_ || bound > best_objective_) {
        descend(user + 1, now_open);
      }

      block_sat_[b] = saved_sat;
      if (!opens) std::copy(saved_mins.begin(), saved_mins.end(), mins);
    }
  }

  const RatingMatrix& matrix_;
  const AlgorithmConfig& config_;
  std::size_t n_, m_, max_blocks_;
  double cap_;
  std::vector<double> block_mins_;
  std::vector<double> block_sat_;
  std::vector<std::uint8_t> digits_;
  std::vector<std::uint8_t> best_digits_;
  std::size_t best_block_count_ = 0;
  double best_objective_ = 0.0;
  bool found_ = false;
};

}  // namespace

GroupingOutcome exact_optimum(const RatingMatrix& matrix,
                              const AlgorithmConfig& config,
                              const ExactOptions& options) {
  if (config.max_groups == 0) throw ConfigError("group count needs l >= 1");
  if (config.top_k == 0) throw ConfigError("top-k needs k >= 1");

  if (options.use_lm_bound && config.semantics == Semantics::LeastMisery) {
    GroupingOutcome outcome = PrunedSearch(matrix, config).run();
    outcome.config = config;
    return outcome;
  }

  PartitionIterator it(matrix.user_count(), config.max_groups);
  Partition partition;
  GroupingOutcome best;
  bool found = false;
  std::uint64_t nodes = 0;
  while (it.next(partition)) {
    if (options.node_limit && nodes >= *options.node_limit) {
      throw BudgetExceededError(
          "partition enumeration stopped after " + std::to_string(nodes) +
              " nodes (limit " + std::to_string(*options.node_limit) + ")",
          std::move(best), nodes);
    }
    GroupingOutcome outcome = partition_objective(
        matrix, partition, config.top_k, config.semantics, config.aggregation);
    ++nodes;
    if (!found || outcome.objective > best.objective) {
      best = std::move(outcome);
      found = true;
    }
  }
  best.config = config;
  return best;
}

}  // namespace groupforge
