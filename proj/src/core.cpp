#include "groupforge/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace groupforge {

namespace {

void check_group(const RatingMatrix& matrix, std::span<const UserId> group) {
  if (group.empty()) {
    throw InvalidGroupError("group must contain at least one user");
  }
  for (UserId u : group) {
    if (u >= matrix.user_count()) {
      throw NotFoundError("unknown user " + std::to_string(u));
    }
  }
}

}  // namespace

double item_group_score(const RatingMatrix& matrix,
                        std::span<const UserId> group, ItemId item,
                        Semantics semantics) {
  check_group(matrix, group);
  if (item >= matrix.item_count()) {
    throw NotFoundError("unknown item " + std::to_string(item));
  }
  if (semantics == Semantics::LeastMisery) {
    double lo = std::numeric_limits<double>::infinity();
    for (UserId u : group) lo = std::min(lo, matrix.at(u, item));
    return lo;
  }
  double sum = 0.0;
  for (UserId u : group) sum += matrix.at(u, item);
  return sum;
}

TopKList group_top_k(const RatingMatrix& matrix, std::span<const UserId> group,
                     std::size_t k, Semantics semantics) {
  check_group(matrix, group);
  if (k == 0) throw ConfigError("top-k needs k >= 1");

  const std::size_t m = matrix.item_count();
  std::vector<double> scores(m);
  if (semantics == Semantics::LeastMisery) {
    std::fill(scores.begin(), scores.end(),
              std::numeric_limits<double>::infinity());
    for (UserId u : group) {
      const double* row = matrix.row(u);
      for (std::size_t j = 0; j < m; ++j) scores[j] = std::min(scores[j], row[j]);
    }
  } else {
    for (UserId u : group) {
      const double* row = matrix.row(u);
      for (std::size_t j = 0; j < m; ++j) scores[j] += row[j];
    }
  }

  const std::size_t take = std::min(k, m);
  std::vector<ItemId> order(m);
  std::iota(order.begin(), order.end(), ItemId{0});
  auto better = [&scores](ItemId a, ItemId b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  };
  std::partial_sort(order.begin(), order.begin() + take, order.end(), better);

  TopKList list;
  list.items.assign(order.begin(), order.begin() + take);
  list.scores.reserve(take);
  for (ItemId item : list.items) list.scores.push_back(scores[item]);
  return list;
}

double group_satisfaction(const TopKList& list, const Aggregation& aggregation) {
  if (list.items.empty()) {
    throw InvalidGroupError("recommendation list is empty");
  }
  switch (aggregation.kind) {
    case AggregationKind::Max:
      return list.scores.front();
    case AggregationKind::Min:
      return list.scores.back();
    case AggregationKind::Sum:
      return std::accumulate(list.scores.begin(), list.scores.end(), 0.0);
    case AggregationKind::WeightedSum: {
      if (aggregation.weights.size() < list.scores.size()) {
        throw ConfigError("weighted sum has " +
                          std::to_string(aggregation.weights.size()) +
                          " weights for a list of " +
                          std::to_string(list.scores.size()) + " items");
      }
      double total = 0.0;
      for (std::size_t j = 0; j < list.scores.size(); ++j) {
        total += aggregation.weights[j] * list.scores[j];
      }
      return total;
    }
  }
  throw ConfigError("unknown aggregation");
}

GroupingOutcome partition_objective(const RatingMatrix& matrix,
                                    const Partition& partition, std::size_t k,
                                    Semantics semantics,
                                    const Aggregation& aggregation) {
  partition.validate(matrix.user_count());

  GroupingOutcome outcome;
  outcome.partition = partition;
  outcome.per_group.reserve(partition.blocks.size());
  for (const auto& block : partition.blocks) {
    GroupRecommendation rec;
    rec.list = group_top_k(matrix, block, k, semantics);
    rec.satisfaction = group_satisfaction(rec.list, aggregation);
    outcome.objective += rec.satisfaction;
    outcome.per_group.push_back(std::move(rec));
  }
  outcome.config.semantics = semantics;
  outcome.config.aggregation = aggregation;
  outcome.config.top_k = k;
  outcome.config.max_groups = partition.blocks.size();
  outcome.matrix_fingerprint = matrix.fingerprint();
  return outcome;
}

Partition apply_move(const Partition& partition, UserId user,
                     const MoveTarget& target) {
  const int source = partition.block_of(user);
  if (source < 0) {
    throw NotFoundError("user " + std::to_string(user) +
                        " is not in the partition");
  }
  int dest = -1;
  if (target.kind == MoveTarget::Kind::BlockOfUser) {
    dest = partition.block_of(target.anchor);
    if (dest < 0) {
      throw NotFoundError("target user " + std::to_string(target.anchor) +
                          " is not in the partition");
    }
    if (dest == source) return partition;  // no-op move
  } else if (partition.blocks[source].size() == 1) {
    return partition;  // singleton to a new block is also a no-op
  }

  Partition moved;
  moved.blocks.reserve(partition.blocks.size() + 1);
  for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
    std::vector<UserId> block = partition.blocks[b];
    if (static_cast<int>(b) == source) {
      std::erase(block, user);
      if (block.empty()) continue;
    }
    if (static_cast<int>(b) == dest) block.push_back(user);
    moved.blocks.push_back(std::move(block));
  }
  if (target.kind == MoveTarget::Kind::NewBlock) {
    moved.blocks.push_back({user});
  }
  return moved;
}

}  // namespace groupforge
