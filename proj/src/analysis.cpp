#include "groupforge/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "groupforge/exact.hpp"

namespace groupforge {

double average_group_satisfaction(const RatingMatrix& matrix,
                                  const GroupingOutcome& outcome) {
  if (outcome.per_group.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t b = 0; b < outcome.partition.blocks.size(); ++b) {
    const auto& members = outcome.partition.blocks[b];
    for (ItemId item : outcome.per_group[b].list.items) {
      double sum = 0.0;
      for (UserId u : members) sum += matrix.at(u, item);
      total += sum / static_cast<double>(members.size());
    }
  }
  return total / static_cast<double>(outcome.partition.blocks.size());
}

namespace {

double quantile(const std::vector<double>& sorted, double q) {
  const double rank = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(rank);
  const double frac = rank - static_cast<double>(lo);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

SizeSummary group_size_summary(const GroupingOutcome& outcome) {
  if (outcome.partition.blocks.empty()) {
    throw ConfigError("size summary needs at least one group");
  }
  std::vector<double> sizes;
  sizes.reserve(outcome.partition.blocks.size());
  for (const auto& block : outcome.partition.blocks) {
    sizes.push_back(static_cast<double>(block.size()));
  }
  std::sort(sizes.begin(), sizes.end());
  return {sizes.front(), quantile(sizes, 0.25), quantile(sizes, 0.5),
          quantile(sizes, 0.75), sizes.back()};
}

double absolute_error(const GroupingOutcome& approx,
                      const GroupingOutcome& optimal) {
  if (approx.matrix_fingerprint != optimal.matrix_fingerprint) {
    throw ConfigError("outcomes were computed on different instances");
  }
  if (approx.config.semantics != optimal.config.semantics ||
      approx.config.aggregation != optimal.config.aggregation ||
      approx.config.top_k != optimal.config.top_k) {
    throw ConfigError("outcomes were computed under different configurations");
  }
  return optimal.objective - approx.objective;
}

ModularityReport check_modularity_violation(const RatingMatrix& matrix,
                                            std::size_t k, const Partition& p1,
                                            const Partition& p2, UserId user,
                                            const MoveTarget& target,
                                            Semantics semantics,
                                            const Aggregation& aggregation) {
  if (semantics != Semantics::AggregateVoting) {
    throw ConfigError("the modularity counterexamples are defined under AV");
  }
  Partition p1_moved, p2_moved;
  try {
    p1_moved = apply_move(p1, user, target);
    p2_moved = apply_move(p2, user, target);
  } catch (const NotFoundError& e) {
    throw InvalidMoveError(e.what());
  }

  ModularityReport report;
  report.obj_p1 =
      partition_objective(matrix, p1, k, semantics, aggregation).objective;
  report.obj_p2 =
      partition_objective(matrix, p2, k, semantics, aggregation).objective;
  report.obj_p1_moved =
      partition_objective(matrix, p1_moved, k, semantics, aggregation).objective;
  report.obj_p2_moved =
      partition_objective(matrix, p2_moved, k, semantics, aggregation).objective;
  report.submodularity_violated = (report.obj_p1 - report.obj_p1_moved) >
                                  (report.obj_p2 - report.obj_p2_moved);
  report.supermodularity_violated = (report.obj_p1_moved - report.obj_p1) >
                                    (report.obj_p2_moved - report.obj_p2);
  return report;
}

std::vector<ModularityCase> modularity_violation_sweep(
    const RatingMatrix& matrix, std::size_t k, const Aggregation& aggregation,
    std::size_t max_users) {
  const std::size_t n = matrix.user_count();
  if (n > std::min<std::size_t>(max_users, 5)) {
    throw ConfigError("the violation sweep is limited to n <= 5 users");
  }

  std::vector<Partition> partitions;
  {
    PartitionIterator it(n, n);
    Partition p;
    while (it.next(p)) partitions.push_back(p);
  }

  std::vector<MoveTarget> targets;
  targets.push_back(MoveTarget::new_block());
  for (std::size_t v = 0; v < n; ++v) {
    targets.push_back(MoveTarget::block_of(static_cast<UserId>(v)));
  }

  std::vector<ModularityCase> violations;
  for (const Partition& p1 : partitions) {
    for (const Partition& p2 : partitions) {
      if (p1 == p2) continue;
      for (std::size_t u = 0; u < n; ++u) {
        for (const MoveTarget& target : targets) {
          if (target.kind == MoveTarget::Kind::BlockOfUser &&
              target.anchor == u) {
            continue;
          }
          ModularityReport report = check_modularity_violation(
              matrix, k, p1, p2, static_cast<UserId>(u), target,
              Semantics::AggregateVoting, aggregation);
          if (report.submodularity_violated || report.supermodularity_violated) {
            violations.push_back(
                {p1, p2, static_cast<UserId>(u), target, report});
          }
        }
      }
    }
  }
  return violations;
}

}  // namespace groupforge
