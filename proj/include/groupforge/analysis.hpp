#pragma once

#include <vector>

#include "groupforge/core.hpp"
#include "groupforge/types.hpp"

namespace groupforge {

/// Five-point summary of group sizes, quantiles by linear interpolation at
/// rank q*(count-1) over the sorted sizes.
struct SizeSummary {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

/// Mean over groups of the summed per-position member-average score of the
/// recommended items: sum_g sum_j mean_{u in g} sc(u, i^j) / #groups.
double average_group_satisfaction(const RatingMatrix& matrix,
                                  const GroupingOutcome& outcome);

SizeSummary group_size_summary(const GroupingOutcome& outcome);

/// optimal.objective - approx.objective. Refuses outcomes computed on
/// different instances or configurations.
double absolute_error(const GroupingOutcome& approx,
                      const GroupingOutcome& optimal);

/// The four objectives around a single-user move applied to two partitions,
/// and whether they witness a violation of sub- or super-modularity:
///   submodularity violated   iff Obj(P1) - Obj(P1;mu) > Obj(P2) - Obj(P2;mu)
///   supermodularity violated iff Obj(P1;mu) - Obj(P1) > Obj(P2;mu) - Obj(P2)
struct ModularityReport {
  double obj_p1 = 0, obj_p2 = 0, obj_p1_moved = 0, obj_p2_moved = 0;
  bool submodularity_violated = false;
  bool supermodularity_violated = false;
};

ModularityReport check_modularity_violation(const RatingMatrix& matrix,
                                            std::size_t k, const Partition& p1,
                                            const Partition& p2, UserId user,
                                            const MoveTarget& target,
                                            Semantics semantics,
                                            const Aggregation& aggregation);

struct ModularityCase {
  Partition p1, p2;
  UserId user = 0;
  MoveTarget target;
  ModularityReport report;
};

/// Convenience sweep over all partition pairs and single-user moves on small
/// instances (n <= max_users, capped at 5), returning every violating case.
std::vector<ModularityCase> modularity_violation_sweep(
    const RatingMatrix& matrix, std::size_t k, const Aggregation& aggregation,
    std::size_t max_users = 5);

}  // namespace groupforge
