#pragma once

#include <cstddef>
#include <queue>
#include <span>
#include <unordered_map>
#include <vector>

#include "groupforge/types.hpp"

namespace groupforge {

/// Bucketing key for the greedy algorithms: a user's personal top-k item
/// sequence plus the score signature required by semantics x aggregation.
///
///   LM x Min  -> [score of the k-th item]
///   LM x Sum  -> [all k scores]            (also WeightedSum)
///   LM x Max  -> [score of the top item]
///   AV x any  -> empty signature
struct GreedyKey {
  std::vector<ItemId> sequence;
  std::vector<double> signature;

  bool operator==(const GreedyKey&) const = default;
  /// Lexicographic on (sequence, signature); used for deterministic
  /// tie-breaking in the selection queue.
  bool operator<(const GreedyKey& other) const;
};

struct GreedyKeyHash {
  std::size_t operator()(const GreedyKey& key) const;
};

/// Per-user personal top-k lists, the precomputed input of the formation
/// algorithms (items by rating descending, ties by ascending item id).
class PersonalRankings {
 public:
  PersonalRankings(const RatingMatrix& matrix, std::size_t k);

  std::size_t user_count() const { return n_; }
  std::size_t k() const { return k_; }

  std::span<const ItemId> items(UserId u) const {
    return {items_.data() + static_cast<std::size_t>(u) * k_, k_};
  }
  std::span<const double> scores(UserId u) const {
    return {scores_.data() + static_cast<std::size_t>(u) * k_, k_};
  }

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;  // min(requested k, item count)
  std::vector<ItemId> items_;
  std::vector<double> scores_;
};

GreedyKey greedy_key(const RatingMatrix& matrix, UserId user, std::size_t k,
                     Semantics semantics, const Aggregation& aggregation);

/// Users bucketed under one key, with the priority inserted into the
/// selection queue:
///
///   LM x Min  -> shared bottom score          LM x Sum -> shared sum
///   LM x Max  -> shared top score             LM x WSum -> shared wsum
///   AV x Min  -> sum over members of their personal k-th score
///   AV x Sum  -> sum over members of their personal top-k sum
///   AV x Max  -> sum over members of their personal top score
struct IntermediateGroup {
  GreedyKey key;
  std::vector<UserId> members;
  double priority = 0.0;
};

/// The hash-bucketed intermediate groups plus the selection queue. AV
/// priorities accrue as members merge under one key; the queue is maintained
/// with lazy invalidation, so stale entries are skipped on pop.
class IntermediateGroups {
 public:
  const std::vector<IntermediateGroup>& groups() const { return groups_; }

  /// Highest-priority unpopped group, or -1 when the queue is exhausted.
  /// Ties: larger member count first, then lexicographically smallest key.
  int pop();

  std::size_t size() const { return groups_.size(); }

 private:
  friend IntermediateGroups build_intermediate_groups(const PersonalRankings&,
                                                      Semantics,
                                                      const Aggregation&);
  struct QueueEntry {
    double priority;
    std::uint32_t member_count;  // snapshot at push time
    std::uint32_t group;
  };

  void insert(UserId user, GreedyKey key, double priority_delta);
  bool entry_order(const QueueEntry& a, const QueueEntry& b) const;

  std::vector<IntermediateGroup> groups_;
  std::unordered_map<GreedyKey, std::uint32_t, GreedyKeyHash> index_;
  std::vector<QueueEntry> heap_;  // max-heap, lazily invalidated
  std::vector<bool> popped_;
};

IntermediateGroups build_intermediate_groups(const PersonalRankings& rankings,
                                             Semantics semantics,
                                             const Aggregation& aggregation);
IntermediateGroups build_intermediate_groups(const RatingMatrix& matrix,
                                             std::size_t k, Semantics semantics,
                                             const Aggregation& aggregation);

/// Raw result of the selection phase: the first `selected.size()` blocks of
/// `partition` are popped intermediate groups in pop order; when
/// `has_remainder` is set the last block holds all remaining users.
struct FormationResult {
  Partition partition;
  std::vector<std::uint32_t> selected;  // indices into intermediate.groups()
  std::vector<double> selected_priorities;
  bool has_remainder = false;
  IntermediateGroups intermediate;
};

/// The formation core: bucket users, pop the max_groups-1 best intermediate
/// groups, collect the rest into the final block. O(nk + l log n) given the
/// rankings; does not touch the rating matrix.
FormationResult form_partition(const PersonalRankings& rankings,
                               Semantics semantics,
                               const Aggregation& aggregation,
                               std::size_t max_groups);

/// Full greedy pipeline: personal rankings, formation, then outcome assembly.
/// Selected groups are scored on their shared sequence; the final block's
/// list and satisfaction are computed exactly over all m items.
GroupingOutcome grd_form_groups(const RatingMatrix& matrix,
                                const AlgorithmConfig& config);

/// As grd_form_groups but with precomputed rankings (rankings.k() must equal
/// min(config.top_k, item count)).
GroupingOutcome grd_form_groups(const RatingMatrix& matrix,
                                const PersonalRankings& rankings,
                                const AlgorithmConfig& config);

struct GrdResult {
  GroupingOutcome outcome;
  FormationResult formation;
};

/// grd_form_groups plus the formation internals, for invariant checks.
GrdResult grd_form_groups_detailed(const RatingMatrix& matrix,
                                   const AlgorithmConfig& config);

}  // namespace groupforge
