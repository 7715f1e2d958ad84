#pragma once

#include <span>

#include "groupforge/types.hpp"

namespace groupforge {

/// Group score of one item: LM takes the minimum member rating, AV the sum.
double item_group_score(const RatingMatrix& matrix,
                        std::span<const UserId> group, ItemId item,
                        Semantics semantics);

/// The min(k, m) items with the highest group scores, ordered by
/// (score descending, item id ascending).
TopKList group_top_k(const RatingMatrix& matrix, std::span<const UserId> group,
                     std::size_t k, Semantics semantics);

/// Condenses a recommendation list into one satisfaction score.
double group_satisfaction(const TopKList& list, const Aggregation& aggregation);

/// Scores every block of `partition` and sums the satisfactions. Validates
/// the partition first.
GroupingOutcome partition_objective(const RatingMatrix& matrix,
                                    const Partition& partition, std::size_t k,
                                    Semantics semantics,
                                    const Aggregation& aggregation);

/// Destination of a single-user relocation.
struct MoveTarget {
  enum class Kind { BlockOfUser, NewBlock };
  Kind kind = Kind::NewBlock;
  UserId anchor = 0;  // BlockOfUser only

  static MoveTarget block_of(UserId user) { return {Kind::BlockOfUser, user}; }
  static MoveTarget new_block() { return {Kind::NewBlock, 0}; }
};

/// Returns a new partition with `user` moved into the target block (the block
/// containing the anchor user, or a fresh block appended at the end). A move
/// into the user's own block is a no-op. Emptied source blocks are deleted.
Partition apply_move(const Partition& partition, UserId user,
                     const MoveTarget& target);

}  // namespace groupforge
