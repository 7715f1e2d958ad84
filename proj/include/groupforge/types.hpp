#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace groupforge {

using UserId = std::uint32_t;
using ItemId = std::uint32_t;

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGroupError : public Error { public: using Error::Error; };
class NotFoundError : public Error { public: using Error::Error; };
class InvalidPartitionError : public Error { public: using Error::Error; };
class InvalidMoveError : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };
class ParseError : public Error { public: using Error::Error; };
class DuplicateEntryError : public Error { public: using Error::Error; };
class CompletenessError : public Error { public: using Error::Error; };
class RatingRangeError : public Error { public: using Error::Error; };
class DegenerateInputError : public Error { public: using Error::Error; };
class IoError : public Error { public: using Error::Error; };

// ---------------------------------------------------------------------------
// Rating data

/// Closed range of admissible preference scores. Ratings are kept as doubles
/// so that predicted (real-valued) scores work, but all bundled fixtures use
/// small integers, for which the arithmetic below is exact.
struct RatingScale {
  double r_min = 1.0;
  double r_max = 5.0;
};

/// Complete n x m table of user-item preference scores. Immutable after
/// construction and safe to share across threads.
class RatingMatrix {
 public:
  RatingMatrix(std::size_t n_users, std::size_t n_items,
               std::vector<double> ratings, RatingScale scale,
               std::vector<std::string> user_labels = {},
               std::vector<std::string> item_labels = {});

  /// Convenience builder: one vector of item scores per user.
  static RatingMatrix from_user_rows(
      const std::vector<std::vector<double>>& rows, RatingScale scale,
      std::vector<std::string> user_labels = {},
      std::vector<std::string> item_labels = {});

  std::size_t user_count() const { return n_users_; }
  std::size_t item_count() const { return n_items_; }

  double at(UserId user, ItemId item) const {
    return ratings_[static_cast<std::size_t>(user) * n_items_ + item];
  }
  const double* row(UserId user) const {
    return ratings_.data() + static_cast<std::size_t>(user) * n_items_;
  }

  const RatingScale& scale() const { return scale_; }
  const std::vector<std::string>& user_labels() const { return user_labels_; }
  const std::vector<std::string>& item_labels() const { return item_labels_; }

  /// Content hash over dimensions, scale and every rating; used to detect
  /// cross-instance comparisons of outcomes.
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  std::size_t n_users_ = 0;
  std::size_t n_items_ = 0;
  std::vector<double> ratings_;  // user-major
  RatingScale scale_;
  std::vector<std::string> user_labels_;
  std::vector<std::string> item_labels_;
  std::uint64_t fingerprint_ = 0;
};

// ---------------------------------------------------------------------------
// Grouping data

/// Disjoint cover of the user set by non-empty blocks.
struct Partition {
  std::vector<std::vector<UserId>> blocks;

  std::size_t block_count() const { return blocks.size(); }
  std::size_t user_count() const;

  /// Index of the block containing `user`, or -1.
  int block_of(UserId user) const;

  /// Throws InvalidPartitionError unless blocks are non-empty, pairwise
  /// disjoint and cover exactly the users 0..n_users-1.
  void validate(std::size_t n_users) const;

  bool operator==(const Partition&) const = default;
};

/// Ordered top-k recommendation for one group. Scores are the group scores
/// under the active semantics, non-increasing along positions; ties among
/// equal-score items are broken by ascending item id.
struct TopKList {
  std::vector<ItemId> items;
  std::vector<double> scores;

  bool operator==(const TopKList&) const = default;
};

enum class Semantics { LeastMisery, AggregateVoting };

enum class AggregationKind { Max, Min, Sum, WeightedSum };

/// How a group's satisfaction with its top-k list is condensed.
struct Aggregation {
  AggregationKind kind = AggregationKind::Min;
  std::vector<double> weights;  // WeightedSum only; positive, non-increasing

  static Aggregation max() { return {AggregationKind::Max, {}}; }
  static Aggregation min() { return {AggregationKind::Min, {}}; }
  static Aggregation sum() { return {AggregationKind::Sum, {}}; }
  static Aggregation weighted_sum(std::vector<double> weights);
  /// w_j = 1/j, the default position weighting.
  static Aggregation harmonic_weighted_sum(std::size_t k);
  /// w_j = 1/log2(j+1), the logarithmic alternative.
  static Aggregation log_weighted_sum(std::size_t k);

  bool operator==(const Aggregation&) const = default;
};

struct AlgorithmConfig {
  Semantics semantics = Semantics::LeastMisery;
  Aggregation aggregation = Aggregation::min();
  std::size_t top_k = 1;      // k
  std::size_t max_groups = 1; // l
  std::uint64_t seed = 0;
};

struct GroupRecommendation {
  TopKList list;
  double satisfaction = 0.0;
};

/// A partition, each block's recommendation and satisfaction, and the total
/// objective (sum of satisfactions). per_group[i] belongs to
/// partition.blocks[i].
struct GroupingOutcome {
  Partition partition;
  std::vector<GroupRecommendation> per_group;
  double objective = 0.0;
  AlgorithmConfig config;
  std::uint64_t matrix_fingerprint = 0;
};

// ---------------------------------------------------------------------------
// Enum <-> string helpers (CLI flags and report fields)

std::string_view to_string(Semantics s);
std::string_view to_string(AggregationKind k);
std::optional<Semantics> semantics_from_string(std::string_view s);
std::optional<AggregationKind> aggregation_from_string(std::string_view s);

}  // namespace groupforge
