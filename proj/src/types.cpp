#include "groupforge/types.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace groupforge {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv_mix(std::uint64_t& h, std::uint64_t v) {
  for (int byte = 0; byte < 8; ++byte) {
    h ^= (v >> (8 * byte)) & 0xff;
    h *= kFnvPrime;
  }
}

}  // namespace

RatingMatrix::RatingMatrix(std::size_t n_users, std::size_t n_items,
                           std::vector<double> ratings, RatingScale scale,
                           std::vector<std::string> user_labels,
                           std::vector<std::string> item_labels)
    : n_users_(n_users),
      n_items_(n_items),
      ratings_(std::move(ratings)),
      scale_(scale),
      user_labels_(std::move(user_labels)),
      item_labels_(std::move(item_labels)) {
  if (n_users_ == 0 || n_items_ == 0) {
    throw ConfigError("rating matrix needs at least one user and one item");
  }
  if (!(scale_.r_min <= scale_.r_max) || scale_.r_min < 0.0) {
    throw ConfigError("rating scale requires 0 <= r_min <= r_max");
  }
  if (ratings_.size() != n_users_ * n_items_) {
    throw ConfigError("rating matrix must be complete (n*m entries)");
  }
  for (double r : ratings_) {
    if (!(r >= scale_.r_min) || !(r <= scale_.r_max)) {
      throw RatingRangeError("rating " + std::to_string(r) +
                             " outside scale [" + std::to_string(scale_.r_min) +
                             ", " + std::to_string(scale_.r_max) + "]");
    }
  }
  if (user_labels_.empty()) {
    user_labels_.reserve(n_users_);
    for (std::size_t u = 0; u < n_users_; ++u) {
      user_labels_.push_back("u" + std::to_string(u + 1));
    }
  }
  if (item_labels_.empty()) {
    item_labels_.reserve(n_items_);
    for (std::size_t i = 0; i < n_items_; ++i) {
      item_labels_.push_back("i" + std::to_string(i + 1));
    }
  }
  if (user_labels_.size() != n_users_ || item_labels_.size() != n_items_) {
    throw ConfigError("label count does not match matrix dimensions");
  }

  std::uint64_t h = kFnvOffset;
  fnv_mix(h, n_users_);
  fnv_mix(h, n_items_);
  fnv_mix(h, std::bit_cast<std::uint64_t>(scale_.r_min));
  fnv_mix(h, std::bit_cast<std::uint64_t>(scale_.r_max));
  for (double r : ratings_) fnv_mix(h, std::bit_cast<std::uint64_t>(r));
  fingerprint_ = h;
}

RatingMatrix RatingMatrix::from_user_rows(
    const std::vector<std::vector<double>>& rows, RatingScale scale,
    std::vector<std::string> user_labels, std::vector<std::string> item_labels) {
  if (rows.empty() || rows.front().empty()) {
    throw ConfigError("rating matrix needs at least one user and one item");
  }
  const std::size_t m = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * m);
  for (const auto& row : rows) {
    if (row.size() != m) {
      throw ConfigError("all users must rate the same item set");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return RatingMatrix(rows.size(), m, std::move(flat), scale,
                      std::move(user_labels), std::move(item_labels));
}

std::size_t Partition::user_count() const {
  std::size_t total = 0;
  for (const auto& block : blocks) total += block.size();
  return total;
}

int Partition::block_of(UserId user) const {
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (UserId u : blocks[b]) {
      if (u == user) return static_cast<int>(b);
    }
  }
  return -1;
}

void Partition::validate(std::size_t n_users) const {
  std::vector<char> seen(n_users, 0);
  std::size_t covered = 0;
  for (const auto& block : blocks) {
    if (block.empty()) {
      throw InvalidPartitionError("partition contains an empty block");
    }
    for (UserId u : block) {
      if (u >= n_users) {
        throw InvalidPartitionError("partition references unknown user " +
                                    std::to_string(u));
      }
      if (seen[u]) {
        throw InvalidPartitionError("user " + std::to_string(u) +
                                    " appears in more than one block");
      }
      seen[u] = 1;
      ++covered;
    }
  }
  if (covered != n_users) {
    throw InvalidPartitionError("partition does not cover every user");
  }
}

Aggregation Aggregation::weighted_sum(std::vector<double> weights) {
  if (weights.empty()) {
    throw ConfigError("weighted sum needs at least one weight");
  }
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (!(weights[j] > 0.0)) {
      throw ConfigError("weighted sum weights must be strictly positive");
    }
    if (j > 0 && weights[j] > weights[j - 1]) {
      throw ConfigError("weighted sum weights must be non-increasing");
    }
  }
  return {AggregationKind::WeightedSum, std::move(weights)};
}

Aggregation Aggregation::harmonic_weighted_sum(std::size_t k) {
  std::vector<double> w(k);
  for (std::size_t j = 0; j < k; ++j) w[j] = 1.0 / static_cast<double>(j + 1);
  return weighted_sum(std::move(w));
}

Aggregation Aggregation::log_weighted_sum(std::size_t k) {
  std::vector<double> w(k);
  for (std::size_t j = 0; j < k; ++j) {
    w[j] = 1.0 / std::log2(static_cast<double>(j + 2));
  }
  return weighted_sum(std::move(w));
}

std::string_view to_string(Semantics s) {
  return s == Semantics::LeastMisery ? "lm" : "av";
}

std::string_view to_string(AggregationKind k) {
  switch (k) {
    case AggregationKind::Max: return "max";
    case AggregationKind::Min: return "min";
    case AggregationKind::Sum: return "sum";
    case AggregationKind::WeightedSum: return "wsum";
  }
  return "?";
}

std::optional<Semantics> semantics_from_string(std::string_view s) {
  if (s == "lm") return Semantics::LeastMisery;
  if (s == "av") return Semantics::AggregateVoting;
  return std::nullopt;
}

std::optional<AggregationKind> aggregation_from_string(std::string_view s) {
  if (s == "max") return AggregationKind::Max;
  if (s == "min") return AggregationKind::Min;
  if (s == "sum") return AggregationKind::Sum;
  if (s == "wsum") return AggregationKind::WeightedSum;
  return std::nullopt;
}

}  // namespace groupforge
