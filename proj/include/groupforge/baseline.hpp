#pragma once

#include <cstdint>
#include <vector>

#include "groupforge/types.hpp"

namespace groupforge {

/// Symmetric pairwise user distances in [0, 1] with zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix(std::size_t n, std::vector<double> entries);

  std::size_t size() const { return n_; }
  double at(UserId a, UserId b) const { return entries_[a * n_ + b]; }

 private:
  std::size_t n_;
  std::vector<double> entries_;
};

/// Kendall-Tau rank distance between two users over all items: the fraction
/// of item pairs ranked in strictly opposite order, out of C(m, 2). Pairs
/// tied for either user are not discordant.
double kendall_tau_distance(const RatingMatrix& matrix, UserId u, UserId v);

/// All-pairs Kendall-Tau distances.
DistanceMatrix rating_distance_matrix(const RatingMatrix& matrix);

/// PAM-style k-medoids on a precomputed distance matrix: seeded random
/// distinct initial medoids, then alternate nearest-medoid assignment and
/// medoid updates until the medoid set is stable or max_iters is hit.
/// Ties in assignment go to the lowest-indexed medoid, so duplicate users
/// land in one cluster; empty clusters are dropped. Deterministic per seed.
Partition cluster_users(const DistanceMatrix& distances, std::size_t max_groups,
                        std::size_t max_iters, std::uint64_t seed);

/// The comparison algorithm: Kendall-Tau distances, k-medoids into at most
/// max_groups clusters, then exact scoring of each cluster under the
/// configured semantics.
GroupingOutcome baseline_form_groups(const RatingMatrix& matrix,
                                     const AlgorithmConfig& config,
                                     std::size_t max_iters = 100);

}  // namespace groupforge
