#include "groupforge/baseline.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "groupforge/core.hpp"

namespace groupforge {

namespace {

/// Counts pairs i < j with values[i] > values[j] (strict inversions) by
/// merge sort. Equal values are kept stable and never counted.
std::uint64_t count_inversions(std::vector<double>& values,
                               std::vector<double>& scratch, std::size_t lo,
                               std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t count = count_inversions(values, scratch, lo, mid) +
                        count_inversions(values, scratch, mid, hi);
  std::size_t a = lo, b = mid, out = lo;
  while (a < mid && b < hi) {
    if (values[b] < values[a]) {
      count += mid - a;
      scratch[out++] = values[b++];
    } else {
      scratch[out++] = values[a++];
    }
  }
  while (a < mid) scratch[out++] = values[a++];
  while (b < hi) scratch[out++] = values[b++];
  std::copy(scratch.begin() + lo, scratch.begin() + hi, values.begin() + lo);
  return count;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Uniform draw from [0, bound) without modulo bias; platform-independent.
std::uint64_t bounded_draw(std::uint64_t& state, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = splitmix64(state);
    if (r >= threshold) return r % bound;
  }
}

}  // namespace

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n_ == 0 || entries_.size() != n_ * n_) {
    throw ConfigError("distance matrix must be n*n with n >= 1");
  }
  for (std::size_t a = 0; a < n_; ++a) {
    if (entries_[a * n_ + a] != 0.0) {
      throw ConfigError("distance matrix diagonal must be zero");
    }
    for (std::size_t b = 0; b < n_; ++b) {
      const double d = entries_[a * n_ + b];
      if (!(d >= 0.0) || !(d <= 1.0) || d != entries_[b * n_ + a]) {
        throw ConfigError("distances must be symmetric and within [0, 1]");
      }
    }
  }
}

double kendall_tau_distance(const RatingMatrix& matrix, UserId u, UserId v) {
  if (u >= matrix.user_count() || v >= matrix.user_count()) {
    throw NotFoundError("unknown user in distance computation");
  }
  const std::size_t m = matrix.item_count();
  if (m < 2) {
    throw DegenerateInputError("Kendall-Tau distance needs at least 2 items");
  }

  // Sort items by (u's rating asc, v's rating asc); discordant pairs are then
  // exactly the strict inversions of v's rating sequence. Pairs tied for u
  // end up in v-ascending order and pairs tied for v are never strict, so
  // ties on either side do not count.
  const double* a = matrix.row(u);
  const double* b = matrix.row(v);
  std::vector<ItemId> order(m);
  std::iota(order.begin(), order.end(), ItemId{0});
  std::sort(order.begin(), order.end(), [a, b](ItemId x, ItemId y) {
    if (a[x] != a[y]) return a[x] < a[y];
    return b[x] < b[y];
  });
  std::vector<double> values(m), scratch(m);
  for (std::size_t j = 0; j < m; ++j) values[j] = b[order[j]];
  const std::uint64_t discordant = count_inversions(values, scratch, 0, m);
  const double pairs = static_cast<double>(m) * (m - 1) / 2.0;
  return static_cast<double>(discordant) / pairs;
}

DistanceMatrix rating_distance_matrix(const RatingMatrix& matrix) {
  const std::size_t n = matrix.user_count();
  std::vector<double> entries(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double d = kendall_tau_distance(matrix, static_cast<UserId>(a),
                                            static_cast<UserId>(b));
      entries[a * n + b] = d;
      entries[b * n + a] = d;
    }
  }
  return DistanceMatrix(n, std::move(entries));
}

Partition cluster_users(const DistanceMatrix& distances, std::size_t max_groups,
                        std::size_t max_iters, std::uint64_t seed) {
  const std::size_t n = distances.size();
  if (max_groups == 0 || max_groups > n) {
    throw ConfigError("clustering needs 1 <= l <= n (l=" +
                      std::to_string(max_groups) + ", n=" + std::to_string(n) +
                      ")");
  }

  // Seeded draw of distinct initial medoids (partial Fisher-Yates).
  std::uint64_t rng = seed;
  std::vector<UserId> pool(n);
  std::iota(pool.begin(), pool.end(), UserId{0});
  for (std::size_t i = 0; i < max_groups; ++i) {
    const std::size_t j = i + bounded_draw(rng, n - i);
    std::swap(pool[i], pool[j]);
  }
  std::vector<UserId> medoids(pool.begin(), pool.begin() + max_groups);
  std::sort(medoids.begin(), medoids.end());

  std::vector<std::size_t> assignment(n, 0);
  auto assign_all = [&]() {
    for (std::size_t u = 0; u < n; ++u) {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < medoids.size(); ++c) {
        const double d = distances.at(static_cast<UserId>(u), medoids[c]);
        if (d < best_d) {  // ties keep the lowest-indexed medoid
          best_d = d;
          best = c;
        }
      }
      assignment[u] = best;
    }
  };

  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    assign_all();

    // New medoid per cluster: the member minimizing the within-cluster
    // distance sum, ties to the lowest user index.
    std::vector<std::vector<UserId>> clusters(medoids.size());
    for (std::size_t u = 0; u < n; ++u) {
      clusters[assignment[u]].push_back(static_cast<UserId>(u));
    }
    std::vector<UserId> updated;
    updated.reserve(medoids.size());
    for (const auto& members : clusters) {
      if (members.empty()) continue;
      UserId best = members.front();
      double best_cost = std::numeric_limits<double>::infinity();
      for (UserId candidate : members) {
        double cost = 0.0;
        for (UserId other : members) cost += distances.at(candidate, other);
        if (cost < best_cost) {
          best_cost = cost;
          best = candidate;
        }
      }
      updated.push_back(best);
    }
    std::sort(updated.begin(), updated.end());
    if (updated == medoids) break;
    medoids = std::move(updated);
  }
  assign_all();

  Partition partition;
  partition.blocks.assign(medoids.size(), {});
  for (std::size_t u = 0; u < n; ++u) {
    partition.blocks[assignment[u]].push_back(static_cast<UserId>(u));
  }
  std::erase_if(partition.blocks,
                [](const std::vector<UserId>& b) { return b.empty(); });
  return partition;
}

GroupingOutcome baseline_form_groups(const RatingMatrix& matrix,
                                     const AlgorithmConfig& config,
                                     std::size_t max_iters) {
  const DistanceMatrix distances = rating_distance_matrix(matrix);
  const Partition partition =
      cluster_users(distances, config.max_groups, max_iters, config.seed);
  GroupingOutcome outcome =
      partition_objective(matrix, partition, config.top_k, config.semantics,
                          config.aggregation);
  outcome.config = config;
  return outcome;
}

}  // namespace groupforge
