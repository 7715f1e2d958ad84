#include "groupforge/greedy.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <numeric>

#include "groupforge/core.hpp"

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

double weighted_signature_sum(const Aggregation& aggregation,
                              std::span<const double> scores) {
  double total = 0.0;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    total += aggregation.weights[j] * scores[j];
  }
  return total;
}

/// The score a single user contributes for their own top-k list under the
/// active aggregation; doubles as the per-user AV priority increment.
double personal_priority(std::span<const double> scores,
                         const Aggregation& aggregation) {
  switch (aggregation.kind) {
    case AggregationKind::Max: return scores.front();
    case AggregationKind::Min: return scores.back();
    case AggregationKind::Sum:
      return std::accumulate(scores.begin(), scores.end(), 0.0);
    case AggregationKind::WeightedSum:
      return weighted_signature_sum(aggregation, scores);
  }
  throw ConfigError("unknown aggregation");
}

void check_weights(std::size_t k, const Aggregation& aggregation) {
  if (aggregation.kind == AggregationKind::WeightedSum &&
      aggregation.weights.size() < k) {
    throw ConfigError("weighted sum needs at least k weights");
  }
}

GreedyKey make_key(std::span<const ItemId> items, std::span<const double> scores,
                   Semantics semantics, const Aggregation& aggregation) {
  GreedyKey key;
  key.sequence.assign(items.begin(), items.end());
  if (semantics == Semantics::AggregateVoting) return key;
  switch (aggregation.kind) {
    case AggregationKind::Min:
      key.signature.push_back(scores.back());
      break;
    case AggregationKind::Max:
      key.signature.push_back(scores.front());
      break;
    case AggregationKind::Sum:
    case AggregationKind::WeightedSum:
      key.signature.assign(scores.begin(), scores.end());
      break;
  }
  return key;
}

}  // namespace

bool GreedyKey::operator<(const GreedyKey& other) const {
  if (sequence != other.sequence) {
    return std::lexicographical_compare(sequence.begin(), sequence.end(),
                                        other.sequence.begin(),
                                        other.sequence.end());
  }
  return std::lexicographical_compare(signature.begin(), signature.end(),
                                      other.signature.begin(),
                                      other.signature.end());
}

std::size_t GreedyKeyHash::operator()(const GreedyKey& key) const {
  std::uint64_t h = kFnvOffset;
  for (ItemId item : key.sequence) fnv_mix(h, item);
  fnv_mix(h, ~0ull);  // separates sequence from signature
  for (double s : key.signature) fnv_mix(h, std::bit_cast<std::uint64_t>(s));
  return static_cast<std::size_t>(h);
}

PersonalRankings::PersonalRankings(const RatingMatrix& matrix, std::size_t k) {
  if (k == 0) throw ConfigError("top-k needs k >= 1");
  n_ = matrix.user_count();
  const std::size_t m = matrix.item_count();
  k_ = std::min(k, m);
  items_.resize(n_ * k_);
  scores_.resize(n_ * k_);

  std::vector<ItemId> order(m);
  for (std::size_t u = 0; u < n_; ++u) {
    const double* row = matrix.row(static_cast<UserId>(u));
    std::iota(order.begin(), order.end(), ItemId{0});
    auto better = [row](ItemId a, ItemId b) {
      if (row[a] != row[b]) return row[a] > row[b];
      return a < b;
    };
    std::partial_sort(order.begin(), order.begin() + k_, order.end(), better);
    for (std::size_t j = 0; j < k_; ++j) {
      items_[u * k_ + j] = order[j];
      scores_[u * k_ + j] = row[order[j]];
    }
  }
}

GreedyKey greedy_key(const RatingMatrix& matrix, UserId user, std::size_t k,
                     Semantics semantics, const Aggregation& aggregation) {
  if (user >= matrix.user_count()) {
    throw NotFoundError("unknown user " + std::to_string(user));
  }
  check_weights(std::min(k, matrix.item_count()), aggregation);
  PersonalRankings rankings(matrix, k);  // single-user use is fine; n is small
  return make_key(rankings.items(user), rankings.scores(user), semantics,
                  aggregation);
}

bool IntermediateGroups::entry_order(const QueueEntry& a,
                                     const QueueEntry& b) const {
  // Max-heap order: a < b means b pops first.
  if (a.priority != b.priority) return a.priority < b.priority;
  if (a.member_count != b.member_count) return a.member_count < b.member_count;
  return groups_[b.group].key < groups_[a.group].key;
}

void IntermediateGroups::insert(UserId user, GreedyKey key,
                                double priority_delta) {
  auto [it, fresh] = index_.try_emplace(key, groups_.size());
  if (fresh) {
    groups_.push_back({std::move(key), {user}, priority_delta});
    popped_.push_back(false);
  } else {
    IntermediateGroup& group = groups_[it->second];
    group.members.push_back(user);
    group.priority += priority_delta;
  }
  const IntermediateGroup& group = groups_[it->second];
  heap_.push_back({group.priority,
                   static_cast<std::uint32_t>(group.members.size()),
                   it->second});
  auto order = [this](const QueueEntry& a, const QueueEntry& b) {
    return entry_order(a, b);
  };
  std::push_heap(heap_.begin(), heap_.end(), order);
}

int IntermediateGroups::pop() {
  auto order = [this](const QueueEntry& a, const QueueEntry& b) {
    return entry_order(a, b);
  };
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), order);
    const QueueEntry entry = heap_.back();
    heap_.pop_back();
    const IntermediateGroup& group = groups_[entry.group];
    if (popped_[entry.group] || entry.priority != group.priority ||
        entry.member_count != group.members.size()) {
      continue;  // stale snapshot, superseded by a later insert
    }
    popped_[entry.group] = true;
    return static_cast<int>(entry.group);
  }
  return -1;
}

IntermediateGroups build_intermediate_groups(const PersonalRankings& rankings,
                                             Semantics semantics,
                                             const Aggregation& aggregation) {
  check_weights(rankings.k(), aggregation);
  IntermediateGroups result;
  const std::size_t n = rankings.user_count();
  result.groups_.reserve(n);
  result.index_.reserve(n);

  for (std::size_t u = 0; u < n; ++u) {
    const UserId user = static_cast<UserId>(u);
    const auto scores = rankings.scores(user);
    GreedyKey key = make_key(rankings.items(user), scores, semantics, aggregation);
    double delta;
    if (semantics == Semantics::LeastMisery) {
      // Every member shares the signature, so the priority is set once and
      // later insertions must not change it.
      delta = result.index_.contains(key)
                  ? 0.0
                  : personal_priority(scores, aggregation);
    } else {
      delta = personal_priority(scores, aggregation);
    }
    result.insert(user, std::move(key), delta);
  }
  return result;
}

IntermediateGroups build_intermediate_groups(const RatingMatrix& matrix,
                                             std::size_t k, Semantics semantics,
                                             const Aggregation& aggregation) {
  return build_intermediate_groups(PersonalRankings(matrix, k), semantics,
                                   aggregation);
}

FormationResult form_partition(const PersonalRankings& rankings,
                               Semantics semantics,
                               const Aggregation& aggregation,
                               std::size_t max_groups) {
  if (max_groups == 0) throw ConfigError("group count needs l >= 1");

  FormationResult result;
  result.intermediate =
      build_intermediate_groups(rankings, semantics, aggregation);

  const std::size_t n = rankings.user_count();
  std::vector<char> assigned(n, 0);
  std::size_t assigned_count = 0;

  if (max_groups > 1) {
    while (result.partition.blocks.size() < max_groups - 1) {
      const int g = result.intermediate.pop();
      if (g < 0) break;
      const IntermediateGroup& group = result.intermediate.groups()[g];
      result.partition.blocks.push_back(group.members);
      result.selected.push_back(static_cast<std::uint32_t>(g));
      result.selected_priorities.push_back(group.priority);
      for (UserId u : group.members) assigned[u] = 1;
      assigned_count += group.members.size();
    }
  }

  if (assigned_count < n) {
    std::vector<UserId> remainder;
    remainder.reserve(n - assigned_count);
    for (std::size_t u = 0; u < n; ++u) {
      if (!assigned[u]) remainder.push_back(static_cast<UserId>(u));
    }
    result.partition.blocks.push_back(std::move(remainder));
    result.has_remainder = true;
  }
  return result;
}

GroupingOutcome grd_form_groups(const RatingMatrix& matrix,
                                const PersonalRankings& rankings,
                                const AlgorithmConfig& config) {
  if (rankings.user_count() != matrix.user_count() ||
      rankings.k() != std::min(config.top_k, matrix.item_count())) {
    throw ConfigError("personal rankings do not match the matrix/config");
  }
  FormationResult formation = form_partition(
      rankings, config.semantics, config.aggregation, config.max_groups);

  GroupingOutcome outcome;
  outcome.config = config;
  outcome.matrix_fingerprint = matrix.fingerprint();

  // Members of a selected group share their personal top-k sequence, and that
  // sequence is exactly the group's recommended list; only the per-position
  // group scores need recomputing under the active semantics.
  for (std::size_t b = 0; b < formation.selected.size(); ++b) {
    const IntermediateGroup& group =
        formation.intermediate.groups()[formation.selected[b]];
    GroupRecommendation rec;
    rec.list.items = group.key.sequence;
    rec.list.scores.reserve(rec.list.items.size());
    for (ItemId item : rec.list.items) {
      rec.list.scores.push_back(item_group_score(
          matrix, formation.partition.blocks[b], item, config.semantics));
    }
    rec.satisfaction = group_satisfaction(rec.list, config.aggregation);
    outcome.objective += rec.satisfaction;
    outcome.per_group.push_back(std::move(rec));
  }

  if (formation.has_remainder) {
    const auto& block = formation.partition.blocks.back();
    GroupRecommendation rec;
    rec.list = group_top_k(matrix, block, config.top_k, config.semantics);
    rec.satisfaction = group_satisfaction(rec.list, config.aggregation);
    outcome.objective += rec.satisfaction;
    outcome.per_group.push_back(std::move(rec));
  }

  outcome.partition = std::move(formation.partition);
  return outcome;
}

GroupingOutcome grd_form_groups(const RatingMatrix& matrix,
                                const AlgorithmConfig& config) {
  return grd_form_groups(matrix, PersonalRankings(matrix, config.top_k), config);
}

GrdResult grd_form_groups_detailed(const RatingMatrix& matrix,
                                   const AlgorithmConfig& config) {
  PersonalRankings rankings(matrix, config.top_k);
  GrdResult result;
  result.outcome = grd_form_groups(matrix, rankings, config);
  result.formation = form_partition(rankings, config.semantics,
                                    config.aggregation, config.max_groups);
  return result;
}

}  // namespace groupforge
