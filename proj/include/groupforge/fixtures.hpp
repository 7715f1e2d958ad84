#pragma once

#include <string_view>
#include <vector>

#include "groupforge/core.hpp"
#include "groupforge/types.hpp"

namespace groupforge {

/// Names of the bundled example instances: ex1..ex5, proof1, proof2.
const std::vector<std::string>& fixture_names();

bool is_fixture(std::string_view name);

/// The rating table of a bundled instance (NotFoundError otherwise).
RatingMatrix fixture_matrix(std::string_view name);

/// A modularity counterexample: two partitions and a single-user move on
/// one of the proof tables, with the configuration they are evaluated under.
struct ModularityFixture {
  RatingMatrix matrix;
  Partition p1, p2;
  UserId user = 0;
  MoveTarget target;
  std::size_t top_k = 1;
  Aggregation aggregation = Aggregation::min();
};

/// proof1 (violates sub-modularity) or proof2 (violates super-modularity).
ModularityFixture modularity_fixture(std::string_view name);

}  // namespace groupforge
