#include "groupforge/fixtures.hpp"

#include <string>

namespace groupforge {

namespace {

RatingMatrix make(std::vector<std::vector<double>> user_rows) {
  return RatingMatrix::from_user_rows(user_rows, RatingScale{1.0, 5.0});
}

}  // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {
      "ex1", "ex2", "ex3", "ex4", "ex5", "proof1", "proof2"};
  return names;
}

bool is_fixture(std::string_view name) {
  for (const std::string& known : fixture_names()) {
    if (known == name) return true;
  }
  return false;
}

RatingMatrix fixture_matrix(std::string_view name) {
  // Six users rating three items; the running example instance.
  if (name == "ex1") {
    return make({{1, 4, 3},
                 {2, 3, 5},
                 {2, 5, 1},
                 {2, 5, 1},
                 {3, 1, 1},
                 {1, 2, 5}});
  }
  // Same population, different ratings; the aggregate-voting walkthrough.
  if (name == "ex2") {
    return make({{3, 1, 4},
                 {1, 4, 3},
                 {2, 5, 1},
                 {2, 5, 1},
                 {1, 2, 3},
                 {3, 2, 1}});
  }
  // Two users whose shared bottom item is not the group's bottom item.
  if (name == "ex3") {
    return make({{5, 4, 1}, {1, 4, 5}});
  }
  // Four users, two items; grouping against one's own order can still win.
  if (name == "ex4") {
    return make({{5, 4}, {4, 5}, {4, 5}, {3, 2}});
  }
  // The instance where the greedy sum-aggregation grouping is suboptimal.
  if (name == "ex5") {
    return make({{1, 4, 3},
                 {2, 3, 5},
                 {2, 5, 1},
                 {2, 5, 1},
                 {2, 4, 3},
                 {1, 2, 5}});
  }
  // Three users, two items; the sub-/super-modularity counterexamples.
  if (name == "proof1") {
    return make({{4, 2}, {2, 3}, {1, 5}});
  }
  if (name == "proof2") {
    return make({{2, 3}, {3, 5}, {5, 3}});
  }
  throw NotFoundError("unknown fixture '" + std::string(name) + "'");
}

ModularityFixture modularity_fixture(std::string_view name) {
  if (name == "proof1") {
    // P1 all singletons, P2 = {u1,u3},{u2}; move u2 into u1's block.
    return {fixture_matrix("proof1"),
            Partition{{{0}, {1}, {2}}},
            Partition{{{0, 2}, {1}}},
            1,
            MoveTarget::block_of(0),
            1,
            Aggregation::min()};
  }
  if (name == "proof2") {
    // P1 all singletons, P2 = {u1,u2},{u3}; move u3 into u1's block.
    return {fixture_matrix("proof2"),
            Partition{{{0}, {1}, {2}}},
            Partition{{{0, 1}, {2}}},
            2,
            MoveTarget::block_of(0),
            1,
            Aggregation::min()};
  }
  throw NotFoundError("unknown modularity fixture '" + std::string(name) + "'");
}

}  // namespace groupforge
