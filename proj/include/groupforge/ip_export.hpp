#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "groupforge/types.hpp"

namespace groupforge {

/// Mixed-integer linear program for the optimal grouping under Min
/// aggregation, ready to serialize as CPLEX LP text. Binary families:
///   u_<i>_<g>  user i assigned to group g          (n*l)
///   y_<j>_<g>  item j is the k-th item of group g  (m*l)
///   w_<j>_<g>  item j is among the top-(k-1)       (m*l)
/// Continuous auxiliaries s_<j>_<g> (group score of item j) and t_<g> (score
/// of the k-th item) linearize the y*score products with big-M bounds.
struct IPModel {
  std::string objective;                 // linear expression, maximized
  std::vector<std::string> constraints;  // "name: expr <op> rhs"
  std::vector<std::string> binaries;     // declared binary variables
  std::vector<std::string> bounds;       // bound lines for continuous vars
  std::vector<std::string> comments;     // header comment lines (no '\')

  std::size_t assignment_var_count = 0;  // u
  std::size_t kth_var_count = 0;         // y
  std::size_t topset_var_count = 0;      // w
  std::size_t auxiliary_var_count = 0;   // s + t
  double big_m = 0.0;

  /// Sections: Maximize / Subject To / Bounds / Binaries / End, with comment
  /// lines prefixed by '\'.
  std::string to_lp_text() const;
};

/// Builds the integer program for the given instance. Only Min aggregation
/// is supported.
IPModel export_ip_model(const RatingMatrix& matrix, std::size_t k,
                        std::size_t max_groups, Semantics semantics,
                        const Aggregation& aggregation);

}  // namespace groupforge
