#include "groupforge/ip_export.hpp"

#include <cmath>
#include <sstream>

#include "groupforge/io.hpp"

namespace groupforge {

namespace {

/// Appends "+/- [coef] name" to an LP expression.
void term(std::string& expr, double coef, const std::string& name) {
  if (coef == 0.0) return;
  const bool negative = coef < 0.0;
  const double mag = std::abs(coef);
  if (expr.empty()) {
    if (negative) expr += "- ";
  } else {
    expr += negative ? " - " : " + ";
  }
  if (mag != 1.0) expr += format_score(mag) + " ";
  expr += name;
}

std::string var(const char* family, std::size_t a, std::size_t b) {
  return std::string(family) + "_" + std::to_string(a) + "_" +
         std::to_string(b);
}

}  // namespace

std::string IPModel::to_lp_text() const {
  std::ostringstream out;
  for (const std::string& line : comments) out << "\\ " << line << "\n";
  out << "Maximize\n obj: " << objective << "\n";
  out << "Subject To\n";
  for (const std::string& c : constraints) out << " " << c << "\n";
  out << "Bounds\n";
  for (const std::string& b : bounds) out << " " << b << "\n";
  out << "Binaries\n";
  for (const std::string& b : binaries) out << " " << b << "\n";
  out << "End\n";
  return std::move(out).str();
}

IPModel export_ip_model(const RatingMatrix& matrix, std::size_t k,
                        std::size_t max_groups, Semantics semantics,
                        const Aggregation& aggregation) {
  if (aggregation.kind != AggregationKind::Min) {
    throw ConfigError("the integer program is formulated for Min aggregation");
  }
  if (max_groups == 0) throw ConfigError("group count needs l >= 1");
  if (k == 0) throw ConfigError("top-k needs k >= 1");

  const std::size_t n = matrix.user_count();
  const std::size_t m = matrix.item_count();
  const std::size_t l = max_groups;
  const std::size_t k_eff = std::min(k, m);
  const bool lm = semantics == Semantics::LeastMisery;
  if (lm && l > n) {
    throw ConfigError("the LM program requires l <= n (non-empty groups)");
  }
  const double big_m =
      lm ? matrix.scale().r_max : static_cast<double>(n) * matrix.scale().r_max;

  IPModel model;
  model.big_m = big_m;
  model.assignment_var_count = n * l;
  model.kth_var_count = m * l;
  model.topset_var_count = m * l;
  model.auxiliary_var_count = m * l + l;  // s_j_g and t_g

  model.comments = {
      "group formation under " +
          std::string(lm ? "least misery" : "aggregate voting") +
          " semantics, Min aggregation",
      "instance: users=" + std::to_string(n) + " items=" + std::to_string(m) +
          " groups=" + std::to_string(l) + " k=" + std::to_string(k_eff),
      "binaries: u_<user>_<group> membership, y_<item>_<group> k-th item,",
      "          w_<item>_<group> one of the top-(k-1) items",
      "continuous: s_<item>_<group> group score of the item, t_<group> score",
      "            of the group's k-th item (the Min-aggregated satisfaction)",
      "products y*s are linearized with big-M = " + format_score(big_m) +
          (lm ? " (= r_max)" : " (= n * r_max)"),
  };
  if (lm) {
    model.comments.push_back(
        "groups are forced non-empty: under LM, splitting a block never "
        "lowers the objective, so an optimum with exactly l groups exists");
  } else {
    model.comments.push_back(
        "empty groups are allowed and contribute zero (their AV scores "
        "vanish), matching the at-most-l formulation");
  }

  // Objective: total satisfaction of the formed groups.
  for (std::size_t g = 1; g <= l; ++g) {
    term(model.objective, 1.0, "t_" + std::to_string(g));
  }

  auto add = [&model](const std::string& name, const std::string& expr,
                      const char* op, double rhs) {
    model.constraints.push_back(name + ": " + expr + " " + op + " " +
                                format_score(rhs));
  };

  // Every user belongs to exactly one group.
  for (std::size_t i = 1; i <= n; ++i) {
    std::string expr;
    for (std::size_t g = 1; g <= l; ++g) term(expr, 1.0, var("u", i, g));
    add("assign_" + std::to_string(i), expr, "=", 1.0);
  }

  for (std::size_t g = 1; g <= l; ++g) {
    // The k-th item is a single item; k-1 further items rank above it.
    std::string ysum, wsum;
    for (std::size_t j = 1; j <= m; ++j) {
      term(ysum, 1.0, var("y", j, g));
      term(wsum, 1.0, var("w", j, g));
    }
    add("ksel_" + std::to_string(g), ysum, "=", 1.0);
    add("wsel_" + std::to_string(g), wsum, "=",
        static_cast<double>(k_eff) - 1.0);
    if (lm) {
      std::string usum;
      for (std::size_t i = 1; i <= n; ++i) term(usum, 1.0, var("u", i, g));
      add("nonempty_" + std::to_string(g), usum, ">=", 1.0);
    }
  }

  for (std::size_t g = 1; g <= l; ++g) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::string s_jg = var("s", j, g);
      const std::string y_jg = var("y", j, g);
      const std::string w_jg = var("w", j, g);
      const std::string t_g = "t_" + std::to_string(g);

      // An item cannot be the k-th pick and a top-(k-1) pick at once.
      {
        std::string expr;
        term(expr, 1.0, w_jg);
        term(expr, 1.0, y_jg);
        add("disj_" + std::to_string(j) + "_" + std::to_string(g), expr, "<=",
            1.0);
      }

      if (lm) {
        // s_jg <= sc(u_i, j) for every member: s + M*u <= sc + M.
        for (std::size_t i = 1; i <= n; ++i) {
          std::string expr;
          term(expr, 1.0, s_jg);
          term(expr, big_m, var("u", i, g));
          add("smin_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                  std::to_string(g),
              expr, "<=",
              matrix.at(static_cast<UserId>(i - 1),
                        static_cast<ItemId>(j - 1)) +
                  big_m);
        }
      } else {
        // s_jg = sum of member ratings: s - sum_i sc(u_i, j)*u_ig = 0.
        std::string expr;
        term(expr, 1.0, s_jg);
        for (std::size_t i = 1; i <= n; ++i) {
          term(expr, -matrix.at(static_cast<UserId>(i - 1),
                                static_cast<ItemId>(j - 1)),
               var("u", i, g));
        }
        add("sdef_" + std::to_string(j) + "_" + std::to_string(g), expr, "=",
            0.0);
      }

      // t_g picks up the k-th item's score: t <= s_j + M*(1-y_j).
      {
        std::string expr;
        term(expr, 1.0, t_g);
        term(expr, -1.0, s_jg);
        term(expr, big_m, y_jg);
        add("kth_" + std::to_string(j) + "_" + std::to_string(g), expr, "<=",
            big_m);
      }
      // Top-(k-1) items score at least the k-th: s_j >= t - M*(1-w_j).
      {
        std::string expr;
        term(expr, 1.0, s_jg);
        term(expr, -1.0, t_g);
        term(expr, -big_m, w_jg);
        add("ord_" + std::to_string(j) + "_" + std::to_string(g), expr, ">=",
            -big_m);
      }
    }
  }

  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t g = 1; g <= l; ++g) {
      model.binaries.push_back(var("u", i, g));
    }
  }
  for (std::size_t j = 1; j <= m; ++j) {
    for (std::size_t g = 1; g <= l; ++g) {
      model.binaries.push_back(var("y", j, g));
      model.binaries.push_back(var("w", j, g));
    }
  }
  for (std::size_t j = 1; j <= m; ++j) {
    for (std::size_t g = 1; g <= l; ++g) {
      model.bounds.push_back("0 <= " + var("s", j, g) +
                             " <= " + format_score(big_m));
    }
  }
  for (std::size_t g = 1; g <= l; ++g) {
    model.bounds.push_back("0 <= t_" + std::to_string(g) +
                           " <= " + format_score(big_m));
  }

  return model;
}

}  // namespace groupforge
