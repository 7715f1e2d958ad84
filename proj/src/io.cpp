#include "groupforge/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace groupforge {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t bounded_draw(std::uint64_t& state, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = splitmix64(state);
    if (r >= threshold) return r % bound;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

struct RawTriple {
  std::uint32_t user, item;
  double rating;
};

}  // namespace

RatingMatrix load_ratings_csv(std::istream& in, const IngestPolicy& policy) {
  std::unordered_map<std::string, std::uint32_t> user_ids, item_ids;
  std::vector<std::string> user_labels, item_labels;
  std::vector<RawTriple> triples;

  auto intern = [](std::unordered_map<std::string, std::uint32_t>& ids,
                   std::vector<std::string>& labels,
                   std::string_view token) -> std::uint32_t {
    auto [it, fresh] = ids.try_emplace(std::string(token),
                                       static_cast<std::uint32_t>(labels.size()));
    if (fresh) labels.emplace_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  bool saw_any = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    if (!saw_any && iequals(view, "user_id,item_id,rating")) {
      saw_any = true;
      continue;
    }
    saw_any = true;

    const std::size_t c1 = view.find(',');
    const std::size_t c2 = c1 == std::string_view::npos
                               ? std::string_view::npos
                               : view.find(',', c1 + 1);
    if (c2 == std::string_view::npos ||
        view.find(',', c2 + 1) != std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected user_id,item_id,rating");
    }
    const std::string_view user_tok = trim(view.substr(0, c1));
    const std::string_view item_tok = trim(view.substr(c1 + 1, c2 - c1 - 1));
    const std::string_view rating_tok = trim(view.substr(c2 + 1));
    if (user_tok.empty() || item_tok.empty() || rating_tok.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty field");
    }

    double rating = 0.0;
    const auto [ptr, ec] = std::from_chars(
        rating_tok.data(), rating_tok.data() + rating_tok.size(), rating);
    if (ec != std::errc() || ptr != rating_tok.data() + rating_tok.size()) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": rating is not a number: '" + std::string(rating_tok) +
                       "'");
    }
    if (!(rating >= policy.scale.r_min) || !(rating <= policy.scale.r_max)) {
      throw RatingRangeError("line " + std::to_string(line_no) + ": rating " +
                             format_score(rating) + " outside scale [" +
                             format_score(policy.scale.r_min) + ", " +
                             format_score(policy.scale.r_max) + "]");
    }
    triples.push_back({intern(user_ids, user_labels, user_tok),
                       intern(item_ids, item_labels, item_tok), rating});
  }

  if (triples.empty()) {
    throw ParseError("no rating rows found");
  }

  const std::size_t n = user_labels.size();
  const std::size_t m = item_labels.size();
  std::vector<double> ratings(n * m, 0.0);
  std::vector<char> present(n * m, 0);
  for (const RawTriple& t : triples) {
    const std::size_t idx = static_cast<std::size_t>(t.user) * m + t.item;
    if (present[idx]) {
      throw DuplicateEntryError("duplicate rating for (" +
                                user_labels[t.user] + ", " +
                                item_labels[t.item] + ")");
    }
    present[idx] = 1;
    ratings[idx] = t.rating;
  }

  std::size_t missing_total = 0;
  std::vector<std::string> missing_examples;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t i = 0; i < m; ++i) {
      if (present[u * m + i]) continue;
      ++missing_total;
      if (missing_examples.size() < 10) {
        missing_examples.push_back("(" + user_labels[u] + ", " +
                                   item_labels[i] + ")");
      }
    }
  }
  if (missing_total > 0) {
    switch (policy.missing) {
      case MissingPolicy::Error: {
        std::string msg = "matrix incomplete, " + std::to_string(missing_total) +
                          " missing pair(s):";
        for (const std::string& ex : missing_examples) msg += " " + ex;
        if (missing_total > missing_examples.size()) msg += " ...";
        throw CompletenessError(msg);
      }
      case MissingPolicy::FillMin:
        for (std::size_t idx = 0; idx < ratings.size(); ++idx) {
          if (!present[idx]) ratings[idx] = policy.scale.r_min;
        }
        break;
      case MissingPolicy::FillItemMean:
        for (std::size_t i = 0; i < m; ++i) {
          double sum = 0.0;
          std::size_t count = 0;
          for (std::size_t u = 0; u < n; ++u) {
            if (present[u * m + i]) {
              sum += ratings[u * m + i];
              ++count;
            }
          }
          // Every known item has at least one rating (it came from a row).
          const double mean = sum / static_cast<double>(count);
          const double filled = std::clamp(std::round(mean),
                                           policy.scale.r_min,
                                           policy.scale.r_max);
          for (std::size_t u = 0; u < n; ++u) {
            if (!present[u * m + i]) ratings[u * m + i] = filled;
          }
        }
        break;
    }
  }

  return RatingMatrix(n, m, std::move(ratings), policy.scale,
                      std::move(user_labels), std::move(item_labels));
}

RatingMatrix load_ratings_csv(const std::filesystem::path& path,
                              const IngestPolicy& policy) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  try {
    return load_ratings_csv(in, policy);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

RatingMatrix generate_synthetic(std::size_t n_users, std::size_t n_items,
                                RatingScale scale, std::uint64_t seed) {
  if (n_users == 0 || n_items == 0) {
    throw ConfigError("synthetic generation needs n, m >= 1");
  }
  const double lo_d = std::ceil(scale.r_min);
  const double hi_d = std::floor(scale.r_max);
  if (lo_d > hi_d) {
    throw ConfigError("rating scale contains no integer points");
  }
  const std::int64_t lo = static_cast<std::int64_t>(lo_d);
  const std::uint64_t span = static_cast<std::uint64_t>(hi_d - lo_d) + 1;

  std::uint64_t state = seed;
  std::vector<double> ratings(n_users * n_items);
  for (double& r : ratings) {
    r = static_cast<double>(lo + static_cast<std::int64_t>(
                                     bounded_draw(state, span)));
  }
  return RatingMatrix(n_users, n_items, std::move(ratings), scale);
}

std::string format_score(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_ratings_csv(const RatingMatrix& matrix, std::ostream& out) {
  out << "user_id,item_id,rating\n";
  for (std::size_t u = 0; u < matrix.user_count(); ++u) {
    for (std::size_t i = 0; i < matrix.item_count(); ++i) {
      out << matrix.user_labels()[u] << ',' << matrix.item_labels()[i] << ','
          << format_score(matrix.at(static_cast<UserId>(u),
                                    static_cast<ItemId>(i)))
          << '\n';
    }
  }
}

void write_ratings_csv(const RatingMatrix& matrix,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_ratings_csv(matrix, out);
  if (!out.flush()) throw IoError("failed writing " + path.string());
}

namespace {

nlohmann::ordered_json report_json(const RatingMatrix& matrix,
                                   const GroupingOutcome& outcome,
                                   const ReportMetrics& metrics) {
  using json = nlohmann::ordered_json;
  json config{
      {"semantics", to_string(outcome.config.semantics)},
      {"aggregation", to_string(outcome.config.aggregation.kind)},
      {"k", outcome.config.top_k},
      {"groups", outcome.config.max_groups},
      {"seed", outcome.config.seed},
  };
  if (outcome.config.aggregation.kind == AggregationKind::WeightedSum) {
    config["weights"] = outcome.config.aggregation.weights;
  }

  json groups = json::array();
  for (std::size_t b = 0; b < outcome.partition.blocks.size(); ++b) {
    json members = json::array();
    for (UserId u : outcome.partition.blocks[b]) {
      members.push_back(matrix.user_labels()[u]);
    }
    json items = json::array();
    for (ItemId i : outcome.per_group[b].list.items) {
      items.push_back(matrix.item_labels()[i]);
    }
    groups.push_back(json{{"members", std::move(members)},
                          {"top_k_items", std::move(items)},
                          {"top_k_scores", outcome.per_group[b].list.scores},
                          {"satisfaction", outcome.per_group[b].satisfaction}});
  }

  return json{
      {"schema", "groupforge.report.v1"},
      {"config", std::move(config)},
      {"users", matrix.user_labels()},
      {"items", matrix.item_labels()},
      {"groups", std::move(groups)},
      {"objective", outcome.objective},
      {"avg_group_satisfaction", metrics.avg_group_satisfaction},
      {"size_summary",
       json{{"min", metrics.size_summary.min},
            {"q1", metrics.size_summary.q1},
            {"median", metrics.size_summary.median},
            {"q3", metrics.size_summary.q3},
            {"max", metrics.size_summary.max}}},
      {"runtime_ms", metrics.runtime_ms},
  };
}

std::string report_csv(const RatingMatrix& matrix,
                       const GroupingOutcome& outcome,
                       const ReportMetrics& metrics) {
  std::ostringstream out;
  out << "group_index,members,top_k_items,top_k_scores,satisfaction,"
         "semantics,aggregation,k,groups,seed,objective,"
         "avg_group_satisfaction,size_min,size_q1,size_median,size_q3,"
         "size_max,runtime_ms\n";
  for (std::size_t b = 0; b < outcome.partition.blocks.size(); ++b) {
    out << b + 1 << ',';
    const auto& block = outcome.partition.blocks[b];
    for (std::size_t i = 0; i < block.size(); ++i) {
      out << (i ? ";" : "") << matrix.user_labels()[block[i]];
    }
    out << ',';
    const TopKList& list = outcome.per_group[b].list;
    for (std::size_t i = 0; i < list.items.size(); ++i) {
      out << (i ? ";" : "") << matrix.item_labels()[list.items[i]];
    }
    out << ',';
    for (std::size_t i = 0; i < list.scores.size(); ++i) {
      out << (i ? ";" : "") << format_score(list.scores[i]);
    }
    out << ',' << format_score(outcome.per_group[b].satisfaction) << ','
        << to_string(outcome.config.semantics) << ','
        << to_string(outcome.config.aggregation.kind) << ','
        << outcome.config.top_k << ',' << outcome.config.max_groups << ','
        << outcome.config.seed << ',' << format_score(outcome.objective) << ','
        << format_score(metrics.avg_group_satisfaction) << ','
        << format_score(metrics.size_summary.min) << ','
        << format_score(metrics.size_summary.q1) << ','
        << format_score(metrics.size_summary.median) << ','
        << format_score(metrics.size_summary.q3) << ','
        << format_score(metrics.size_summary.max) << ',' << metrics.runtime_ms
        << '\n';
  }
  return std::move(out).str();
}

}  // namespace

std::string render_report(const RatingMatrix& matrix,
                          const GroupingOutcome& outcome,
                          const ReportMetrics& metrics, ReportFormat format) {
  if (outcome.per_group.size() != outcome.partition.blocks.size()) {
    throw ConfigError("outcome per-group data does not match its partition");
  }
  if (format == ReportFormat::Json) {
    return report_json(matrix, outcome, metrics).dump(2) + "\n";
  }
  return report_csv(matrix, outcome, metrics);
}

void write_outcome(const RatingMatrix& matrix, const GroupingOutcome& outcome,
                   const ReportMetrics& metrics,
                   const std::filesystem::path& path, ReportFormat format) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << render_report(matrix, outcome, metrics, format);
  if (!out.flush()) throw IoError("failed writing " + path.string());
}

}  // namespace groupforge
