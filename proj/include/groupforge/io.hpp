#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "groupforge/analysis.hpp"
#include "groupforge/types.hpp"

namespace groupforge {

enum class MissingPolicy { Error, FillMin, FillItemMean };

struct IngestPolicy {
  MissingPolicy missing = MissingPolicy::Error;
  RatingScale scale;
};

/// Parses "user_id,item_id,rating" triples (optional header line). Ids are
/// arbitrary strings mapped to dense indices in first-appearance order; the
/// mapping is preserved in the matrix labels. The matrix must be complete
/// unless the policy opts into imputation; fill_item_mean rounds the item
/// mean to the nearest integer and clamps it to the scale.
RatingMatrix load_ratings_csv(const std::filesystem::path& path,
                              const IngestPolicy& policy);
RatingMatrix load_ratings_csv(std::istream& in, const IngestPolicy& policy);

/// n*m ratings drawn independently and uniformly from the integer points of
/// the scale; fully determined by the seed (and stable across platforms).
RatingMatrix generate_synthetic(std::size_t n_users, std::size_t n_items,
                                RatingScale scale, std::uint64_t seed);

void write_ratings_csv(const RatingMatrix& matrix,
                       const std::filesystem::path& path);
void write_ratings_csv(const RatingMatrix& matrix, std::ostream& out);

enum class ReportFormat { Json, Csv };

struct ReportMetrics {
  double avg_group_satisfaction = 0.0;
  SizeSummary size_summary;
  std::int64_t runtime_ms = 0;
};

/// Renders the outcome report. The JSON schema and the CSV column order are
/// fixed; see docs/README. The CSV variant flattens one row per group.
std::string render_report(const RatingMatrix& matrix,
                          const GroupingOutcome& outcome,
                          const ReportMetrics& metrics, ReportFormat format);

void write_outcome(const RatingMatrix& matrix, const GroupingOutcome& outcome,
                   const ReportMetrics& metrics,
                   const std::filesystem::path& path, ReportFormat format);

/// Shortest decimal string that round-trips the value ("5", "2.75", ...).
std::string format_score(double value);

}  // namespace groupforge
