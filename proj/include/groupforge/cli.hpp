#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "groupforge/types.hpp"

namespace groupforge::cli {

/// One measurement of the benchmark sweep.
struct BenchRow {
  std::string varied_parameter;  // users | items | groups | k
  std::uint64_t value = 0;
  std::string algorithm;  // grd | baseline | exact
  Semantics semantics = Semantics::LeastMisery;
  AggregationKind aggregation = AggregationKind::Min;
  std::size_t users = 0, items = 0, top_k = 0, groups = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double objective = 0.0;
  double avg_satisfaction = 0.0;
  std::int64_t runtime_ms = 0;
};

struct BenchConfig {
  std::string vary = "users";
  std::vector<std::uint64_t> values;
  std::size_t trials = 1;
  std::vector<std::string> algorithms = {"grd", "baseline"};
  std::size_t users = 1000, items = 200, top_k = 5, groups = 10;
  Semantics semantics = Semantics::LeastMisery;
  AggregationKind aggregation = AggregationKind::Min;
  std::uint64_t seed = 0;
  bool timings = false;  // real runtime_ms values instead of 0
  bool force = false;    // admit `exact` beyond the enumeration budget
  std::uint64_t node_limit = 10'000'000;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::string summary;  // plain-text table, means per (value, algorithm)
};

/// Runs the sweep; one row per (algorithm, parameter value, trial). Trials
/// run concurrently up to GROUPFORGE_THREADS, merged deterministically.
BenchResult bench_sweep(const BenchConfig& config);

std::string bench_rows_csv(const std::vector<BenchRow>& rows);
std::string bench_rows_json(const std::vector<BenchRow>& rows);

/// Entry point behind main(): parses argv, runs the subcommand, returns the
/// process exit status (0 ok, 2 usage error, 1 runtime failure).
int dispatch(int argc, const char* const* argv);

}  // namespace groupforge::cli
