#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "patrol/config.hpp"
#include "patrol/instance.hpp"

namespace patrol {

struct BenchRow {
  int n = 0;
  std::uint64_t seed = 0;
  std::string algorithm;
  double objective = 0.0;  // robot count or min-max cost
  bool verified = false;
  bool failed = false;     // planner threw; row kept, excluded from stats
  double wall_ms = 0.0;    // planning time only, excluded from the report
};

struct BenchAggregate {
  int n = 0;
  std::string algorithm;
  int rows = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;            // sorted by (n, seed, algorithm)
  std::vector<BenchAggregate> aggregates;

  /// Deterministic tab-separated rows; wall time is deliberately omitted
  /// so identical seeds produce byte-identical reports.
  std::string rows_tsv() const;
  std::string aggregates_tsv() const;
  /// Timing sidecar (not byte-stable across runs).
  std::string timing_tsv() const;
  /// Plot-ready long format: one (n, seed, algorithm, objective) per line.
  std::string long_format() const;
};

struct BenchPlan {
  std::vector<int> sizes{10, 20, 30, 40};
  int seeds_per_size = 10;
  std::uint64_t seed_base = 0;
  // Registered names: approx, greedy, recursive, orienteering,
  // latency_walks (robots cycles over 1..4 by seed).
  std::vector<std::string> algorithms{"approx", "greedy", "recursive",
                                      "orienteering"};
  GeneratorParams generator;  // n and seed are overridden per row
  int threads = 0;            // 0 = hardware concurrency
};

/// Runs every (size, seed, algorithm) combination, verifies each solution
/// before it may enter an aggregate, and reports rows plus per-size
/// statistics. Deterministic given the plan.
BenchReport run_suite(const BenchPlan& plan, const SolverConfig& config = {});

}  // namespace patrol
