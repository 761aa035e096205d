#pragma once

#include <vector>

#include "patrol/config.hpp"
#include "patrol/instance.hpp"
#include "patrol/walk.hpp"

namespace patrol {

/// Dyadic latency partition: level i (1-based) holds the vertices with
/// r_min 2^(i-1) <= r(v) < r_min 2^i.
struct PartitionSchedule {
  double r_min = 0.0;
  double r_max = 0.0;
  double rho = 0.0;  // r_max/r_min, +1 when the ratio is an exact power of 2
  int level_count = 0;
  std::vector<std::vector<VertexId>> levels;  // level_count entries
  /// Cycles bundled per walk at level i: max(1, floor(r_min 2^(i+1) / D)).
  int bundle_size(int level, double discharge) const;
};

PartitionSchedule partition_levels(const MetricInstance& instance);

/// Level-partitioned rooted-cycle-cover planner for minimizing robots under
/// latency and recharge constraints (finite D required).
Solution approximation_algorithm(const MetricInstance& instance,
                                 const SolverConfig& config = {});

/// Infinite-discharge variant: per level, the better of a bounded cycle
/// cover and an equally spaced TSP tour.
Solution approximation_no_recharge(const MetricInstance& instance,
                                   const SolverConfig& config = {});

}  // namespace patrol
