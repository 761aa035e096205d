#pragma once

#include <vector>

#include "patrol/config.hpp"
#include "patrol/instance.hpp"
#include "patrol/walk.hpp"

namespace patrol {

/// Binary-walk construction: weight level i (0-based, phi in
/// (2^-(i+1), 2^-i] after normalization) has its rooted cover split into
/// 2^i pieces; segment k picks piece (k-1) mod 2^i of every level, so
/// heavier levels recur exponentially more often.
struct BinaryWalkSchedule {
  int level_count = 0;                         // deepest nonempty level + 1
  int segment_count = 0;                       // t = 2^(level_count)
  std::vector<std::vector<VertexId>> levels;   // by 0-based level
  std::vector<std::vector<TimedWalk>> pieces;  // [level][piece] cycle groups
};

BinaryWalkSchedule binary_walk_schedule(const MetricInstance& instance,
                                        const std::vector<VertexId>& vertices,
                                        const SolverConfig& config);

struct MinMaxResult {
  Solution solution;
  double cost = 0.0;  // max weighted latency, from latency_of
};

/// Single-robot min-max weighted latency walk (binary walk over dyadic
/// weight levels). Works for infinite D as well: the rooted cover then
/// degenerates to one tour, or split TSP tours in unrooted mode.
MinMaxResult minmax_one_robot(const MetricInstance& instance,
                              const SolverConfig& config = {});

/// R-robot min-max weighted latency: for small R the weight levels are
/// split into R contiguous bands with one binary walk each; otherwise
/// each level's rooted cover is staffed evenly and leftover robots go to
/// the worst level.
MinMaxResult latency_walks(const MetricInstance& instance, int robots,
                           const SolverConfig& config = {});

struct BicriterionResult {
  int robots = 0;
  Solution solution;
  double realized_stretch = 0.0;  // max_v L(v)/r(v)
};

/// Reduction from robot minimization to weighted-latency search: maps
/// phi(v) = r_min/r(v) and binary-searches the smallest fleet whose
/// latency_walks solution meets every r(v) within the configured stretch.
BicriterionResult bicriterion_min_robots(const MetricInstance& instance,
                                         const SolverConfig& config = {});

}  // namespace patrol
