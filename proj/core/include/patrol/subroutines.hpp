#pragma once

#include <unordered_map>
#include <vector>

#include "patrol/config.hpp"
#include "patrol/instance.hpp"
#include "patrol/walk.hpp"

namespace patrol {

/// Heuristic travelling-salesman cycle over `vertices`: best nearest-neighbor
/// start followed by 2-opt to a local optimum. Deterministic. The returned
/// walk is a cycle (implicit closing edge), rotated to start at the smallest
/// vertex id.
TimedWalk tsp_tour(const std::vector<VertexId>& vertices,
                   const MetricInstance& instance);

struct OrienteeringQuery {
  std::vector<VertexId> candidates;  // may include s and t
  VertexId start;
  VertexId end;
  double budget;  // T_max
  std::unordered_map<VertexId, double> scores;
};

struct OrienteeringResult {
  TimedWalk path;  // explicit s ... t sequence, zero holds
  double score = 0.0;
  double length = 0.0;
  bool exact = false;
};

/// Budgeted s-t path maximizing the sum of scores over distinct visited
/// vertices. Candidates with l(s,z) + l(z,t) > budget are dropped up front;
/// at most `config.orienteering_exact_threshold` survivors are solved
/// exactly (branch and bound with a score upper bound, min length among
/// max-score paths), more fall back to greedy insertion with 2-opt repair.
/// Throws if l(s,t) exceeds the budget.
OrienteeringResult orienteering(const OrienteeringQuery& query,
                                const MetricInstance& instance,
                                const SolverConfig& config = {});

struct CycleCover {
  std::vector<TimedWalk> cycles;
  double bound = 0.0;  // lambda or D
  bool rooted = false;
};

/// Unrooted bounded-length cycle cover by TSP tour splitting: the tour is
/// cut into maximal consecutive segments whose closing cycle fits within
/// lambda, over all tour rotations; the best cover (fewest cycles, then
/// smallest longest cycle, then shortest total) is returned. Singleton
/// cycles make every positive lambda coverable.
CycleCover mccp(const std::vector<VertexId>& vertices, double lambda,
                const MetricInstance& instance);

/// Rooted bounded-length cycle cover: repeated depot-to-depot orienteering
/// with unit scores on uncovered vertices, shortcut to simple cycles.
/// Every cycle contains the depot and has length at most budget. Throws if
/// some vertex cannot sit on any rooted cycle within the budget.
CycleCover rmccp(const std::vector<VertexId>& vertices, double budget,
                 const MetricInstance& instance,
                 const SolverConfig& config = {});

}  // namespace patrol
