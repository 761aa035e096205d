#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "patrol/config.hpp"
#include "patrol/instance.hpp"
#include "patrol/types.hpp"

namespace patrol {

/// One stop of a timed walk: the vertex and the holding time spent there.
struct Step {
  VertexId vertex;
  double hold = 0.0;
  friend bool operator==(const Step&, const Step&) = default;
};

/// Finite walk interpreted periodically. The closing edge from the last
/// vertex back to the first is implicit; cycles are written without
/// repeating their start vertex.
struct TimedWalk {
  std::vector<Step> steps;

  bool empty() const { return steps.empty(); }
  VertexId first() const { return steps.front().vertex; }
  VertexId last() const { return steps.back().vertex; }

  TimedWalk& append(VertexId v, double hold = 0.0) {
    steps.push_back({v, hold});
    return *this;
  }

  friend bool operator==(const TimedWalk&, const TimedWalk&) = default;
};

/// Open length: edge times between consecutive steps plus all holds.
double walk_length(const TimedWalk& w, const MetricInstance& instance);

/// One full period of the periodic repetition: walk_length plus the
/// implicit closing edge.
double walk_period(const TimedWalk& w, const MetricInstance& instance);

/// Distinct vertices visited by the walk.
std::vector<VertexId> walk_vertices(const TimedWalk& w);

/// A walk plus the robots assigned to it (one start phase each).
struct PlannedWalk {
  TimedWalk walk;
  std::vector<double> offsets{0.0};
  std::vector<VertexId> responsible;  // vertices this walk answers for
};

struct Solution {
  std::vector<PlannedWalk> walks;
  std::string algorithm;
  std::string params;  // provenance, free-form

  int robot_count() const;
};

struct VertexLatency {
  VertexId vertex = -1;
  double latency = kInfinity;
  double weighted = kInfinity;
  double gap_start = 0.0;  // witnessing departure time
  double gap_end = kInfinity;  // next arrival
};

struct LatencyReport {
  std::vector<VertexLatency> per_vertex;            // one entry per vertex in V
  std::vector<double> depot_latency_per_walk;       // per-robot depot gap
  double max_latency = 0.0;
  double max_weighted_latency = 0.0;

  const VertexLatency& at(VertexId v) const;
};

/// Steady-state latency of every monitoring vertex under the solution.
///
/// Each vertex is measured over the common period of the walks that visit
/// it: integral periods align exactly (lcm), otherwise a common multiple of
/// the longest period is searched up to config.hyperperiod_max_multiple.
/// A never-visited vertex reports +inf rather than failing.
LatencyReport latency_of(const Solution& solution,
                         const MetricInstance& instance,
                         const SolverConfig& config = {});

/// Linear-time feasibility of the periodic closure of one walk: traverses
/// the walk twice and checks that no visited vertex's time to expiry goes
/// negative. The recharge constraint is folded in as r(depot) = D.
/// `latency_override` replaces r(v) for the vertices it names.
bool periodic_feasibility(
    const TimedWalk& w, const MetricInstance& instance,
    const std::unordered_map<VertexId, double>* latency_override = nullptr);

/// k robots equally spaced on one periodic walk (offsets j * period / k).
PlannedWalk equally_space(const TimedWalk& w, int k,
                          const MetricInstance& instance);

/// Joins depot-rooted cycles into a single walk through the shared depot.
TimedWalk concat_cycles(const std::vector<TimedWalk>& cycles,
                        const MetricInstance& instance);

std::string serialize_solution(const Solution& solution);
Solution parse_solution(const std::string& text);
Solution load_solution(const std::string& path);
void save_solution(const Solution& solution, const std::string& path);

}  // namespace patrol
