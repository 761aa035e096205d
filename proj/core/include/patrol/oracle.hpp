#pragma once

#include <optional>
#include <vector>

#include "patrol/config.hpp"
#include "patrol/instance.hpp"
#include "patrol/walk.hpp"

namespace patrol {

enum class Verdict { kFeasible, kInfeasible, kUnknown };

const char* to_string(Verdict v);

/// Exact decision search for tiny integer-scaled instances under the
/// synchronized discrete-move model: each time unit every robot holds,
/// continues its edge, or starts a new one. Robots start at vertices with
/// fresh expiries and full charge; a reachable cycle of valid states is a
/// periodic witness. Exceeding the state cap yields kUnknown, never a
/// wrong answer.
Verdict exact_decision(const MetricInstance& instance, int robots,
                       const SolverConfig& config = {});

/// Same question restricted to partitioned solutions: some split of the
/// vertices into at most `robots` groups, each single-robot feasible.
Verdict exact_decision_partitioned(const MetricInstance& instance, int robots,
                                   const SolverConfig& config = {});

/// Smallest fleet for which a partitioned solution exists (exhaustive over
/// vertex partitions; kUnknown if any group search hits the cap).
struct PartitionedMinimum {
  Verdict verdict = Verdict::kUnknown;
  int robots = 0;
};
PartitionedMinimum exact_partitioned_minimum(const MetricInstance& instance,
                                             const SolverConfig& config = {});

/// Independent single-walk existence check: exhaustive enumeration of
/// zero-hold vertex sequences up to config.walk_enum_max_steps, with its
/// own gap arithmetic. Used to cross-validate exact_decision(R=1).
bool exhaustive_single_walk(const MetricInstance& instance,
                            const SolverConfig& config = {});

/// Exact minimum rooted cycle cover size (cycles through the depot, each
/// within `budget`), by subset dynamic programming; |V| <= 15 or so.
int exact_rooted_cover_count(const std::vector<VertexId>& vertices,
                             double budget, const MetricInstance& instance);

/// Minimum over cyclic single-robot structures (multisets of depot-rooted
/// cycles, each within D, arranged in any order with each cycle repeated
/// up to `max_repeats` times) of the maximum weighted latency.
double exact_minmax_cyclic(const MetricInstance& instance,
                           int max_repeats = 2);

struct VerifyResult {
  bool pass = false;
  LatencyReport report;
  double realized_stretch = 0.0;  // max_v L(v)/r(v) over constrained vertices
  std::string failure;            // empty when pass
};

/// Checks a solution against the instance: every vertex within
/// stretch * r(v) and every robot's depot gap within D.
VerifyResult verify(const Solution& solution, const MetricInstance& instance,
                    double stretch = 1.0, const SolverConfig& config = {});

}  // namespace patrol
