#pragma once

#include <functional>
#include <set>
#include <vector>

#include "patrol/config.hpp"
#include "patrol/instance.hpp"
#include "patrol/walk.hpp"

namespace patrol {

/// Expiry bookkeeping for one walk under construction. The walk starts at
/// the depot (or at the most urgent vertex when D is infinite); s(v) is the
/// time left until v's constraint would be violated, with the recharge
/// constraint folded in as s(depot) tracking the charge.
class WalkBuilder {
 public:
  WalkBuilder(const MetricInstance& instance, std::vector<VertexId> remaining,
              const SolverConfig& config);

  const TimedWalk& walk() const { return walk_; }
  VertexId position() const { return walk_.steps.back().vertex; }
  /// Time to expiry of v as of arrival at the current end of the walk.
  double expiry(VertexId v) const;
  bool expired(VertexId v) const { return expired_.count(v) > 0; }
  bool covered(VertexId v) const { return covered_.count(v) > 0; }
  const std::set<VertexId>& covered() const { return covered_; }
  std::vector<VertexId> unfinished() const;  // remaining, not covered/expired

  /// Candidates for the next target, in increasing order of expiry
  /// (ties by vertex id): every non-expired vertex plus the depot,
  /// excluding the current position.
  std::vector<VertexId> targets_by_expiry() const;

  bool feasible_append(VertexId v) const;
  /// Feasibility of appending the chain v1, v2, ... in order.
  bool feasible_append_chain(const std::vector<VertexId>& chain) const;

  /// Appends a leg to `v` taking `leg_time` total (>= travel time; the
  /// slack is held at the current position before departing), optionally
  /// routing through `via` (visited in order, zero holds).
  void commit_leg(VertexId v, double leg_time, const std::vector<VertexId>& via = {});

  void expire(VertexId v) { expired_.insert(v); }

  /// Largest leg duration d in [l(x,v), expiry(v)] keeping the closed walk
  /// feasible, found by binary search and rounded down to the feasible side.
  double max_feasible_leg(VertexId v) const;

 private:
  bool closed_walk_feasible(const TimedWalk& w) const;

  const MetricInstance& instance_;
  SolverConfig config_;
  std::vector<VertexId> remaining_;
  TimedWalk walk_;
  std::set<VertexId> covered_;
  std::set<VertexId> expired_;
  std::vector<double> last_departure_;  // per point id; walk start = 0
  double arrival_time_ = 0.0;           // arrival at current end vertex
};

/// One feasible walk over a subset of `remaining`: repeatedly extends to
/// the unexpired vertex with least time to expiry whose closed walk stays
/// feasible. Returns the walk and the vertices it covers.
std::pair<TimedWalk, std::vector<VertexId>> greedy_walk(
    const MetricInstance& instance, const std::vector<VertexId>& remaining,
    const SolverConfig& config = {});

/// Greedy walk that also interposes cheap detours on the way to each
/// target, recursively, in expiry order.
std::pair<TimedWalk, std::vector<VertexId>> recursive_greedy_walk(
    const MetricInstance& instance, const std::vector<VertexId>& remaining,
    const SolverConfig& config = {});

enum class WalkBuilderKind { kGreedy, kRecursiveGreedy, kOrienteering };

/// Partitioned multi-robot planner: loops a walk builder over the
/// uncovered vertices until the whole graph is covered.
Solution plan_partitioned(const MetricInstance& instance,
                          WalkBuilderKind builder,
                          const SolverConfig& config = {});

/// Orienteering-based planner: per leg, budgets the maximum feasible time
/// d by binary search and fills it with a score-maximal path over
/// non-expired vertices (weights 1/s, revisits discounted by m).
Solution orienteering_greedy(const MetricInstance& instance,
                             const SolverConfig& config = {});

}  // namespace patrol
