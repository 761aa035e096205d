#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "patrol/types.hpp"

namespace patrol {

/// Complete metric graph over n monitoring vertices plus one depot.
///
/// Point ids run from 0 to n (inclusive); `depot()` names the depot id and
/// `vertices()` lists the monitoring ids in ascending order. Latency
/// constraints r(v) and weights phi(v) are defined on monitoring vertices
/// only. Instances are immutable after construction and safe to share
/// across threads.
class MetricInstance {
 public:
  MetricInstance(std::vector<double> dist_row_major, int point_count,
                 VertexId depot, std::vector<double> latency,
                 std::vector<double> weight, double discharge);

  int point_count() const { return point_count_; }
  int vertex_count() const { return point_count_ - 1; }
  VertexId depot() const { return depot_; }
  const std::vector<VertexId>& vertices() const { return vertices_; }

  double dist(VertexId a, VertexId b) const {
    return dist_[static_cast<std::size_t>(a) * point_count_ + b];
  }
  /// r(v); +inf means unconstrained.
  double latency(VertexId v) const { return latency_[v]; }
  /// phi(v), normalized so max phi = 1.
  double weight(VertexId v) const { return weight_[v]; }
  double discharge() const { return discharge_; }
  bool has_recharge() const { return std::isfinite(discharge_); }

  double min_latency() const;
  double max_latency() const;

  /// Instance with every entry scaled by `factor` (distances, r, D).
  MetricInstance scaled(double factor) const;

  /// True when all distances, latencies and D are integral.
  bool is_integer_scaled() const;

 private:
  std::vector<double> dist_;
  int point_count_;
  VertexId depot_;
  std::vector<double> latency_;  // indexed by point id; depot slot unused
  std::vector<double> weight_;
  double discharge_;
  std::vector<VertexId> vertices_;
};

struct ValidationIssue {
  std::string what;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string to_string() const;
};

/// Checks symmetry, zero diagonal, the triangle inequality, positivity of
/// r, weight normalization, and both parts of the feasibility assumption
/// (D >= 2 l(mu,v) and, when D is finite, r(v) >= 2 l(mu,v)).
ValidationReport validate(const MetricInstance& instance);

struct Edge {
  VertexId a;
  VertexId b;
  double length;
};

/// All-pairs shortest paths over an explicit edge list; the result is a
/// valid metric (closure repairs any triangle violation in the input).
/// Throws if some pair is unreachable, naming it.
std::vector<double> metric_closure(const std::vector<Edge>& edges,
                                   int point_count);

struct GeneratorParams {
  int n = 10;
  double k_lo = 4.0;
  double k_hi = 8.0;
  double extent = 1000.0;   // side of the sampling square
  double speed = 1.0;       // distance divisor (edge lengths are times)
  double discharge = -1.0;  // < 0 selects the automatic choice
  bool depot_centered = true;  // otherwise the depot is sampled like a vertex
  bool integer_scaled = false;
  bool infinite_latency = false;  // Problem-2 style instance (r = +inf)
  std::uint64_t seed = 0;
};

/// Random Euclidean instance; r(v) ~ U[TSP/k, k TSP] with k ~ U[k_lo,k_hi],
/// clamped up where the feasibility assumption needs it, plus normalized
/// random weights. Deterministic given the seed.
MetricInstance generate_random(const GeneratorParams& params);

/// On-disk document: schema version, instance payload, optional raw edge
/// list (pre-closure) and generator provenance.
struct InstanceDocument {
  static constexpr int kSchemaVersion = 1;
  MetricInstance instance;
  std::optional<std::vector<Edge>> raw_edges;
  std::optional<std::string> provenance;  // JSON blob, free-form
};

InstanceDocument load_instance(const std::string& path);
void save_instance(const InstanceDocument& doc, const std::string& path);

InstanceDocument parse_instance(const std::string& text);
std::string serialize_instance(const InstanceDocument& doc);

}  // namespace patrol
