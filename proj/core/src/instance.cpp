#include "patrol/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "patrol/subroutines.hpp"

namespace patrol {

using nlohmann::json;

MetricInstance::MetricInstance(std::vector<double> dist_row_major,
                               int point_count, VertexId depot,
                               std::vector<double> latency,
                               std::vector<double> weight, double discharge)
    : dist_(std::move(dist_row_major)),
      point_count_(point_count),
      depot_(depot),
      latency_(std::move(latency)),
      weight_(std::move(weight)),
      discharge_(discharge) {
  if (point_count_ < 1) throw std::invalid_argument("instance needs a depot");
  if (dist_.size() != static_cast<std::size_t>(point_count_) * point_count_)
    throw std::invalid_argument("distance matrix size mismatch");
  if (depot_ < 0 || depot_ >= point_count_)
    throw std::invalid_argument("depot index out of range");
  if (latency_.size() != static_cast<std::size_t>(point_count_) ||
      weight_.size() != static_cast<std::size_t>(point_count_))
    throw std::invalid_argument("latency/weight arrays must cover all points");
  for (VertexId v = 0; v < point_count_; ++v)
    if (v != depot_) vertices_.push_back(v);
}

double MetricInstance::min_latency() const {
  double m = kInfinity;
  for (VertexId v : vertices_) m = std::min(m, latency_[v]);
  return m;
}

double MetricInstance::max_latency() const {
  double m = 0.0;
  for (VertexId v : vertices_) m = std::max(m, latency_[v]);
  return m;
}

MetricInstance MetricInstance::scaled(double factor) const {
  std::vector<double> d(dist_.size());
  for (std::size_t i = 0; i < dist_.size(); ++i) d[i] = dist_[i] * factor;
  std::vector<double> r(latency_.size());
  for (std::size_t i = 0; i < latency_.size(); ++i) r[i] = latency_[i] * factor;
  return MetricInstance(std::move(d), point_count_, depot_, std::move(r),
                        weight_, discharge_ * factor);
}

bool MetricInstance::is_integer_scaled() const {
  for (double d : dist_)
    if (!is_integral_value(d)) return false;
  for (VertexId v : vertices_)
    if (std::isfinite(latency_[v]) && !is_integral_value(latency_[v]))
      return false;
  return !std::isfinite(discharge_) || is_integral_value(discharge_);
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& issue : issues) out << issue.what << '\n';
  return out.str();
}

ValidationReport validate(const MetricInstance& g) {
  ValidationReport report;
  auto flag = [&report](const std::string& msg) { report.issues.push_back({msg}); };
  const int n = g.point_count();

  for (VertexId a = 0; a < n; ++a) {
    if (g.dist(a, a) != 0.0)
      flag("dist(" + std::to_string(a) + "," + std::to_string(a) + ") is not zero");
    for (VertexId b = a + 1; b < n; ++b) {
      if (g.dist(a, b) < 0.0)
        flag("negative distance between " + std::to_string(a) + " and " +
             std::to_string(b));
      if (!approx_eq(g.dist(a, b), g.dist(b, a)))
        flag("asymmetric distance between " + std::to_string(a) + " and " +
             std::to_string(b));
    }
  }
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = 0; b < n; ++b)
      for (VertexId c = 0; c < n; ++c)
        if (a != b && b != c && a != c &&
            !approx_le(g.dist(a, c), g.dist(a, b) + g.dist(b, c)))
          flag("triangle inequality violated on (" + std::to_string(a) + "," +
               std::to_string(b) + "," + std::to_string(c) + ")");

  double max_out = 0.0;
  for (VertexId v : g.vertices())
    max_out = std::max(max_out, g.dist(g.depot(), v));
  if (!approx_le(2.0 * max_out, g.discharge()))
    flag("discharge time below the longest depot round trip (" +
         std::to_string(2.0 * max_out) + ")");

  for (VertexId v : g.vertices()) {
    const double r = g.latency(v);
    if (!(r > 0.0)) flag("nonpositive latency at vertex " + std::to_string(v));
    if (g.has_recharge() && !approx_le(2.0 * g.dist(g.depot(), v), r))
      flag("latency at vertex " + std::to_string(v) +
           " below its depot round trip");
    const double w = g.weight(v);
    if (!(w > 0.0) || w > 1.0 + kEps)
      flag("weight at vertex " + std::to_string(v) + " outside (0,1]");
  }
  if (!g.vertices().empty()) {
    double wmax = 0.0;
    for (VertexId v : g.vertices()) wmax = std::max(wmax, g.weight(v));
    if (!approx_eq(wmax, 1.0)) flag("weights not normalized to max 1");
  }
  return report;
}

std::vector<double> metric_closure(const std::vector<Edge>& edges,
                                   int point_count) {
  const double inf = kInfinity;
  std::vector<double> d(static_cast<std::size_t>(point_count) * point_count, inf);
  auto at = [&d, point_count](int a, int b) -> double& {
    return d[static_cast<std::size_t>(a) * point_count + b];
  };
  for (int v = 0; v < point_count; ++v) at(v, v) = 0.0;
  for (const Edge& e : edges) {
    if (e.a < 0 || e.a >= point_count || e.b < 0 || e.b >= point_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.length < 0.0) throw std::invalid_argument("negative edge length");
    at(e.a, e.b) = std::min(at(e.a, e.b), e.length);
    at(e.b, e.a) = std::min(at(e.b, e.a), e.length);
  }
  for (int k = 0; k < point_count; ++k)
    for (int i = 0; i < point_count; ++i) {
      if (at(i, k) == inf) continue;
      for (int j = 0; j < point_count; ++j)
        if (at(k, j) != inf) at(i, j) = std::min(at(i, j), at(i, k) + at(k, j));
    }
  for (int i = 0; i < point_count; ++i)
    for (int j = 0; j < point_count; ++j)
      if (at(i, j) == inf)
        throw std::runtime_error("graph is disconnected: no path between " +
                                 std::to_string(i) + " and " + std::to_string(j));
  return d;
}

MetricInstance generate_random(const GeneratorParams& p) {
  if (p.n < 1) throw std::invalid_argument("need at least one vertex");
  Rng rng(p.seed);

  const int points = p.n + 1;
  const VertexId depot = p.n;  // depot is the last point id
  std::vector<double> xs(points), ys(points);
  for (int v = 0; v < p.n; ++v) {
    xs[v] = rng.uniform(0.0, p.extent);
    ys[v] = rng.uniform(0.0, p.extent);
  }
  if (p.depot_centered) {
    xs[depot] = 0.5 * p.extent;
    ys[depot] = 0.5 * p.extent;
  } else {
    xs[depot] = rng.uniform(0.0, p.extent);
    ys[depot] = rng.uniform(0.0, p.extent);
  }

  std::vector<double> dist(static_cast<std::size_t>(points) * points, 0.0);
  for (int a = 0; a < points; ++a)
    for (int b = 0; b < points; ++b)
      dist[static_cast<std::size_t>(a) * points + b] =
          std::hypot(xs[a] - xs[b], ys[a] - ys[b]) / p.speed;

  if (p.integer_scaled) {
    // Round pairwise times to integers (at least 1 between distinct
    // points), then re-close so the rounded matrix stays metric.
    std::vector<Edge> rounded;
    for (int a = 0; a < points; ++a)
      for (int b = a + 1; b < points; ++b)
        rounded.push_back(
            {a, b,
             std::max(1.0, std::round(dist[static_cast<std::size_t>(a) * points + b]))});
    dist = metric_closure(rounded, points);
  }

  // k and the latency draws always consume the same stream positions, so
  // toggling unrelated options keeps instances comparable.
  const double k = rng.uniform(p.k_lo, p.k_hi);
  std::vector<double> draws(p.n);
  for (int v = 0; v < p.n; ++v) draws[v] = rng.uniform();
  std::vector<double> weights_raw(p.n);
  for (int v = 0; v < p.n; ++v) weights_raw[v] = rng.uniform();

  std::vector<double> latency(points, kInfinity);
  std::vector<double> weight(points, 0.0);

  {
    // TSP over the whole graph scales the latency draws.
    MetricInstance proto(dist, points, depot,
                         std::vector<double>(points, kInfinity),
                         std::vector<double>(points, 1.0), kInfinity);
    std::vector<VertexId> all(points);
    for (int v = 0; v < points; ++v) all[v] = v;
    const double tsp = walk_period(tsp_tour(all, proto), proto);
    const double lo = tsp / k, hi = k * tsp;
    for (int v = 0; v < p.n; ++v) {
      double r = p.infinite_latency ? kInfinity : lo + (hi - lo) * draws[v];
      const double floor_r = 2.0 * dist[static_cast<std::size_t>(v) * points + depot];
      if (std::isfinite(r)) {
        r = std::max(r, floor_r);
        if (p.integer_scaled) r = std::max({1.0, floor_r, std::round(r)});
      }
      latency[v] = r;
    }
  }

  double wmax = 0.0;
  for (int v = 0; v < p.n; ++v) wmax = std::max(wmax, weights_raw[v]);
  for (int v = 0; v < p.n; ++v) {
    // Keep weights in a dyadically interesting range and exactly normalized.
    weight[v] = std::max(weights_raw[v] / wmax, 1.0 / 64.0);
  }

  double discharge = p.discharge;
  double max_out = 0.0;
  for (int v = 0; v < p.n; ++v)
    max_out = std::max(max_out, dist[static_cast<std::size_t>(v) * points + depot]);
  if (discharge < 0.0) {
    // Automatic choice: valid and still forcing several depot returns.
    std::vector<VertexId> all(points);
    for (int v = 0; v < points; ++v) all[v] = v;
    MetricInstance proto(dist, points, depot,
                         std::vector<double>(points, kInfinity),
                         std::vector<double>(points, 1.0), kInfinity);
    const double tsp = walk_period(tsp_tour(all, proto), proto);
    discharge = std::max(2.0 * max_out, 0.6 * tsp);
  } else if (std::isfinite(discharge)) {
    discharge = std::max(discharge, 2.0 * max_out);
  }
  if (p.integer_scaled && std::isfinite(discharge))
    discharge = std::max(std::ceil(discharge), std::ceil(2.0 * max_out));

  return MetricInstance(std::move(dist), points, depot, std::move(latency),
                        std::move(weight), discharge);
}

namespace {

json number_or_inf(double x) {
  if (std::isinf(x)) return json("inf");
  return json(x);
}

double parse_number_or_inf(const json& j, const std::string& field) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInfinity;
    throw std::runtime_error("field '" + field + "': unrecognized value '" +
                             j.get<std::string>() + "'");
  }
  if (!j.is_number())
    throw std::runtime_error("field '" + field + "' must be a number or \"inf\"");
  return j.get<double>();
}

}  // namespace

std::string serialize_instance(const InstanceDocument& doc) {
  const MetricInstance& g = doc.instance;
  json j;
  j["version"] = InstanceDocument::kSchemaVersion;
  j["n"] = g.vertex_count();
  j["depot_index"] = g.depot();
  json dist = json::array();
  for (int a = 0; a < g.point_count(); ++a)
    for (int b = 0; b < g.point_count(); ++b) dist.push_back(g.dist(a, b));
  j["dist"] = std::move(dist);
  json r = json::array(), phi = json::array();
  for (VertexId v : g.vertices()) {
    r.push_back(number_or_inf(g.latency(v)));
    phi.push_back(g.weight(v));
  }
  j["r"] = std::move(r);
  j["phi"] = std::move(phi);
  j["D"] = number_or_inf(g.discharge());
  if (doc.raw_edges) {
    json edges = json::array();
    for (const Edge& e : *doc.raw_edges)
      edges.push_back(json::array({e.a, e.b, e.length}));
    j["edges"] = std::move(edges);
  }
  if (doc.provenance) j["provenance"] = json::parse(*doc.provenance);
  return j.dump(2) + "\n";
}

InstanceDocument parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("instance parse error: ") + e.what());
  }
  for (const char* field : {"version", "n", "depot_index", "dist", "r", "phi", "D"})
    if (!j.contains(field))
      throw std::runtime_error(std::string("instance file missing field '") +
                               field + "'");
  const int version = j["version"].get<int>();
  if (version != InstanceDocument::kSchemaVersion)
    throw std::runtime_error("unsupported instance schema version " +
                             std::to_string(version));
  const int n = j["n"].get<int>();
  const int points = n + 1;
  const VertexId depot = j["depot_index"].get<VertexId>();
  if (depot < 0 || depot >= points)
    throw std::runtime_error("depot_index out of range");
  const auto& dist_json = j["dist"];
  if (static_cast<int>(dist_json.size()) != points * points)
    throw std::runtime_error("dist must have (n+1)^2 entries");
  std::vector<double> dist(dist_json.size());
  for (std::size_t i = 0; i < dist.size(); ++i)
    dist[i] = dist_json[i].get<double>();

  if (static_cast<int>(j["r"].size()) != n || static_cast<int>(j["phi"].size()) != n)
    throw std::runtime_error("r and phi must have n entries");
  std::vector<double> latency(points, kInfinity), weight(points, 0.0);
  int slot = 0;
  for (VertexId v = 0; v < points; ++v) {
    if (v == depot) continue;
    latency[v] = parse_number_or_inf(j["r"][slot], "r");
    weight[v] = j["phi"][slot].get<double>();
    ++slot;
  }
  const double discharge = parse_number_or_inf(j["D"], "D");

  InstanceDocument doc{MetricInstance(std::move(dist), points, depot,
                                      std::move(latency), std::move(weight),
                                      discharge),
                       std::nullopt, std::nullopt};
  if (j.contains("edges")) {
    std::vector<Edge> edges;
    for (const auto& e : j["edges"])
      edges.push_back({e[0].get<VertexId>(), e[1].get<VertexId>(), e[2].get<double>()});
    // A raw edge list must agree with its own closure.
    const auto closed = metric_closure(edges, points);
    for (int a = 0; a < points; ++a)
      for (int b = 0; b < points; ++b)
        if (!approx_eq(closed[static_cast<std::size_t>(a) * points + b],
                       doc.instance.dist(a, b)))
          throw std::runtime_error(
              "dist is not the shortest-path closure of the edge list (pair " +
              std::to_string(a) + "," + std::to_string(b) + ")");
    doc.raw_edges = std::move(edges);
  }
  if (j.contains("provenance")) doc.provenance = j["provenance"].dump();
  return doc;
}

InstanceDocument load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void save_instance(const InstanceDocument& doc, const std::string& path) {
  const std::string text = serialize_instance(doc);
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << text;
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

}  // namespace patrol
