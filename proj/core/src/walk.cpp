#include "patrol/walk.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace patrol {

using nlohmann::json;

double walk_length(const TimedWalk& w, const MetricInstance& instance) {
  double len = 0.0;
  for (std::size_t i = 0; i < w.steps.size(); ++i) {
    len += w.steps[i].hold;
    if (i + 1 < w.steps.size())
      len += instance.dist(w.steps[i].vertex, w.steps[i + 1].vertex);
  }
  return len;
}

double walk_period(const TimedWalk& w, const MetricInstance& instance) {
  if (w.empty()) return 0.0;
  return walk_length(w, instance) + instance.dist(w.last(), w.first());
}

std::vector<VertexId> walk_vertices(const TimedWalk& w) {
  std::vector<VertexId> out;
  for (const Step& s : w.steps) out.push_back(s.vertex);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int Solution::robot_count() const {
  int count = 0;
  for (const auto& w : walks) count += static_cast<int>(w.offsets.size());
  return count;
}

const VertexLatency& LatencyReport::at(VertexId v) const {
  for (const auto& e : per_vertex)
    if (e.vertex == v) return e;
  throw std::out_of_range("no latency entry for vertex " + std::to_string(v));
}

namespace {

struct Visit {
  double arrive;
  double depart;
};

// Arrival/departure phases of one period of the base walk, per vertex.
std::vector<std::pair<VertexId, Visit>> base_visits(
    const TimedWalk& w, const MetricInstance& instance) {
  std::vector<std::pair<VertexId, Visit>> visits;
  double t = 0.0;
  for (std::size_t i = 0; i < w.steps.size(); ++i) {
    const double arrive = t;
    t += w.steps[i].hold;
    visits.push_back({w.steps[i].vertex, {arrive, t}});
    if (i + 1 < w.steps.size())
      t += instance.dist(w.steps[i].vertex, w.steps[i + 1].vertex);
  }
  return visits;
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  const std::int64_t g = std::gcd(a, b);
  const std::int64_t q = a / g;
  if (q > (1LL << 52) / b) return -1;  // would lose exactness in doubles
  return q * b;
}

// Smallest common period of the given positive walk periods, or a common
// multiple of the largest one within the configured search bound.
double common_period(const std::vector<double>& periods,
                     const SolverConfig& config) {
  double pmax = 0.0;
  for (double p : periods) pmax = std::max(pmax, p);
  bool all_equal = true, all_integral = true;
  for (double p : periods) {
    all_equal = all_equal && approx_eq(p, pmax);
    all_integral = all_integral && is_integral_value(p);
  }
  if (all_equal) return pmax;
  if (all_integral) {
    std::int64_t l = 1;
    for (double p : periods) {
      l = checked_lcm(l, std::llround(p));
      if (l < 0) break;
    }
    if (l > 0) return static_cast<double>(l);
  }
  for (int k = 1; k <= config.hyperperiod_max_multiple; ++k) {
    const double h = k * pmax;
    bool ok = true;
    for (double p : periods) {
      const double ratio = h / p;
      if (std::fabs(ratio - std::llround(ratio)) > 1e-9 * std::max(1.0, ratio)) {
        ok = false;
        break;
      }
    }
    if (ok) return h;
  }
  throw std::runtime_error(
      "walk periods have no common multiple within " +
      std::to_string(config.hyperperiod_max_multiple) +
      "x the longest period; consider integer-scaled inputs");
}

struct GapResult {
  double max_gap = 0.0;
  double witness_start = 0.0;
  double witness_end = 0.0;
};

// Maximum uncovered stretch of the cyclic timeline [0, horizon) given
// occupancy intervals.
GapResult max_cyclic_gap(std::vector<Visit> intervals, double horizon) {
  // Split anything protruding past the horizon.
  std::vector<Visit> parts;
  for (const Visit& v : intervals) {
    if (v.depart > horizon + kEps) {
      parts.push_back({v.arrive, horizon});
      parts.push_back({0.0, v.depart - horizon});
    } else {
      parts.push_back(v);
    }
  }
  std::sort(parts.begin(), parts.end(),
            [](const Visit& a, const Visit& b) { return a.arrive < b.arrive; });
  std::vector<Visit> merged;
  for (const Visit& v : parts) {
    if (!merged.empty() && v.arrive <= merged.back().depart + 1e-12 * std::max(1.0, horizon))
      merged.back().depart = std::max(merged.back().depart, v.depart);
    else
      merged.push_back(v);
  }
  GapResult r;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    const double end = merged[i].depart;
    const double next =
        (i + 1 < merged.size()) ? merged[i + 1].arrive : merged[0].arrive + horizon;
    if (next - end > r.max_gap) {
      r.max_gap = next - end;
      r.witness_start = end;
      r.witness_end = next;
    }
  }
  return r;
}

double positive_mod(double x, double m) {
  double r = std::fmod(x, m);
  if (r < 0.0) r += m;
  return r;
}

}  // namespace

LatencyReport latency_of(const Solution& solution,
                         const MetricInstance& instance,
                         const SolverConfig& config) {
  const int walk_count = static_cast<int>(solution.walks.size());
  std::vector<double> period(walk_count);
  std::vector<std::vector<std::pair<VertexId, Visit>>> visits(walk_count);
  for (int i = 0; i < walk_count; ++i) {
    period[i] = walk_period(solution.walks[i].walk, instance);
    visits[i] = base_visits(solution.walks[i].walk, instance);
  }

  std::vector<std::vector<int>> visited_by(instance.point_count());
  for (int i = 0; i < walk_count; ++i)
    for (VertexId v : walk_vertices(solution.walks[i].walk))
      visited_by[v].push_back(i);

  LatencyReport report;
  std::int64_t events = 0;
  for (VertexId v : instance.vertices()) {
    VertexLatency entry;
    entry.vertex = v;
    const auto& owners = visited_by[v];
    bool stationary = false;
    for (int i : owners)
      if (period[i] <= kEps) stationary = true;  // robot parked at v
    if (owners.empty()) {
      entry.latency = kInfinity;
      entry.weighted = kInfinity;
    } else if (stationary) {
      entry.latency = 0.0;
      entry.weighted = 0.0;
      entry.gap_end = 0.0;
    } else {
      // Each vertex is measured over the common period of the walks that
      // visit it; partitioned solutions need no cross-walk alignment.
      std::vector<double> ps;
      for (int i : owners) ps.push_back(period[i]);
      const double horizon = common_period(ps, config);
      std::vector<Visit> intervals;
      for (int i : owners) {
        const auto copies = static_cast<std::int64_t>(std::llround(horizon / period[i]));
        for (const auto& [vertex, visit] : visits[i]) {
          if (vertex != v) continue;
          for (double offset : solution.walks[i].offsets) {
            const double start = positive_mod(visit.arrive - offset, period[i]);
            events += copies;
            if (events > config.event_cap)
              throw std::runtime_error("latency evaluation exceeds event cap");
            for (std::int64_t m = 0; m < copies; ++m)
              intervals.push_back({start + static_cast<double>(m) * period[i],
                                   start + static_cast<double>(m) * period[i] +
                                       (visit.depart - visit.arrive)});
          }
        }
      }
      const GapResult gap = max_cyclic_gap(std::move(intervals), horizon);
      entry.latency = gap.max_gap;
      entry.weighted = instance.weight(v) * gap.max_gap;
      entry.gap_start = gap.witness_start;
      entry.gap_end = gap.witness_end;
    }
    report.max_latency = std::max(report.max_latency, entry.latency);
    report.max_weighted_latency =
        std::max(report.max_weighted_latency, entry.weighted);
    report.per_vertex.push_back(entry);
  }

  // Recharge gaps are per robot: offsets shift a robot's whole schedule,
  // so one value per walk suffices.
  for (int i = 0; i < walk_count; ++i) {
    std::vector<Visit> depot_visits;
    for (const auto& [vertex, visit] : visits[i])
      if (vertex == instance.depot()) depot_visits.push_back(visit);
    if (period[i] <= kEps) {
      report.depot_latency_per_walk.push_back(
          depot_visits.empty() ? kInfinity : 0.0);
    } else if (depot_visits.empty()) {
      report.depot_latency_per_walk.push_back(kInfinity);
    } else {
      report.depot_latency_per_walk.push_back(
          max_cyclic_gap(std::move(depot_visits), period[i]).max_gap);
    }
  }
  return report;
}

bool periodic_feasibility(
    const TimedWalk& w, const MetricInstance& instance,
    const std::unordered_map<VertexId, double>* latency_override) {
  if (w.empty()) return true;
  auto bound = [&](VertexId v) {
    if (latency_override) {
      auto it = latency_override->find(v);
      if (it != latency_override->end()) return it->second;
    }
    return v == instance.depot() ? instance.discharge() : instance.latency(v);
  };

  std::vector<double> last_departure(instance.point_count(), 0.0);
  double t = 0.0;
  const std::size_t k = w.steps.size();
  for (std::size_t idx = 0; idx < 2 * k; ++idx) {
    const Step& step = w.steps[idx % k];
    const double r = bound(step.vertex);
    if (std::isfinite(r) && !approx_le(t - last_departure[step.vertex], r))
      return false;
    t += step.hold;
    last_departure[step.vertex] = t;
    const VertexId next = w.steps[(idx + 1) % k].vertex;
    t += instance.dist(step.vertex, next);
  }
  return true;
}

PlannedWalk equally_space(const TimedWalk& w, int k,
                          const MetricInstance& instance) {
  if (k < 1) throw std::invalid_argument("equally_space needs k >= 1");
  PlannedWalk planned;
  planned.walk = w;
  planned.offsets.clear();
  const double period = walk_period(w, instance);
  for (int j = 0; j < k; ++j)
    planned.offsets.push_back(period <= kEps ? 0.0 : j * period / k);
  for (VertexId v : walk_vertices(w))
    if (v != instance.depot()) planned.responsible.push_back(v);
  return planned;
}

TimedWalk concat_cycles(const std::vector<TimedWalk>& cycles,
                        const MetricInstance& instance) {
  TimedWalk out;
  for (const TimedWalk& c : cycles) {
    if (c.empty()) continue;
    if (c.first() != instance.depot())
      throw std::invalid_argument("cycle not rooted at the depot");
    for (const Step& s : c.steps) {
      if (!out.empty() && out.last() == s.vertex)
        out.steps.back().hold += s.hold;  // shared depot between cycles
      else
        out.steps.push_back(s);
    }
  }
  return out;
}

std::string serialize_solution(const Solution& solution) {
  json j;
  j["version"] = 1;
  j["algorithm"] = solution.algorithm;
  if (!solution.params.empty()) j["params"] = json::parse(solution.params);
  json walks = json::array();
  for (const auto& p : solution.walks) {
    json w;
    json steps = json::array();
    for (const Step& s : p.walk.steps) steps.push_back(json::array({s.vertex, s.hold}));
    w["steps"] = std::move(steps);
    w["offsets"] = p.offsets;
    w["responsible"] = p.responsible;
    walks.push_back(std::move(w));
  }
  j["walks"] = std::move(walks);
  return j.dump(2) + "\n";
}

Solution parse_solution(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("solution parse error: ") + e.what());
  }
  if (!j.contains("version") || j["version"].get<int>() != 1)
    throw std::runtime_error("unsupported solution schema version");
  Solution s;
  s.algorithm = j.value("algorithm", "");
  if (j.contains("params")) s.params = j["params"].dump();
  for (const auto& w : j.at("walks")) {
    PlannedWalk p;
    for (const auto& st : w.at("steps"))
      p.walk.steps.push_back({st[0].get<VertexId>(), st[1].get<double>()});
    p.offsets = w.at("offsets").get<std::vector<double>>();
    if (p.offsets.empty()) throw std::runtime_error("walk without robots");
    if (w.contains("responsible"))
      p.responsible = w["responsible"].get<std::vector<VertexId>>();
    s.walks.push_back(std::move(p));
  }
  return s;
}

Solution load_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open solution file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_solution(buf.str());
}

void save_solution(const Solution& solution, const std::string& path) {
  const std::string text = serialize_solution(solution);
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write solution file: " + path);
  out << text;
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

}  // namespace patrol
