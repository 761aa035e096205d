#include "patrol/subroutines.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>
#include <unordered_map>

namespace patrol {

namespace {

double tour_cost(const std::vector<VertexId>& order, const MetricInstance& g) {
  double c = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i)
    c += g.dist(order[i], order[(i + 1) % order.size()]);
  return c;
}

std::vector<VertexId> nearest_neighbor(const std::vector<VertexId>& vertices,
                                       std::size_t start,
                                       const MetricInstance& g) {
  std::vector<VertexId> order{vertices[start]};
  std::vector<bool> used(vertices.size(), false);
  used[start] = true;
  for (std::size_t step = 1; step < vertices.size(); ++step) {
    double best = kInfinity;
    std::size_t pick = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (used[i]) continue;
      const double d = g.dist(order.back(), vertices[i]);
      if (d < best - kEps || (approx_eq(d, best) && vertices[i] < vertices[pick])) {
        best = d;
        pick = i;
      }
    }
    used[pick] = true;
    order.push_back(vertices[pick]);
  }
  return order;
}

void two_opt(std::vector<VertexId>& order, const MetricInstance& g) {
  const std::size_t n = order.size();
  if (n < 4) return;
  bool improved = true;
  int passes = 0;
  while (improved && ++passes < 200) {
    improved = false;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const VertexId a = order[i - 1], b = order[i];
        const VertexId c = order[j], d = order[(j + 1) % n];
        if (a == c || b == d) continue;
        const double delta =
            g.dist(a, c) + g.dist(b, d) - g.dist(a, b) - g.dist(c, d);
        if (delta < -kEps * std::max(1.0, g.dist(a, b) + g.dist(c, d))) {
          std::reverse(order.begin() + i, order.begin() + j + 1);
          improved = true;
        }
      }
    }
  }
}

// Rotate to the smallest id and orient deterministically.
void canonicalize_cycle(std::vector<VertexId>& order) {
  if (order.empty()) return;
  const auto pivot = std::min_element(order.begin(), order.end());
  std::rotate(order.begin(), pivot, order.end());
  if (order.size() > 2 && order[1] > order.back())
    std::reverse(order.begin() + 1, order.end());
}

TimedWalk to_walk(const std::vector<VertexId>& order) {
  TimedWalk w;
  for (VertexId v : order) w.append(v);
  return w;
}

}  // namespace

TimedWalk tsp_tour(const std::vector<VertexId>& vertices,
                   const MetricInstance& instance) {
  if (vertices.empty()) throw std::invalid_argument("tsp_tour: empty vertex set");
  std::vector<VertexId> set = vertices;
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  if (set.size() <= 2) return to_walk(set);

  std::vector<VertexId> best;
  double best_cost = kInfinity;
  for (std::size_t start = 0; start < set.size(); ++start) {
    std::vector<VertexId> order = nearest_neighbor(set, start, instance);
    const double c = tour_cost(order, instance);
    if (c < best_cost - kEps) {
      best_cost = c;
      best = std::move(order);
    }
  }
  two_opt(best, instance);
  canonicalize_cycle(best);
  return to_walk(best);
}

namespace {

struct PathState {
  std::vector<VertexId> seq;  // s ... t inclusive
  double length = 0.0;
};

double insertion_cost(const MetricInstance& g, VertexId a, VertexId z, VertexId b) {
  return g.dist(a, z) + g.dist(z, b) - g.dist(a, b);
}

void path_two_opt(std::vector<VertexId>& seq, const MetricInstance& g) {
  // Endpoints stay fixed.
  const std::size_t n = seq.size();
  if (n < 4) return;
  bool improved = true;
  int passes = 0;
  while (improved && ++passes < 100) {
    improved = false;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j + 1 < n; ++j) {
        const double delta = g.dist(seq[i - 1], seq[j]) + g.dist(seq[i], seq[j + 1]) -
                             g.dist(seq[i - 1], seq[i]) - g.dist(seq[j], seq[j + 1]);
        if (delta < -kEps) {
          std::reverse(seq.begin() + i, seq.begin() + j + 1);
          improved = true;
        }
      }
    }
  }
}

double path_length(const std::vector<VertexId>& seq, const MetricInstance& g) {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) len += g.dist(seq[i], seq[i + 1]);
  return len;
}

PathState greedy_insertion(const std::vector<VertexId>& candidates,
                           VertexId s, VertexId t, double budget,
                           const std::unordered_map<VertexId, double>& scores,
                           const MetricInstance& g) {
  PathState state;
  state.seq = {s, t};
  state.length = g.dist(s, t);
  std::set<VertexId> remaining(candidates.begin(), candidates.end());
  remaining.erase(s);
  remaining.erase(t);

  bool progress = true;
  while (progress) {
    progress = false;
    // Best (score / added length) insertion that still fits.
    double best_ratio = -1.0;
    VertexId best_v = -1;
    std::size_t best_pos = 0;
    double best_delta = 0.0;
    for (VertexId z : remaining) {
      const double score = scores.count(z) ? scores.at(z) : 0.0;
      for (std::size_t pos = 0; pos + 1 < state.seq.size(); ++pos) {
        const double delta = insertion_cost(g, state.seq[pos], z, state.seq[pos + 1]);
        if (!approx_le(state.length + delta, budget)) continue;
        const double ratio = score / std::max(delta, 1e-12);
        if (ratio > best_ratio + kEps ||
            (approx_eq(ratio, best_ratio) && z < best_v)) {
          best_ratio = ratio;
          best_v = z;
          best_pos = pos;
          best_delta = delta;
        }
      }
    }
    if (best_v >= 0) {
      state.seq.insert(state.seq.begin() + best_pos + 1, best_v);
      state.length += best_delta;
      remaining.erase(best_v);
      progress = true;
    } else if (!remaining.empty()) {
      // Shorten the path and retry once per round.
      const double before = state.length;
      path_two_opt(state.seq, g);
      state.length = path_length(state.seq, g);
      progress = state.length < before - kEps;
    }
  }
  return state;
}

// Exact depth-first search: score upper bound against the incumbent plus a
// (visited-set, last-vertex) minimal-length dominance table.
class ExactOrienteering {
 public:
  ExactOrienteering(const std::vector<VertexId>& candidates, VertexId s,
                    VertexId t, double budget,
                    const std::unordered_map<VertexId, double>& scores,
                    const MetricInstance& g)
      : cands_(candidates), s_(s), t_(t), budget_(budget), scores_(scores), g_(g) {}

  PathState solve(const PathState& warm_start, double warm_score) {
    best_seq_ = warm_start.seq;
    best_len_ = warm_start.length;
    best_score_ = warm_score;
    std::vector<VertexId> prefix{s_};
    dfs(prefix, 0u, s_, 0.0);
    PathState out;
    out.seq = best_seq_;
    out.length = best_len_;
    return out;
  }

  double best_score() const { return best_score_; }

 private:
  double score_of(VertexId v) const {
    auto it = scores_.find(v);
    return it == scores_.end() ? 0.0 : it->second;
  }

  double base_score() const {
    double b = score_of(s_);
    if (t_ != s_) b += score_of(t_);
    return b;
  }

  void dfs(std::vector<VertexId>& prefix, unsigned mask, VertexId cur,
           double length) {
    // Close the path at the current vertex.
    const double closed = length + g_.dist(cur, t_);
    if (approx_le(closed, budget_)) {
      double score = base_score();
      for (std::size_t i = 0; i < cands_.size(); ++i)
        if (mask & (1u << i)) score += score_of(cands_[i]);
      if (score > best_score_ + kEps ||
          (approx_eq(score, best_score_) && closed < best_len_ - kEps)) {
        best_score_ = score;
        best_len_ = closed;
        best_seq_ = prefix;
        best_seq_.push_back(t_);
      }
    }

    // Upper bound: everything still individually reachable.
    double bound = base_score();
    for (std::size_t i = 0; i < cands_.size(); ++i) {
      if (mask & (1u << i))
        bound += score_of(cands_[i]);
      else if (approx_le(length + g_.dist(cur, cands_[i]) + g_.dist(cands_[i], t_),
                         budget_))
        bound += score_of(cands_[i]);
    }
    if (bound < best_score_ - kEps) return;

    for (std::size_t i = 0; i < cands_.size(); ++i) {
      if (mask & (1u << i)) continue;
      const VertexId z = cands_[i];
      const double len2 = length + g_.dist(cur, z);
      if (!approx_le(len2 + g_.dist(z, t_), budget_)) continue;
      const unsigned mask2 = mask | (1u << i);
      const std::uint64_t key =
          (static_cast<std::uint64_t>(mask2) << 6) | static_cast<std::uint64_t>(i);
      auto it = dominance_.find(key);
      if (it != dominance_.end() && len2 >= it->second - kEps) continue;
      dominance_[key] = len2;
      prefix.push_back(z);
      dfs(prefix, mask2, z, len2);
      prefix.pop_back();
    }
  }

  const std::vector<VertexId>& cands_;
  VertexId s_, t_;
  double budget_;
  const std::unordered_map<VertexId, double>& scores_;
  const MetricInstance& g_;
  std::vector<VertexId> best_seq_;
  double best_len_ = kInfinity;
  double best_score_ = -kInfinity;
  std::unordered_map<std::uint64_t, double> dominance_;
};

}  // namespace

OrienteeringResult orienteering(const OrienteeringQuery& query,
                                const MetricInstance& instance,
                                const SolverConfig& config) {
  const VertexId s = query.start, t = query.end;
  if (!approx_le(instance.dist(s, t), query.budget))
    throw std::runtime_error("orienteering: endpoints farther apart than the budget");

  // Reachability pre-filter.
  std::vector<VertexId> cands;
  for (VertexId z : query.candidates) {
    if (z == s || z == t) continue;
    if (approx_le(instance.dist(s, z) + instance.dist(z, t), query.budget))
      cands.push_back(z);
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

  const PathState warm =
      greedy_insertion(cands, s, t, query.budget, query.scores, instance);
  auto score_of = [&query](VertexId v) {
    auto it = query.scores.find(v);
    return it == query.scores.end() ? 0.0 : it->second;
  };
  double warm_score = score_of(s);
  if (t != s) warm_score += score_of(t);
  for (std::size_t i = 1; i + 1 < warm.seq.size(); ++i)
    warm_score += score_of(warm.seq[i]);

  OrienteeringResult result;
  const int exact_limit = std::min(config.orienteering_exact_threshold, 20);
  if (static_cast<int>(cands.size()) <= exact_limit) {
    // Sort by descending score for tighter early bounds.
    std::sort(cands.begin(), cands.end(), [&](VertexId a, VertexId b) {
      const double sa = score_of(a), sb = score_of(b);
      if (!approx_eq(sa, sb)) return sa > sb;
      return a < b;
    });
    ExactOrienteering solver(cands, s, t, query.budget, query.scores, instance);
    const PathState solved = solver.solve(warm, warm_score);
    result.path = [&] {
      TimedWalk w;
      for (VertexId v : solved.seq) w.append(v);
      return w;
    }();
    result.length = solved.length;
    result.score = solver.best_score();
    result.exact = true;
  } else {
    TimedWalk w;
    for (VertexId v : warm.seq) w.append(v);
    result.path = std::move(w);
    result.length = warm.length;
    result.score = warm_score;
    result.exact = false;
  }
  return result;
}

CycleCover mccp(const std::vector<VertexId>& vertices, double lambda,
                const MetricInstance& instance) {
  if (lambda <= 0.0) throw std::invalid_argument("mccp: lambda must be positive");
  CycleCover cover;
  cover.bound = lambda;
  cover.rooted = false;
  if (vertices.empty()) return cover;

  const TimedWalk tour = tsp_tour(vertices, instance);
  std::vector<VertexId> order;
  for (const Step& s : tour.steps) order.push_back(s.vertex);
  const std::size_t n = order.size();

  // Greedy maximal segments over every rotation of the tour; keep the
  // cover with the fewest cycles, then the smallest longest cycle, then
  // the smallest total length.
  std::vector<std::vector<VertexId>> best;
  double best_max = kInfinity, best_total = kInfinity;
  for (std::size_t rot = 0; rot < n; ++rot) {
    std::vector<std::vector<VertexId>> segments;
    double max_len = 0.0, total = 0.0;
    std::vector<VertexId> seg{order[rot]};
    double seg_path = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      const VertexId v = order[(rot + k) % n];
      const double extended = seg_path + instance.dist(seg.back(), v);
      if (approx_le(extended + instance.dist(v, seg.front()), lambda)) {
        seg.push_back(v);
        seg_path = extended;
      } else {
        const double len = seg_path + instance.dist(seg.back(), seg.front());
        max_len = std::max(max_len, len);
        total += len;
        segments.push_back(std::move(seg));
        seg = {v};
        seg_path = 0.0;
      }
    }
    const double len = seg_path + instance.dist(seg.back(), seg.front());
    max_len = std::max(max_len, len);
    total += len;
    segments.push_back(std::move(seg));

    const bool better =
        best.empty() || segments.size() < best.size() ||
        (segments.size() == best.size() &&
         (max_len < best_max - kEps ||
          (approx_eq(max_len, best_max) && total < best_total - kEps)));
    if (better) {
      best = std::move(segments);
      best_max = max_len;
      best_total = total;
    }
  }

  for (auto& seg : best) {
    canonicalize_cycle(seg);
    cover.cycles.push_back(to_walk(seg));
    assert(approx_le(walk_period(cover.cycles.back(), instance), lambda));
  }
  return cover;
}

CycleCover rmccp(const std::vector<VertexId>& vertices, double budget,
                 const MetricInstance& instance, const SolverConfig& config) {
  CycleCover cover;
  cover.bound = budget;
  cover.rooted = true;
  const VertexId depot = instance.depot();
  for (VertexId v : vertices)
    if (!approx_le(2.0 * instance.dist(depot, v), budget))
      throw std::runtime_error("rmccp: vertex " + std::to_string(v) +
                               " cannot be reached within the budget");

  std::set<VertexId> uncovered(vertices.begin(), vertices.end());
  uncovered.erase(depot);
  while (!uncovered.empty()) {
    OrienteeringQuery q;
    q.candidates.assign(uncovered.begin(), uncovered.end());
    q.start = depot;
    q.end = depot;
    q.budget = budget;
    for (VertexId v : q.candidates) q.scores[v] = 1.0;
    const OrienteeringResult leg = orienteering(q, instance, config);

    // Shortcut to a simple depot-rooted cycle, keeping first occurrences.
    TimedWalk cycle;
    cycle.append(depot);
    std::set<VertexId> seen{depot};
    for (const Step& s : leg.path.steps)
      if (seen.insert(s.vertex).second) cycle.append(s.vertex);

    std::vector<VertexId> gained;
    for (const Step& s : cycle.steps)
      if (uncovered.count(s.vertex)) gained.push_back(s.vertex);
    if (gained.empty())
      throw std::runtime_error("rmccp: no vertex coverable within the budget");
    for (VertexId v : gained) uncovered.erase(v);

    assert(approx_le(walk_period(cycle, instance), budget));
    cover.cycles.push_back(std::move(cycle));
  }
  return cover;
}

}  // namespace patrol
