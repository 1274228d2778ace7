#include "ringbisect/transport.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ringbisect {

double TransportPlan::outflow(std::size_t state) const {
  double total = 0.0;
  for (const TransportFlow& f : flows) {
    if (f.from == state) total += f.mass;
  }
  return total;
}

double TransportPlan::inflow(std::size_t state) const {
  double total = 0.0;
  for (const TransportFlow& f : flows) {
    if (f.to == state) total += f.mass;
  }
  return total;
}

namespace {

void check_sizes(std::span<const double> from, std::span<const double> to, const DistanceMatrix& dist) {
  if (from.size() != dist.size() || to.size() != dist.size()) {
    throw std::invalid_argument("transport: distribution size does not match the state space");
  }
}

}  // namespace

TransportPlan greedy_coupling(std::span<const double> from, std::span<const double> to, const DistanceMatrix& dist) {
  check_sizes(from, to, dist);
  const std::size_t size = dist.size();
  std::vector<double> surplus(size, 0.0), deficit(size, 0.0);
  std::vector<std::size_t> sources, sinks;
  int max_distance = 0;
  for (std::size_t s = 0; s < size; ++s) {
    if (from[s] > to[s]) {
      surplus[s] = from[s] - to[s];
      sources.push_back(s);
    } else if (to[s] > from[s]) {
      deficit[s] = to[s] - from[s];
      sinks.push_back(s);
    }
  }
  for (std::size_t src : sources) {
    for (std::size_t snk : sinks) max_distance = std::max(max_distance, dist(src, snk));
  }

  TransportPlan plan;
  for (int d = 1; d <= max_distance && !sinks.empty(); ++d) {
    for (std::size_t src : sources) {
      if (surplus[src] <= 0.0) continue;
      const std::uint8_t* row = dist.row(src);
      for (std::size_t snk : sinks) {
        if (row[snk] != d || deficit[snk] <= 0.0) continue;
        const double mass = std::min(surplus[src], deficit[snk]);
        surplus[src] -= mass;
        deficit[snk] -= mass;
        plan.flows.push_back({src, snk, mass, d});
        plan.cost += mass * d;
        if (surplus[src] <= 0.0) break;
      }
    }
    std::erase_if(sinks, [&](std::size_t s) { return deficit[s] <= 0.0; });
  }
  return plan;
}

double optimal_transport_cost(std::span<const double> from, std::span<const double> to, const DistanceMatrix& dist) {
  check_sizes(from, to, dist);
  constexpr double kEps = 1e-13;
  const std::size_t size = dist.size();
  std::vector<std::size_t> sources, sinks;
  std::vector<double> supply, demand;
  for (std::size_t s = 0; s < size; ++s) {
    if (from[s] - to[s] > kEps) {
      sources.push_back(s);
      supply.push_back(from[s] - to[s]);
    } else if (to[s] - from[s] > kEps) {
      sinks.push_back(s);
      demand.push_back(to[s] - from[s]);
    }
  }
  const std::size_t a = sources.size();
  const std::size_t b = sinks.size();
  std::vector<double> flow(a * b, 0.0);
  double cost = 0.0;
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Residual graph: source i -> sink j always (cost +d); sink j -> source i
  // while flow(i, j) > 0 (cost -d). Bellman-Ford from every source with
  // supply left.
  for (;;) {
    std::vector<double> dist_src(a, kInf), dist_snk(b, kInf);
    std::vector<std::size_t> pred_src(a, b), pred_snk(b, a);  // sentinel: none
    bool any = false;
    for (std::size_t i = 0; i < a; ++i) {
      if (supply[i] > kEps) {
        dist_src[i] = 0.0;
        any = true;
      }
    }
    if (!any) break;
    for (std::size_t round = 0; round < a + b; ++round) {
      bool changed = false;
      for (std::size_t i = 0; i < a; ++i) {
        if (dist_src[i] == kInf) continue;
        for (std::size_t j = 0; j < b; ++j) {
          const double c = dist_src[i] + dist(sources[i], sinks[j]);
          if (c < dist_snk[j] - 1e-12) {
            dist_snk[j] = c;
            pred_snk[j] = i;
            changed = true;
          }
        }
      }
      for (std::size_t j = 0; j < b; ++j) {
        if (dist_snk[j] == kInf) continue;
        for (std::size_t i = 0; i < a; ++i) {
          if (flow[i * b + j] <= kEps) continue;
          const double c = dist_snk[j] - dist(sources[i], sinks[j]);
          if (c < dist_src[i] - 1e-12) {
            dist_src[i] = c;
            pred_src[i] = j;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }

    std::size_t target = b;
    for (std::size_t j = 0; j < b; ++j) {
      if (demand[j] > kEps && dist_snk[j] < kInf && (target == b || dist_snk[j] < dist_snk[target])) target = j;
    }
    if (target == b) break;

    // Walk back to the originating source, collecting the bottleneck.
    double push = demand[target];
    std::size_t j = target;
    std::size_t i = pred_snk[j];
    for (;;) {
      if (pred_src[i] == b) {
        push = std::min(push, supply[i]);
        break;
      }
      const std::size_t prev_j = pred_src[i];
      push = std::min(push, flow[i * b + prev_j]);
      j = prev_j;
      i = pred_snk[j];
    }

    j = target;
    i = pred_snk[j];
    demand[target] -= push;
    for (;;) {
      flow[i * b + j] += push;
      cost += push * dist(sources[i], sinks[j]);
      if (pred_src[i] == b) {
        supply[i] -= push;
        break;
      }
      const std::size_t prev_j = pred_src[i];
      flow[i * b + prev_j] -= push;
      cost -= push * dist(sources[i], sinks[prev_j]);
      j = prev_j;
      i = pred_snk[j];
    }
  }
  return cost;
}

}  // namespace ringbisect
