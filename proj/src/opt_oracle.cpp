#include "ringbisect/opt_oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "ringbisect/rebalance.hpp"

namespace ringbisect {

void Trajectory::push(int request_edge, const CutEdgeSet& before, const CutEdgeSet& after) {
  push(request_edge, before, after, state_distance(before, after));
}

void Trajectory::push(int request_edge, const CutEdgeSet& before, const CutEdgeSet& after, int recolor) {
  TrajectoryStep step{request_edge, before, after, before.contains(request_edge) ? 1 : 0, recolor};
  hit_cost += step.hit;
  recolor_cost += step.recolor;
  steps.push_back(step);
}

namespace {

void check_requests(int n, std::span<const int> requests) {
  for (int e : requests) {
    if (e < 0 || e >= n) throw std::invalid_argument("request edge " + std::to_string(e) + " outside ring");
  }
}

std::size_t require_index(const StateSpace& space, const CutEdgeSet& s) {
  const auto idx = space.index_of(s);
  if (!idx) throw std::invalid_argument("initial state " + s.str() + " is not in the state space");
  return *idx;
}

// hits[e][s] = 1 iff state s cuts edge e.
std::vector<std::vector<std::int32_t>> hit_table(const StateSpace& space) {
  const int n = space.ring_size();
  std::vector<std::vector<std::int32_t>> hits(static_cast<std::size_t>(n), std::vector<std::int32_t>(space.size()));
  for (std::size_t s = 0; s < space.size(); ++s) {
    for (int e = 0; e < n; ++e) hits[static_cast<std::size_t>(e)][s] = space[s].contains(e) ? 1 : 0;
  }
  return hits;
}

// out[s] = min_{s'} d(s, s') + value[s'].
void relax(const DistanceMatrix& dist, std::span<const std::int32_t> value, std::span<std::int32_t> out) {
  const std::size_t size = dist.size();
  for (std::size_t s = 0; s < size; ++s) {
    const std::uint8_t* row = dist.row(s);
    std::int32_t best = std::numeric_limits<std::int32_t>::max();
    for (std::size_t t = 0; t < size; ++t) best = std::min(best, static_cast<std::int32_t>(row[t]) + value[t]);
    out[s] = best;
  }
}

}  // namespace

OptResult exact_opt(const StateSpace& space, const DistanceMatrix& dist, const CutEdgeSet& initial,
                    std::span<const int> requests) {
  check_requests(space.ring_size(), requests);
  const std::size_t start = require_index(space, initial);
  const std::size_t size = space.size();
  const std::size_t horizon = requests.size();
  const auto hits = hit_table(space);

  // cost_to_go[t * size + s]: cheapest way to serve requests t.. from state s.
  std::vector<std::int32_t> cost_to_go((horizon + 1) * size, 0);
  for (std::size_t t = horizon; t-- > 0;) {
    std::span<const std::int32_t> next(cost_to_go.data() + (t + 1) * size, size);
    std::span<std::int32_t> here(cost_to_go.data() + t * size, size);
    relax(dist, next, here);
    const auto& hit = hits[static_cast<std::size_t>(requests[t])];
    for (std::size_t s = 0; s < size; ++s) here[s] += hit[s];
  }

  OptResult out{cost_to_go[start], Trajectory(initial)};
  std::size_t current = start;
  for (std::size_t t = 0; t < horizon; ++t) {
    const std::int32_t* next = cost_to_go.data() + (t + 1) * size;
    const std::uint8_t* row = dist.row(current);
    std::size_t best = 0;
    std::int32_t best_value = std::numeric_limits<std::int32_t>::max();
    for (std::size_t s = 0; s < size; ++s) {
      const std::int32_t v = static_cast<std::int32_t>(row[s]) + next[s];
      if (v < best_value) {
        best_value = v;
        best = s;
      }
    }
    out.trajectory.push(requests[t], space[current], space[best]);
    current = best;
  }
  return out;
}

OptResult exact_opt(const StateSpace& space, const CutEdgeSet& initial, std::span<const int> requests) {
  const DistanceMatrix dist(space);
  return exact_opt(space, dist, initial, requests);
}

std::vector<std::int64_t> optimal_prefix_costs(const StateSpace& space, const DistanceMatrix& dist,
                                               const CutEdgeSet& initial, std::span<const int> requests) {
  check_requests(space.ring_size(), requests);
  const std::size_t start = require_index(space, initial);
  const std::size_t size = space.size();
  const auto hits = hit_table(space);

  // The first request is served from the initial state, so no other state
  // is reachable at time 0.
  constexpr std::int32_t kUnreachable = std::numeric_limits<std::int32_t>::max() / 2;
  std::vector<std::int32_t> work(size, kUnreachable), scratch(size);
  work[start] = 0;
  std::vector<std::int64_t> prefix{0};
  prefix.reserve(requests.size() + 1);
  for (int e : requests) {
    const auto& hit = hits[static_cast<std::size_t>(e)];
    for (std::size_t s = 0; s < size; ++s) scratch[s] = work[s] + hit[s];
    relax(dist, scratch, work);
    prefix.push_back(*std::min_element(work.begin(), work.end()));
  }
  return prefix;
}

RestrictedOptResult restricted_opt(int k, const Ratio& alpha, const CutEdgeSet& initial,
                                   std::span<const int> requests) {
  const RebalanceResult rebalanced = global_rebalance(initial, k);
  const StateSpace space = enumerate_states(initial.ring_size(), 2 * k, alpha);
  return {exact_opt(space, rebalanced.cuts, requests), rebalanced.cuts, state_distance(initial, rebalanced.cuts)};
}

std::vector<int> decompose_transition(const CutEdgeSet& from, const CutEdgeSet& to) {
  const PhiSet set = phi(from, to);
  std::vector<int> order;
  order.reserve(set.nodes.size());
  for (const Arc& arc : set.arcs) order.insert(order.end(), arc.nodes.begin(), arc.nodes.end());
  return order;
}

}  // namespace ringbisect
