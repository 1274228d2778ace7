#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ringbisect/ratio.hpp"
#include "ringbisect/ring.hpp"
#include "ringbisect/state_space.hpp"

namespace ringbisect {

/// One served request: the hit is paid in `before`, then the algorithm
/// moves to `after`.
struct TrajectoryStep {
  int request_edge = 0;
  CutEdgeSet before;
  CutEdgeSet after;
  int hit = 0;
  int recolor = 0;
};

struct Trajectory {
  CutEdgeSet initial;
  std::vector<TrajectoryStep> steps;
  std::int64_t hit_cost = 0;
  std::int64_t recolor_cost = 0;

  explicit Trajectory(CutEdgeSet start) : initial(start) {}

  std::int64_t total() const noexcept { return hit_cost + recolor_cost; }
  /// Appends a step, charging hit by membership and recolor by distance.
  void push(int request_edge, const CutEdgeSet& before, const CutEdgeSet& after);
  /// Same, with a recoloring cost that may exceed the net distance (an
  /// algorithm that recolors a node twice pays twice).
  void push(int request_edge, const CutEdgeSet& before, const CutEdgeSet& after, int recolor);
  const CutEdgeSet& final_state() const noexcept { return steps.empty() ? initial : steps.back().after; }
};

struct OptResult {
  std::int64_t cost = 0;
  Trajectory trajectory;
};

/// Minimum of sum_t hit(s_{t-1}, e_t) + d(s_{t-1}, s_t) over all state
/// sequences inside `space`, by backward dynamic programming in
/// O(T * |S|^2). Among optimal successors the lowest-index (lexicographically
/// smallest) state is taken.
///
/// Throws std::invalid_argument if `initial` is not in the space or a
/// request is not a ring edge.
OptResult exact_opt(const StateSpace& space, const DistanceMatrix& dist, const CutEdgeSet& initial,
                    std::span<const int> requests);
OptResult exact_opt(const StateSpace& space, const CutEdgeSet& initial, std::span<const int> requests);

/// Optimal cost of every prefix: entry t is min over states of the cheapest
/// way to serve the first t requests and end there. Entry 0 is 0.
std::vector<std::int64_t> optimal_prefix_costs(const StateSpace& space, const DistanceMatrix& dist,
                                               const CutEdgeSet& initial, std::span<const int> requests);

struct RestrictedOptResult {
  OptResult opt;
  /// Starting state after the class-wide initial rebalance.
  CutEdgeSet start;
  /// Cost of that rebalance; not part of opt.cost.
  int initial_rebalance_cost = 0;
};

/// Offline optimum over alpha-balanced states with at most 2k cut edges,
/// starting from global_rebalance(initial, k).
RestrictedOptResult restricted_opt(int k, const Ratio& alpha, const CutEdgeSet& initial,
                                   std::span<const int> requests);

/// Nodes of phi(from, to) as single recolorings: arc by arc in clockwise
/// order, each arc swept clockwise. Flipping them in order turns `from`
/// into `to`.
std::vector<int> decompose_transition(const CutEdgeSet& from, const CutEdgeSet& to);

}  // namespace ringbisect
