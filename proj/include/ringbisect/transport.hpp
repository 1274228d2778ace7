#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ringbisect/state_space.hpp"

namespace ringbisect {

struct TransportFlow {
  std::size_t from = 0;
  std::size_t to = 0;
  double mass = 0.0;
  int distance = 0;
};

/// Coupling between two distributions on the same states. Mass that stays
/// put (min of the two) is implicit; `flows` lists only moved mass.
struct TransportPlan {
  std::vector<TransportFlow> flows;
  double cost = 0.0;

  /// Total mass leaving `state`.
  double outflow(std::size_t state) const;
  double inflow(std::size_t state) const;
};

/// Greedy coupling: surplus states ship to deficit states in order of
/// increasing distance, then source index, then sink index.
TransportPlan greedy_coupling(std::span<const double> from, std::span<const double> to, const DistanceMatrix& dist);

/// Exact minimum transport cost by successive shortest paths. Cubic or
/// worse; meant for cross-checking the greedy coupling on small spaces.
double optimal_transport_cost(std::span<const double> from, std::span<const double> to, const DistanceMatrix& dist);

}  // namespace ringbisect
