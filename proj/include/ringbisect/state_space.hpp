#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ringbisect/ratio.hpp"
#include "ringbisect/ring.hpp"

namespace ringbisect {

/// All alpha-balanced cut-edge sets with at most `max_cut` edges, sorted
/// lexicographically so that index order is the tie-breaking order.
class StateSpace {
 public:
  StateSpace(int n, std::optional<int> max_cut, Ratio alpha, std::vector<CutEdgeSet> states);

  int ring_size() const noexcept { return n_; }
  std::optional<int> max_cut() const noexcept { return max_cut_; }
  const Ratio& alpha() const noexcept { return alpha_; }

  std::size_t size() const noexcept { return states_.size(); }
  const CutEdgeSet& operator[](std::size_t i) const { return states_[i]; }
  const std::vector<CutEdgeSet>& states() const noexcept { return states_; }

  std::optional<std::size_t> index_of(const CutEdgeSet& cuts) const;
  bool contains(const CutEdgeSet& cuts) const { return index_of(cuts).has_value(); }

 private:
  int n_;
  std::optional<int> max_cut_;
  Ratio alpha_;
  std::vector<CutEdgeSet> states_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Upper limit on enumerated states; larger spaces are rejected.
constexpr std::size_t kMaxStates = 20000;

/// Enumerates every valid cut-edge set of cardinality 0, 2, ..., max_cut
/// (all even cardinalities when unset) that is alpha-balanced.
/// Throws std::length_error past kMaxStates.
StateSpace enumerate_states(int n, std::optional<int> max_cut, const Ratio& alpha);

/// Dense symmetric table of state_distance over a state space.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const StateSpace& space);

  std::size_t size() const noexcept { return size_; }
  int operator()(std::size_t a, std::size_t b) const noexcept { return data_[a * size_ + b]; }
  const std::uint8_t* row(std::size_t a) const noexcept { return data_.data() + a * size_; }

 private:
  std::size_t size_;
  std::vector<std::uint8_t> data_;
};

}  // namespace ringbisect
