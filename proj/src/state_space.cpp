#include "ringbisect/state_space.hpp"

#include <algorithm>
#include <stdexcept>

namespace ringbisect {

StateSpace::StateSpace(int n, std::optional<int> max_cut, Ratio alpha, std::vector<CutEdgeSet> states)
    : n_(n), max_cut_(max_cut), alpha_(alpha), states_(std::move(states)) {
  check_ring_size(n);
  std::sort(states_.begin(), states_.end());
  index_.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i].ring_size() != n) throw std::invalid_argument("state on a different ring");
    if (!index_.emplace(states_[i].mask(), i).second) throw std::invalid_argument("duplicate state " + states_[i].str());
  }
}

std::optional<std::size_t> StateSpace::index_of(const CutEdgeSet& cuts) const {
  if (cuts.ring_size() != n_) return std::nullopt;
  const auto it = index_.find(cuts.mask());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

struct Enumerator {
  int n;
  const Ratio& alpha;
  std::vector<CutEdgeSet>& out;

  // Chooses `remaining` more edges from [next, n) on top of `mask`.
  void choose(int next, int remaining, std::uint64_t mask) {
    if (remaining == 0) {
      CutEdgeSet cuts = CutEdgeSet::from_mask(n, mask);
      if (is_alpha_balanced(cuts, alpha)) {
        if (out.size() >= kMaxStates) {
          throw std::length_error("state space exceeds " + std::to_string(kMaxStates) + " states");
        }
        out.push_back(cuts);
      }
      return;
    }
    for (int e = next; e <= n - remaining; ++e) choose(e + 1, remaining - 1, mask | (std::uint64_t{1} << e));
  }
};

}  // namespace

StateSpace enumerate_states(int n, std::optional<int> max_cut, const Ratio& alpha) {
  check_ring_size(n);
  if (alpha < Ratio(1)) throw std::invalid_argument("balance parameter must be at least 1");
  if (max_cut && *max_cut < 0) throw std::invalid_argument("max_cut must be non-negative");
  const int limit = max_cut ? std::min(*max_cut, n) : n;
  std::vector<CutEdgeSet> states;
  Enumerator gen{n, alpha, states};
  for (int size = 0; size <= limit; size += 2) gen.choose(0, size, 0);
  return StateSpace(n, max_cut, alpha, std::move(states));
}

DistanceMatrix::DistanceMatrix(const StateSpace& space) : size_(space.size()), data_(size_ * size_, 0) {
  for (std::size_t a = 0; a < size_; ++a) {
    for (std::size_t b = a + 1; b < size_; ++b) {
      const auto d = static_cast<std::uint8_t>(state_distance(space[a], space[b]));
      data_[a * size_ + b] = d;
      data_[b * size_ + a] = d;
    }
  }
}

}  // namespace ringbisect
