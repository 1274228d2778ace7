#include "ringbisect/oracles.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ringbisect::oracle {

std::vector<int> labeled_coloring(const CutEdgeSet& cuts) {
  const int n = cuts.ring_size();
  std::vector<int> color(static_cast<std::size_t>(n), 0);
  int c = 0;
  for (int v = 0; v < n; ++v) {
    color[static_cast<std::size_t>(v)] = c;
    if ((cuts.mask() >> v) & 1U) c ^= 1;
  }
  return color;
}

int recolor_distance(const CutEdgeSet& a, const CutEdgeSet& b) {
  const auto ca = labeled_coloring(a);
  const auto cb = labeled_coloring(b);
  int differ = 0;
  for (std::size_t v = 0; v < ca.size(); ++v) differ += ca[v] != cb[v] ? 1 : 0;
  return std::min(differ, static_cast<int>(ca.size()) - differ);
}

int smaller_class(const CutEdgeSet& cuts) {
  const auto c = labeled_coloring(cuts);
  const int ones = std::accumulate(c.begin(), c.end(), 0);
  return std::min(ones, static_cast<int>(c.size()) - ones);
}

std::vector<CutEdgeSet> all_states(int n) {
  check_ring_size(n);
  if (n > 24) throw std::length_error("all_states: ring too large for exhaustive enumeration");
  std::vector<std::uint64_t> masks;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n - 1)); ++code) {
    // Bit v - 1 of code is the color of node v; node 0 has color 0.
    std::uint64_t mask = 0;
    for (int v = 0; v < n; ++v) {
      const auto here = v == 0 ? 0 : (code >> (v - 1)) & 1U;
      const int w = (v + 1) % n;
      const auto next = w == 0 ? 0 : (code >> (w - 1)) & 1U;
      if (here != next) mask |= std::uint64_t{1} << v;
    }
    masks.push_back(mask);
  }
  std::sort(masks.begin(), masks.end());
  std::vector<CutEdgeSet> out;
  out.reserve(masks.size());
  for (auto m : masks) out.push_back(CutEdgeSet::from_mask(n, m));
  return out;
}

std::vector<CutEdgeSet> balanced_states(int n, std::optional<int> max_cut, const Ratio& alpha) {
  std::vector<CutEdgeSet> out;
  for (const CutEdgeSet& s : all_states(n)) {
    if (max_cut && s.size() > *max_cut) continue;
    const std::int64_t larger = n - smaller_class(s);
    if (2 * larger * alpha.den() <= alpha.num() * n) out.push_back(s);
  }
  return out;
}

namespace {

struct Table {
  std::vector<int> from_initial;
  std::vector<int> between;  // size * size
  std::size_t size;

  Table(std::span<const CutEdgeSet> states, const CutEdgeSet& initial) : size(states.size()) {
    between.resize(size * size);
    for (std::size_t a = 0; a < size; ++a) {
      from_initial.push_back(recolor_distance(initial, states[a]));
      for (std::size_t b = 0; b < size; ++b) between[a * size + b] = recolor_distance(states[a], states[b]);
    }
  }
};

}  // namespace

std::int64_t exhaustive_opt(std::span<const CutEdgeSet> states, const CutEdgeSet& initial,
                            std::span<const int> requests) {
  const Table table(states, initial);
  const std::size_t horizon = requests.size();
  if (horizon == 0) return 0;
  if (states.empty()) throw std::invalid_argument("exhaustive_opt: no states");
  std::vector<std::size_t> seq(horizon, 0);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (;;) {
    std::int64_t cost = (initial.contains(requests[0]) ? 1 : 0) + table.from_initial[seq[0]];
    for (std::size_t t = 1; t < horizon; ++t) {
      cost += states[seq[t - 1]].contains(requests[t]) ? 1 : 0;
      cost += table.between[seq[t - 1] * table.size + seq[t]];
    }
    best = std::min(best, cost);
    std::size_t pos = 0;
    while (pos < horizon && ++seq[pos] == table.size) seq[pos++] = 0;
    if (pos == horizon) break;
  }
  return best;
}

namespace {

struct Search {
  std::span<const CutEdgeSet> states;
  std::span<const int> requests;
  const Table& table;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();

  // `at` indexes states, or equals states.size() for the initial state.
  void visit(std::size_t t, std::size_t at, const CutEdgeSet& here, std::int64_t cost) {
    if (cost >= best) return;
    if (t == requests.size()) {
      best = cost;
      return;
    }
    const std::int64_t paid = cost + (here.contains(requests[t]) ? 1 : 0);
    std::vector<std::pair<int, std::size_t>> moves;
    moves.reserve(states.size());
    for (std::size_t s = 0; s < states.size(); ++s) {
      const int d = at == states.size() ? table.from_initial[s] : table.between[at * table.size + s];
      moves.emplace_back(d, s);
    }
    std::sort(moves.begin(), moves.end());
    for (const auto& [d, s] : moves) {
      if (paid + d >= best) break;
      visit(t + 1, s, states[s], paid + d);
    }
  }
};

}  // namespace

std::int64_t branch_and_bound_opt(std::span<const CutEdgeSet> states, const CutEdgeSet& initial,
                                  std::span<const int> requests) {
  if (requests.empty()) return 0;
  if (states.empty()) throw std::invalid_argument("branch_and_bound_opt: no states");
  const Table table(states, initial);
  Search search{states, requests, table};
  search.visit(0, states.size(), initial, 0);
  return search.best;
}

}  // namespace ringbisect::oracle
