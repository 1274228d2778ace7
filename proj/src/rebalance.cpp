#include "ringbisect/rebalance.hpp"

#include <stdexcept>

namespace ringbisect {

namespace {

struct Candidate {
  int start = -1;
  int end = -1;
  int size = 0;
};

// Smallest monochromatic arc of `color` in the node0 = Red coloring; arcs
// are scanned by increasing start edge so the first minimum is kept.
Candidate smallest_arc(const CutEdgeSet& cuts, Color color) {
  const int n = cuts.ring_size();
  const std::vector<int> e = cuts.edges();
  const std::size_t m = e.size();
  // Arc i runs clockwise from e[i] to e[i+1]. Node 0's arc is the last
  // one and is Red, so arc i is Red iff i and m - 1 have equal parity.
  Candidate best;
  for (std::size_t i = 0; i < m; ++i) {
    const Color arc_color = (i % 2) == ((m - 1) % 2) ? Color::Red : Color::Blue;
    if (arc_color != color) continue;
    const int start = e[i];
    const int end = e[(i + 1) % m];
    const int size = ((end - start) % n + n) % n;
    if (best.start < 0 || size < best.size) best = {start, end, size};
  }
  return best;
}

}  // namespace

bool meets_sparsification_bound(int n, int j, int less) {
  return 2LL * j * less >= static_cast<long long>(n) * (j - 1);
}

bool meets_arc_size_bound(int n, int j, int arc_size) {
  return 2LL * j * j * arc_size <= static_cast<long long>(n) * j + n;
}

RebalanceResult global_rebalance(const CutEdgeSet& cuts, int k) {
  if (k < 1) throw std::invalid_argument("global_rebalance: k must be at least 1");
  const int n = cuts.ring_size();
  if (2 * less_count(cuts) != n) {
    throw std::invalid_argument("global_rebalance: input " + cuts.str() + " is not 1-balanced");
  }

  RebalanceResult out{cuts, {}};
  while (out.cuts.size() > 2 * k) {
    const Color color = more_frequent_color(out.cuts);
    const Candidate arc = smallest_arc(out.cuts, color);
    const int before = out.cuts.size();
    out.cuts = CutEdgeSet::from_mask(n, out.cuts.mask() ^ (std::uint64_t{1} << arc.start) ^ (std::uint64_t{1} << arc.end));
    out.trace.steps.push_back({arc.start, arc.end, color, arc.size, before, less_count(out.cuts)});
  }
  return out;
}

}  // namespace ringbisect
