#pragma once

#include <vector>

#include "ringbisect/ring.hpp"

namespace ringbisect {

struct RebalanceStep {
  int removed_first = 0;  ///< start edge of the recolored arc
  int removed_second = 0; ///< end edge of the recolored arc
  Color arc_color = Color::Red;
  int arc_size = 0;
  int cuts_before = 0;
  int less_after = 0;
};

struct RebalanceTrace {
  std::vector<RebalanceStep> steps;
};

struct RebalanceResult {
  CutEdgeSet cuts;
  RebalanceTrace trace;
};

/// Sparsifies a 1-balanced cut-edge set to min(2k, |C|) of its own edges.
///
/// While more than 2k edges remain, the smallest monochromatic arc of the
/// more frequent color is recolored, which drops its two bounding edges.
/// Ties: the lowest start edge wins; on an n/2 color tie Red (node 0's
/// color) counts as more frequent. The result is (1 + 1/k)-balanced.
///
/// Throws std::invalid_argument if `cuts` is not 1-balanced or k < 1.
RebalanceResult global_rebalance(const CutEdgeSet& cuts, int k);

/// True iff 2j * less >= n * (j - 1), i.e. less >= n/2 - n/(2j), for a set
/// with 2j cut edges.
bool meets_sparsification_bound(int n, int j, int less);

/// True iff the smallest arc chosen from a set of 2j edges satisfies
/// size <= n/(2j) + n/(2j^2).
bool meets_arc_size_bound(int n, int j, int arc_size);

}  // namespace ringbisect
