#pragma once

// Brute-force reference implementations. They work on explicit labeled
// colorings and exhaustive enumeration and share no code path with the
// arc-based operations they are used to check.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ringbisect/ratio.hpp"
#include "ringbisect/ring.hpp"

namespace ringbisect::oracle {

/// Colors (0/1) obtained by walking the ring from node 0 = 0 and switching
/// color after every listed edge.
std::vector<int> labeled_coloring(const CutEdgeSet& cuts);

/// min(#nodes where the two labeled colorings differ, #nodes where they
/// agree): recolorings to make them identical or completely opposite.
int recolor_distance(const CutEdgeSet& a, const CutEdgeSet& b);

/// Size of the smaller color class, by counting.
int smaller_class(const CutEdgeSet& cuts);

/// Every valid cut-edge set on n nodes, via all 2^(n-1) colorings with
/// node 0 fixed, in increasing mask order.
std::vector<CutEdgeSet> all_states(int n);

/// All states with at most max_cut edges whose larger class holds at most
/// alpha * n / 2 nodes, counted directly on the labeled coloring.
std::vector<CutEdgeSet> balanced_states(int n, std::optional<int> max_cut, const Ratio& alpha);

/// Exhaustive minimum of sum_t hit(s_{t-1}, e_t) + d(s_{t-1}, s_t) over all
/// |states|^T state sequences. Only for tiny instances.
std::int64_t exhaustive_opt(std::span<const CutEdgeSet> states, const CutEdgeSet& initial,
                            std::span<const int> requests);

/// Depth-first search over all state sequences with cost-so-far pruning.
/// Exact; practical for a few dozen states and short sequences.
std::int64_t branch_and_bound_opt(std::span<const CutEdgeSet> states, const CutEdgeSet& initial,
                                  std::span<const int> requests);

}  // namespace ringbisect::oracle
