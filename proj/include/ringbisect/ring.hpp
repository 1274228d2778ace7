#pragma once

// Ring topology, colorings and cut-edge sets.
//
// Nodes are numbered 0..n-1 clockwise. Edge i joins node i and node
// (i + 1) mod n, so node w sits between edge w - 1 (counter-clockwise side)
// and edge w (clockwise side). A request for edge i is the node pair
// (i, i + 1 mod n).

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ringbisect/ratio.hpp"

namespace ringbisect {

constexpr int kMinRingSize = 4;
constexpr int kMaxRingSize = 64;

/// Throws std::invalid_argument unless n is even and within [4, 64].
void check_ring_size(int n);

enum class Color : std::uint8_t { Red, Blue };

constexpr Color opposite(Color c) noexcept { return c == Color::Red ? Color::Blue : Color::Red; }

using Coloring = std::vector<Color>;

/// An even-cardinality set of ring edges. Each such set induces exactly two
/// colorings, one the color swap of the other, so it is the label-free state
/// of a bisection.
class CutEdgeSet {
 public:
  explicit CutEdgeSet(int n);
  CutEdgeSet(int n, std::initializer_list<int> edges);

  static CutEdgeSet from_edges(int n, std::span<const int> edges);
  static CutEdgeSet from_mask(int n, std::uint64_t mask);

  int ring_size() const noexcept { return n_; }
  std::uint64_t mask() const noexcept { return mask_; }
  int size() const noexcept;
  bool empty() const noexcept { return mask_ == 0; }
  bool contains(int edge) const noexcept;
  bool is_subset_of(const CutEdgeSet& other) const noexcept;

  /// Strictly increasing edge indices.
  std::vector<int> edges() const;
  std::string str() const;

  friend bool operator==(const CutEdgeSet& a, const CutEdgeSet& b) noexcept = default;
  /// Lexicographic order of the increasing edge sequences; sets on
  /// different rings order by ring size first.
  friend std::strong_ordering operator<=>(const CutEdgeSet& a, const CutEdgeSet& b) noexcept;

 private:
  CutEdgeSet(int n, std::uint64_t mask) : n_(n), mask_(mask) {}

  int n_;
  std::uint64_t mask_ = 0;
};

CutEdgeSet cut_edges_of(const Coloring& coloring);
Coloring coloring_of(const CutEdgeSet& cuts, Color node0 = Color::Red);

/// Nodes that share node 0's color in either induced coloring.
int anchor_color_count(const CutEdgeSet& cuts);
/// Size of the smaller color class.
int less_count(const CutEdgeSet& cuts);
/// Larger class of the node0 = Red coloring; Red on an n/2 tie.
Color more_frequent_color(const CutEdgeSet& cuts);
/// Each color holds at most alpha * n / 2 nodes.
bool is_alpha_balanced(const CutEdgeSet& cuts, const Ratio& alpha);

/// Nodes strictly between two edges along one direction of the ring.
struct Arc {
  int start_edge = 0;
  int end_edge = 0;
  /// Listed clockwise from start_edge.
  std::vector<int> nodes;

  int size() const noexcept { return static_cast<int>(nodes.size()); }
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Clockwise arc: nodes from_edge + 1, ..., to_edge (mod n). Rejects equal edges.
Arc clockwise_arc(int n, int from_edge, int to_edge);
/// Shorter of the two arcs. On a tie the clockwise arc leaving the
/// lower-index edge wins.
Arc arc_between(int n, int e_i, int e_j);
int arc_distance(int n, int e_i, int e_j);

/// Alternating-arc potential set between two partitions.
struct PhiSet {
  /// Increasing node indices.
  std::vector<int> nodes;
  /// Clockwise constituent arcs, ordered by position of their start edge
  /// in the clockwise listing of the symmetric difference.
  std::vector<Arc> arcs;
  /// 0 if the first alternating union was taken, 1 for its complement.
  int branch = 0;

  int size() const noexcept { return static_cast<int>(nodes.size()); }
  bool empty() const noexcept { return nodes.empty(); }
  bool contains(int node) const;
};

/// Lists the symmetric difference clockwise from its lowest edge as
/// c1..cm, builds the unions of clockwise arcs (c1,c2),(c3,c4),... and
/// (c2,c3),...,(cm,c1), and returns the smaller one (first on a tie).
PhiSet phi(const CutEdgeSet& reference, const CutEdgeSet& other);

/// Minimum number of single-node recolorings turning one partition into the
/// other. Equals phi(a, b).size() but avoids materializing node lists.
int state_distance(const CutEdgeSet& a, const CutEdgeSet& b);

enum class StepKind : std::uint8_t { Shift, AddPair, RemovePair };

const char* to_string(StepKind kind) noexcept;

/// Classification of one node recoloring by its effect on the cut edges.
///
/// For Shift, `first` is the cut edge that disappears and `second` the one
/// that appears. For AddPair and RemovePair, `first` is the edge on the
/// counter-clockwise side of the node and `second` the clockwise one.
struct StepEvent {
  int node = 0;
  StepKind kind = StepKind::Shift;
  int first = 0;
  int second = 0;

  friend bool operator==(const StepEvent&, const StepEvent&) = default;
};

struct FlipOutcome {
  CutEdgeSet cuts;
  StepEvent event;
};

/// Recolors node w: toggles edges w - 1 and w.
FlipOutcome flip_node(const CutEdgeSet& cuts, int w);

/// Recolors every listed node at once. An edge toggles iff exactly one of
/// its endpoints is listed.
CutEdgeSet recolor_nodes(const CutEdgeSet& cuts, std::span<const int> nodes);

}  // namespace ringbisect
