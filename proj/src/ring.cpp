#include "ringbisect/ring.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace ringbisect {

namespace {

constexpr std::uint64_t bit(int e) noexcept { return std::uint64_t{1} << e; }

constexpr std::uint64_t full_mask(int n) noexcept {
  return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

int edge_before(int n, int w) noexcept { return (w + n - 1) % n; }

void check_edge(int n, int e) {
  if (e < 0 || e >= n) {
    throw std::out_of_range("edge " + std::to_string(e) + " outside ring of size " + std::to_string(n));
  }
}

std::vector<int> bits_of(std::uint64_t mask) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::popcount(mask)));
  while (mask != 0) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

}  // namespace

void check_ring_size(int n) {
  if (n < kMinRingSize || n > kMaxRingSize || n % 2 != 0) {
    throw std::invalid_argument("ring size must be even and in [4, 64], got " + std::to_string(n));
  }
}

CutEdgeSet::CutEdgeSet(int n) : n_(n) { check_ring_size(n); }

CutEdgeSet::CutEdgeSet(int n, std::initializer_list<int> edges)
    : CutEdgeSet(from_edges(n, std::span<const int>(edges.begin(), edges.size()))) {}

CutEdgeSet CutEdgeSet::from_edges(int n, std::span<const int> edges) {
  check_ring_size(n);
  std::uint64_t mask = 0;
  for (int e : edges) {
    check_edge(n, e);
    if ((mask & bit(e)) != 0) throw std::invalid_argument("duplicate cut edge " + std::to_string(e));
    mask |= bit(e);
  }
  return from_mask(n, mask);
}

CutEdgeSet CutEdgeSet::from_mask(int n, std::uint64_t mask) {
  check_ring_size(n);
  if ((mask & ~full_mask(n)) != 0) throw std::out_of_range("cut-edge mask has bits beyond the ring");
  if (std::popcount(mask) % 2 != 0) throw std::invalid_argument("cut-edge set must have even cardinality");
  return CutEdgeSet(n, mask);
}

int CutEdgeSet::size() const noexcept { return std::popcount(mask_); }

bool CutEdgeSet::contains(int edge) const noexcept {
  return edge >= 0 && edge < n_ && (mask_ & bit(edge)) != 0;
}

bool CutEdgeSet::is_subset_of(const CutEdgeSet& other) const noexcept {
  return n_ == other.n_ && (mask_ & ~other.mask_) == 0;
}

std::vector<int> CutEdgeSet::edges() const { return bits_of(mask_); }

std::string CutEdgeSet::str() const {
  std::string out = "{";
  bool first = true;
  for (int e : edges()) {
    if (!first) out += ',';
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

std::strong_ordering operator<=>(const CutEdgeSet& a, const CutEdgeSet& b) noexcept {
  if (a.n_ != b.n_) return a.n_ <=> b.n_;
  const std::uint64_t diff = a.mask_ ^ b.mask_;
  if (diff == 0) return std::strong_ordering::equal;
  // Both sequences agree below the lowest differing edge x. The one holding
  // x continues with x; the other continues with something larger, or ends.
  const int x = std::countr_zero(diff);
  const bool a_has = (a.mask_ & bit(x)) != 0;
  const std::uint64_t above = x == 63 ? 0 : ~full_mask(x + 1);
  const std::uint64_t other_rest = (a_has ? b.mask_ : a.mask_) & above;
  const bool holder_is_smaller = other_rest != 0;
  if (a_has == holder_is_smaller) return std::strong_ordering::less;
  return std::strong_ordering::greater;
}

CutEdgeSet cut_edges_of(const Coloring& coloring) {
  const int n = static_cast<int>(coloring.size());
  check_ring_size(n);
  std::uint64_t mask = 0;
  for (int i = 0; i < n; ++i) {
    if (coloring[static_cast<std::size_t>(i)] != coloring[static_cast<std::size_t>((i + 1) % n)]) mask |= bit(i);
  }
  return CutEdgeSet::from_mask(n, mask);
}

Coloring coloring_of(const CutEdgeSet& cuts, Color node0) {
  const int n = cuts.ring_size();
  Coloring out(static_cast<std::size_t>(n));
  Color current = node0;
  out[0] = current;
  for (int i = 1; i < n; ++i) {
    if (cuts.contains(i - 1)) current = opposite(current);
    out[static_cast<std::size_t>(i)] = current;
  }
  return out;
}

int anchor_color_count(const CutEdgeSet& cuts) {
  // Node 0's arc runs from the last cut edge (wrapping) to the first; after
  // that the arcs alternate in color.
  const std::vector<int> e = cuts.edges();
  const int n = cuts.ring_size();
  if (e.empty()) return n;
  int same = e.front() + 1 + (n - 1 - e.back());
  for (std::size_t i = 1; i + 1 < e.size(); i += 2) same += e[i + 1] - e[i];
  return same;
}

int less_count(const CutEdgeSet& cuts) {
  const int same = anchor_color_count(cuts);
  return std::min(same, cuts.ring_size() - same);
}

Color more_frequent_color(const CutEdgeSet& cuts) {
  const int red = anchor_color_count(cuts);
  return 2 * red >= cuts.ring_size() ? Color::Red : Color::Blue;
}

bool is_alpha_balanced(const CutEdgeSet& cuts, const Ratio& alpha) {
  if (alpha < Ratio(1)) throw std::invalid_argument("balance parameter must be at least 1");
  const std::int64_t n = cuts.ring_size();
  const std::int64_t larger = n - less_count(cuts);
  return 2 * larger * alpha.den() <= alpha.num() * n;
}

Arc clockwise_arc(int n, int from_edge, int to_edge) {
  check_ring_size(n);
  check_edge(n, from_edge);
  check_edge(n, to_edge);
  if (from_edge == to_edge) throw std::invalid_argument("arc between an edge and itself is undefined");
  Arc arc{from_edge, to_edge, {}};
  for (int v = (from_edge + 1) % n;; v = (v + 1) % n) {
    arc.nodes.push_back(v);
    if (v == to_edge) break;
  }
  return arc;
}

Arc arc_between(int n, int e_i, int e_j) {
  const int lo = std::min(e_i, e_j);
  const int hi = std::max(e_i, e_j);
  Arc forward = clockwise_arc(n, lo, hi);
  if (2 * forward.size() <= n) return forward;
  return clockwise_arc(n, hi, lo);
}

int arc_distance(int n, int e_i, int e_j) {
  check_ring_size(n);
  check_edge(n, e_i);
  check_edge(n, e_j);
  if (e_i == e_j) throw std::invalid_argument("arc between an edge and itself is undefined");
  const int cw = ((e_j - e_i) % n + n) % n;
  return std::min(cw, n - cw);
}

bool PhiSet::contains(int node) const { return std::binary_search(nodes.begin(), nodes.end(), node); }

PhiSet phi(const CutEdgeSet& reference, const CutEdgeSet& other) {
  if (reference.ring_size() != other.ring_size()) throw std::invalid_argument("phi: ring sizes differ");
  const int n = reference.ring_size();
  const std::vector<int> diff = bits_of(reference.mask() ^ other.mask());
  PhiSet out;
  if (diff.empty()) return out;

  const std::size_t m = diff.size();
  int size0 = 0;
  for (std::size_t i = 0; i < m; i += 2) size0 += diff[i + 1] - diff[i];
  out.branch = 2 * size0 <= n ? 0 : 1;

  for (std::size_t i = static_cast<std::size_t>(out.branch); i < m; i += 2) {
    out.arcs.push_back(clockwise_arc(n, diff[i], diff[(i + 1) % m]));
  }
  for (const Arc& a : out.arcs) out.nodes.insert(out.nodes.end(), a.nodes.begin(), a.nodes.end());
  std::sort(out.nodes.begin(), out.nodes.end());
  return out;
}

int state_distance(const CutEdgeSet& a, const CutEdgeSet& b) {
  if (a.ring_size() != b.ring_size()) throw std::invalid_argument("state_distance: ring sizes differ");
  std::uint64_t diff = a.mask() ^ b.mask();
  int size0 = 0;
  while (diff != 0) {
    const int lo = std::countr_zero(diff);
    diff &= diff - 1;
    const int hi = std::countr_zero(diff);
    diff &= diff - 1;
    size0 += hi - lo;
  }
  return std::min(size0, a.ring_size() - size0);
}

const char* to_string(StepKind kind) noexcept {
  switch (kind) {
    case StepKind::Shift:
      return "shift";
    case StepKind::AddPair:
      return "add-pair";
    case StepKind::RemovePair:
      return "remove-pair";
  }
  return "?";
}

FlipOutcome flip_node(const CutEdgeSet& cuts, int w) {
  const int n = cuts.ring_size();
  if (w < 0 || w >= n) throw std::out_of_range("node " + std::to_string(w) + " outside ring");
  const int left = edge_before(n, w);
  const int right = w;
  const bool has_left = cuts.contains(left);
  const bool has_right = cuts.contains(right);

  StepEvent ev{w, StepKind::Shift, left, right};
  if (has_left && has_right) {
    ev.kind = StepKind::RemovePair;
  } else if (!has_left && !has_right) {
    ev.kind = StepKind::AddPair;
  } else if (has_right) {
    ev.first = right;
    ev.second = left;
  }
  return {CutEdgeSet::from_mask(n, cuts.mask() ^ bit(left) ^ bit(right)), ev};
}

CutEdgeSet recolor_nodes(const CutEdgeSet& cuts, std::span<const int> nodes) {
  const int n = cuts.ring_size();
  std::uint64_t marked = 0;
  for (int v : nodes) {
    if (v < 0 || v >= n) throw std::out_of_range("node " + std::to_string(v) + " outside ring");
    marked ^= bit(v);
  }
  // Edge i toggles iff exactly one of nodes i, i + 1 is marked.
  const std::uint64_t rotated = ((marked >> 1) | ((marked & 1) << (n - 1))) & full_mask(n);
  return CutEdgeSet::from_mask(n, cuts.mask() ^ (marked ^ rotated));
}

}  // namespace ringbisect
