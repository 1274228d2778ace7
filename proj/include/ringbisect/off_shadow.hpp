#pragma once

// Offline shadow algorithm: follows an optimal 1-balanced trajectory one
// node recoloring at a time while keeping at most 2k cut edges, all of them
// shared with the optimum, and rebalances globally whenever it drifts out of
// (3/2 + 1/k)-balance at a request boundary.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ringbisect/opt_oracle.hpp"
#include "ringbisect/ratio.hpp"
#include "ringbisect/ring.hpp"

namespace ringbisect {

/// How the shadow reacted to one node recoloring of the optimum.
enum class SubCase : std::uint8_t {
  ShiftFollow,    ///< shifted edge is shared: recolor w too
  ShiftIgnore,    ///< shifted edge is not shared: nothing
  AddFollow,      ///< budget left: recolor w, adopting both new edges
  AddIgnore,      ///< budget exhausted: nothing
  RemoveIgnore,   ///< neither removed edge is shared: nothing
  RemoveFollow,   ///< both shared and the sets coincide: recolor w
  RemoveWithArc,  ///< both shared, optimum has more: recolor w and one potential arc
  RemoveSwapArc,  ///< exactly one shared: recolor the arc from it to the far end of the potential arc
};

const char* to_string(SubCase sub_case) noexcept;

struct ShadowState {
  CutEdgeSet off;
  CutEdgeSet opt;
  int k = 1;
  Ratio alpha;
  int phi_value = 0;
  int phase_index = 0;

  /// Rebalances `opt_initial` (which must be 1-balanced) to obtain the
  /// starting shadow state.
  static ShadowState start(const CutEdgeSet& opt_initial, int k);

  /// CE(off) within CE(opt) and |CE(off)| = min(2k, |CE(opt)|).
  bool cut_invariants_hold() const;
};

struct StepRecord {
  std::int64_t step_index = 0;
  int request_index = 0;
  int phase_index = 0;
  StepEvent event;
  SubCase sub_case = SubCase::ShiftIgnore;
  int off_recolor_cost = 0;
  int delta_phi = 0;

  /// The optimum pays exactly one recoloring per step.
  bool meets_step_bound() const noexcept { return off_recolor_cost + delta_phi <= 1; }
};

/// Picks the arc of the potential set the shadow recolors. Without an
/// anchor: the smallest arc, lowest start edge on ties. With an anchor:
/// the unique arc having it as an endpoint (throws std::logic_error if none).
Arc arc_choice(const PhiSet& set, std::optional<int> anchor = std::nullopt);

/// Mirrors one recoloring of node w by the optimum. Updates both cut sets
/// and the potential; the caller fills in step/request/phase indices.
StepRecord apply_step(ShadowState& state, int w);

struct PhaseRecord {
  int index = 0;
  int first_request = 0;
  int request_count = 0;
  std::int64_t first_step = 0;
  std::int64_t step_count = 0;

  std::int64_t off_hit = 0;
  std::int64_t off_recolor = 0;  ///< step recolorings only
  std::int64_t opt_hit = 0;
  std::int64_t opt_recolor = 0;

  int phi_begin = 0;
  int phi_end = 0;  ///< before the closing rebalance, if any
  int less_begin = 0;
  int less_end = 0;

  bool closed_by_rebalance = false;
  int rebalance_cost = 0;
  int phi_after_rebalance = 0;

  int delta_phi() const noexcept { return phi_end - phi_begin; }
  /// MC(off) + delta phi >= n/(2k); only claimed for closed phases.
  bool meets_phase_bound(int n, int k) const noexcept;
  /// OFF(p) + delta phi (both with the rebalance) <= (3k+1) * OPT(p).
  bool meets_phase_cost_bound(int k) const noexcept;
};

struct OffRun {
  Trajectory trajectory;
  int initial_rebalance_cost = 0;
  std::vector<StepRecord> steps;
  std::vector<PhaseRecord> phases;
  /// Phase in which each request was served.
  std::vector<int> request_phase;
  /// Every runtime invariant that failed, in order of detection.
  std::vector<std::string> violations;

  explicit OffRun(CutEdgeSet start) : trajectory(start) {}

  std::int64_t total_with_initial() const noexcept { return trajectory.total() + initial_rebalance_cost; }
  int rebalance_count() const noexcept;
};

/// OFF(sigma) <= (3k+1) * OPT(sigma) + (3/2) n.
bool meets_offline_bound(std::int64_t off_total, std::int64_t opt_total, int n, int k) noexcept;

/// Runs the shadow against `opt`, an optimal 1-balanced trajectory for
/// `requests`, checking every runtime invariant as it goes.
///
/// Throws std::invalid_argument if `opt` does not serve `requests` or
/// leaves 1-balance at a request boundary.
OffRun run_off(int k, std::span<const int> requests, const Trajectory& opt);

}  // namespace ringbisect
