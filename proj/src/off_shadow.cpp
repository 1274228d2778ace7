#include "ringbisect/off_shadow.hpp"

#include <algorithm>
#include <stdexcept>

#include "ringbisect/rebalance.hpp"

namespace ringbisect {

const char* to_string(SubCase sub_case) noexcept {
  switch (sub_case) {
    case SubCase::ShiftFollow:
      return "shift-follow";
    case SubCase::ShiftIgnore:
      return "shift-ignore";
    case SubCase::AddFollow:
      return "add-follow";
    case SubCase::AddIgnore:
      return "add-ignore";
    case SubCase::RemoveIgnore:
      return "remove-ignore";
    case SubCase::RemoveFollow:
      return "remove-follow";
    case SubCase::RemoveWithArc:
      return "remove-with-arc";
    case SubCase::RemoveSwapArc:
      return "remove-swap-arc";
  }
  return "?";
}

ShadowState ShadowState::start(const CutEdgeSet& opt_initial, int k) {
  const CutEdgeSet off = global_rebalance(opt_initial, k).cuts;
  return {off, opt_initial, k, shadow_alpha(k), state_distance(opt_initial, off), 0};
}

bool ShadowState::cut_invariants_hold() const {
  return off.is_subset_of(opt) && off.size() == std::min(2 * k, opt.size());
}

Arc arc_choice(const PhiSet& set, std::optional<int> anchor) {
  if (set.arcs.empty()) throw std::logic_error("arc_choice: empty potential set");
  if (anchor) {
    for (const Arc& a : set.arcs) {
      if (a.start_edge == *anchor || a.end_edge == *anchor) return a;
    }
    throw std::logic_error("arc_choice: no potential arc ends at edge " + std::to_string(*anchor));
  }
  const Arc* best = &set.arcs.front();
  for (const Arc& a : set.arcs) {
    if (a.size() < best->size() || (a.size() == best->size() && a.start_edge < best->start_edge)) best = &a;
  }
  return *best;
}

StepRecord apply_step(ShadowState& state, int w) {
  const PhiSet before = phi(state.opt, state.off);
  const FlipOutcome opt_flip = flip_node(state.opt, w);
  const StepEvent& ev = opt_flip.event;

  StepRecord rec;
  rec.event = ev;
  int cost = 0;
  auto follow = [&] {
    state.off = flip_node(state.off, w).cuts;
    cost += 1;
  };

  switch (ev.kind) {
    case StepKind::Shift:
      if (state.off.contains(ev.first)) {
        follow();
        rec.sub_case = SubCase::ShiftFollow;
      } else {
        rec.sub_case = SubCase::ShiftIgnore;
      }
      break;

    case StepKind::AddPair:
      if (state.off.size() <= 2 * (state.k - 1)) {
        follow();
        rec.sub_case = SubCase::AddFollow;
      } else {
        rec.sub_case = SubCase::AddIgnore;
      }
      break;

    case StepKind::RemovePair: {
      const bool has_first = state.off.contains(ev.first);
      const bool has_second = state.off.contains(ev.second);
      if (!has_first && !has_second) {
        rec.sub_case = SubCase::RemoveIgnore;
      } else if (has_first && has_second && state.off == state.opt) {
        follow();
        rec.sub_case = SubCase::RemoveFollow;
      } else if (has_first && has_second) {
        follow();
        const Arc arc = arc_choice(before);
        state.off = recolor_nodes(state.off, arc.nodes);
        cost += arc.size();
        rec.sub_case = SubCase::RemoveWithArc;
      } else {
        // The missing edge ends an arc of the potential; recoloring that
        // arc with w toggled moves the shared edge onto the arc's far end.
        const int missing = has_first ? ev.second : ev.first;
        const Arc arc = arc_choice(before, missing);
        std::vector<int> nodes = arc.nodes;
        if (const auto it = std::find(nodes.begin(), nodes.end(), w); it != nodes.end()) {
          nodes.erase(it);
        } else {
          nodes.push_back(w);
        }
        state.off = recolor_nodes(state.off, nodes);
        cost += static_cast<int>(nodes.size());
        rec.sub_case = SubCase::RemoveSwapArc;
      }
      break;
    }
  }

  state.opt = opt_flip.cuts;
  const int phi_after = state_distance(state.opt, state.off);
  rec.off_recolor_cost = cost;
  rec.delta_phi = phi_after - state.phi_value;
  state.phi_value = phi_after;
  return rec;
}

bool PhaseRecord::meets_phase_bound(int n, int k) const noexcept {
  return 2LL * k * (off_recolor + delta_phi()) >= n;
}

bool PhaseRecord::meets_phase_cost_bound(int k) const noexcept {
  const std::int64_t off_cost = off_hit + off_recolor + rebalance_cost;
  const std::int64_t phi_change = (closed_by_rebalance ? phi_after_rebalance : phi_end) - phi_begin;
  return off_cost + phi_change <= (3LL * k + 1) * (opt_hit + opt_recolor);
}

int OffRun::rebalance_count() const noexcept {
  return static_cast<int>(std::count_if(phases.begin(), phases.end(),
                                        [](const PhaseRecord& p) { return p.closed_by_rebalance; }));
}

bool meets_offline_bound(std::int64_t off_total, std::int64_t opt_total, int n, int k) noexcept {
  return 2 * off_total <= 2 * (3LL * k + 1) * opt_total + 3LL * n;
}

namespace {

void check_opt_trajectory(std::span<const int> requests, const Trajectory& opt) {
  const CutEdgeSet& init = opt.initial;
  const int n = init.ring_size();
  if (opt.steps.size() != requests.size()) {
    throw std::invalid_argument("run_off: trajectory length does not match the request sequence");
  }
  if (2 * less_count(init) != n) throw std::invalid_argument("run_off: initial optimum state is not 1-balanced");
  CutEdgeSet current = init;
  for (std::size_t t = 0; t < requests.size(); ++t) {
    const TrajectoryStep& s = opt.steps[t];
    if (s.request_edge != requests[t]) {
      throw std::invalid_argument("run_off: trajectory serves a different request at t=" + std::to_string(t));
    }
    if (s.before != current) throw std::invalid_argument("run_off: trajectory is not contiguous at t=" + std::to_string(t));
    if (2 * less_count(s.after) != n) {
      throw std::invalid_argument("run_off: optimum state is not 1-balanced after t=" + std::to_string(t));
    }
    current = s.after;
  }
}

class Checker {
 public:
  explicit Checker(std::vector<std::string>& sink) : sink_(sink) {}

  void expect(bool ok, const std::string& what) {
    if (!ok) sink_.push_back(what);
  }

 private:
  std::vector<std::string>& sink_;
};

}  // namespace

OffRun run_off(int k, std::span<const int> requests, const Trajectory& opt) {
  check_opt_trajectory(requests, opt);
  const int n = opt.initial.ring_size();

  ShadowState state = ShadowState::start(opt.initial, k);
  OffRun run(state.off);
  Checker check(run.violations);
  run.initial_rebalance_cost = state.phi_value;
  check.expect(state.cut_invariants_hold(), "cut invariants fail after the initial rebalance");
  check.expect(2 * state.phi_value <= n, "initial potential exceeds n/2");

  auto open_phase = [&](int first_request, std::int64_t first_step) {
    PhaseRecord p;
    p.index = state.phase_index;
    p.first_request = first_request;
    p.first_step = first_step;
    p.phi_begin = state.phi_value;
    p.phi_end = state.phi_value;
    p.less_begin = less_count(state.off);
    p.less_end = p.less_begin;
    run.phases.push_back(p);
  };
  auto boundary_check = [&](int t, const char* where) {
    check.expect(2 * (less_count(state.off) + state.phi_value) >= n,
                 "less(off) + phi < n/2 at request " + std::to_string(t) + " (" + where + ")");
  };

  std::int64_t step_index = 0;
  open_phase(0, 0);
  for (std::size_t t = 0; t < requests.size(); ++t) {
    const int request = requests[t];
    const TrajectoryStep& opt_step = opt.steps[t];
    const int ti = static_cast<int>(t);
    PhaseRecord* phase = &run.phases.back();
    const CutEdgeSet served_in = state.off;
    const int off_hit = served_in.contains(request) ? 1 : 0;
    check.expect(off_hit <= opt_step.hit, "off pays a hit the optimum avoids at request " + std::to_string(t));

    int recolor = 0;
    for (int w : decompose_transition(opt_step.before, opt_step.after)) {
      StepRecord rec = apply_step(state, w);
      rec.step_index = step_index++;
      rec.request_index = ti;
      rec.phase_index = state.phase_index;
      recolor += rec.off_recolor_cost;
      phase->off_recolor += rec.off_recolor_cost;
      phase->step_count += 1;
      check.expect(rec.meets_step_bound(), "step bound fails at step " + std::to_string(rec.step_index) + " (" +
                                               to_string(rec.sub_case) + ")");
      check.expect(state.cut_invariants_hold(), "cut invariants fail after step " + std::to_string(rec.step_index));
      run.steps.push_back(rec);
    }
    if (state.opt != opt_step.after) throw std::logic_error("run_off: replayed optimum diverged from its trajectory");

    phase->request_count += 1;
    phase->off_hit += off_hit;
    phase->opt_hit += opt_step.hit;
    phase->opt_recolor += opt_step.recolor;
    phase->phi_end = state.phi_value;
    phase->less_end = less_count(state.off);
    run.request_phase.push_back(state.phase_index);
    boundary_check(ti, "after steps");

    if (!is_alpha_balanced(state.off, state.alpha)) {
      check.expect(phase->meets_phase_bound(n, k), "phase bound fails in phase " + std::to_string(phase->index));
      const CutEdgeSet rebuilt = global_rebalance(state.opt, k).cuts;
      const int cost = state_distance(state.off, rebuilt);
      state.off = rebuilt;
      state.phi_value = state_distance(state.opt, state.off);
      recolor += cost;
      phase->closed_by_rebalance = true;
      phase->rebalance_cost = cost;
      phase->phi_after_rebalance = state.phi_value;
      check.expect(phase->meets_phase_cost_bound(k), "phase cost bound fails in phase " + std::to_string(phase->index));
      check.expect(state.cut_invariants_hold(), "cut invariants fail after rebalance at request " + std::to_string(t));
      state.phase_index += 1;
      open_phase(ti + 1, step_index);
      boundary_check(ti, "after rebalance");
    }
    run.trajectory.push(request, served_in, state.off, recolor);
  }

  const PhaseRecord& last = run.phases.back();
  if (!last.closed_by_rebalance) {
    check.expect(last.meets_phase_cost_bound(k), "phase cost bound fails in phase " + std::to_string(last.index));
  }
  check.expect(run.trajectory.hit_cost <= opt.hit_cost, "HC(off) exceeds HC(opt)");
  check.expect(meets_offline_bound(run.total_with_initial(), opt.total(), n, k),
               "OFF exceeds (3k+1) OPT + 3n/2");
  return run;
}

}  // namespace ringbisect
