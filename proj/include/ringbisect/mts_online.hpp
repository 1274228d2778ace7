#pragma once

// Online solvers for the restricted metrical task system whose states are
// the alpha-balanced cut-edge sets with at most 2k edges. Every request is
// served hit-first: the solver pays hit(current, e), then may move.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ringbisect/opt_oracle.hpp"
#include "ringbisect/ratio.hpp"
#include "ringbisect/rng.hpp"
#include "ringbisect/state_space.hpp"
#include "ringbisect/transport.hpp"

namespace ringbisect {

struct MtsInstance {
  StateSpace space;
  DistanceMatrix distance;
  std::size_t initial = 0;
  /// hits[e][s] = 1 iff state s cuts edge e.
  std::vector<std::vector<std::uint8_t>> hits;

  MtsInstance(StateSpace states, const CutEdgeSet& start);

  const std::vector<std::uint8_t>& hit(int edge) const { return hits.at(static_cast<std::size_t>(edge)); }
};

/// Restricted instance for the class with cut budget 2k: the space of
/// alpha-balanced sets with at most 2k edges, entered at
/// global_rebalance(initial, k).
MtsInstance make_restricted_instance(int k, const Ratio& alpha, const CutEdgeSet& initial);

std::vector<std::uint8_t> hit_vector(const StateSpace& space, int edge);

/// Work function: w(s) is the cheapest cost of serving the requests so far
/// and ending in s, starting from w0(s) = d(initial, s). That start is the
/// usual one for the work-function solver and keeps w 1-Lipschitz; it is a
/// lower bound on the hit-first cost, never a realized cost.
class WorkTable {
 public:
  explicit WorkTable(const MtsInstance& instance);

  std::span<const std::int64_t> values() const noexcept { return w_; }
  std::int64_t operator[](std::size_t s) const { return w_[s]; }

  /// w'(s) = min_{s'} w(s') + hit(s', e) + d(s', s).
  void update(const MtsInstance& instance, int edge);

 private:
  std::vector<std::int64_t> w_;
  std::vector<std::int64_t> scratch_;
};

struct WfaMove {
  std::size_t next = 0;
  int paid_hit = 0;
  int paid_move = 0;
};

/// Updates the work table, then moves to argmin_s w(s) + d(current, s).
/// Ties keep the current state if it is among the minimizers, else take
/// the lowest index.
WfaMove wfa_step(WorkTable& table, const MtsInstance& instance, std::size_t current, int edge);

class StateDistribution {
 public:
  StateDistribution() = default;
  explicit StateDistribution(std::vector<double> masses) : p_(std::move(masses)) {}

  static StateDistribution uniform(std::size_t size);
  static StateDistribution point_mass(std::size_t size, std::size_t at);

  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t s) const { return p_[s]; }
  std::span<const double> masses() const noexcept { return p_; }

  /// |sum - 1| and the most negative entry (0 if none).
  double normalization_error() const;
  bool is_valid(double tolerance = 1e-9) const;

 private:
  std::vector<double> p_;
};

/// p'(s) proportional to p(s) * exp(-eta * hit(s, e)). If every state with
/// mass is hit and the factor underflows to zero, p is returned unchanged.
StateDistribution multiplicative_update(const StateDistribution& dist, const std::vector<std::uint8_t>& hit, double eta);

struct MwMove {
  StateDistribution next;
  std::size_t sample = 0;
  double expected_hit = 0.0;
  double expected_move_cost = 0.0;
  TransportPlan plan;
};

/// One multiplicative-weights step. The new sample is drawn from the greedy
/// coupling between `dist` and the updated distribution, conditioned on the
/// current sample, so samples stay distributed as the weights and the
/// expected movement equals the coupling cost.
///
/// Throws std::invalid_argument unless eta > 0.
MwMove mw_step(const StateDistribution& dist, const MtsInstance& instance, std::size_t current, int edge, double eta,
               Rng& rng);

/// Online solver over a fixed instance. serve() receives one request at a
/// time and returns the state it moves to after paying the hit.
class OnlineSolver {
 public:
  virtual ~OnlineSolver() = default;

  virtual std::string name() const = 0;
  /// `horizon` is the number of requests to come (their values are not
  /// revealed); solvers may use it to tune step sizes.
  virtual void reset(const MtsInstance& instance, std::uint64_t seed, std::size_t horizon) = 0;
  virtual std::size_t serve(int edge) = 0;
  /// Expected total cost so far for randomized solvers.
  virtual std::optional<double> expected_cost() const { return std::nullopt; }
};

class WfaSolver final : public OnlineSolver {
 public:
  std::string name() const override { return "wfa"; }
  void reset(const MtsInstance& instance, std::uint64_t seed, std::size_t horizon) override;
  std::size_t serve(int edge) override;

  const WorkTable& table() const { return *table_; }

 private:
  const MtsInstance* instance_ = nullptr;
  std::optional<WorkTable> table_;
  std::size_t current_ = 0;
};

struct MwOptions {
  /// Learning rate; defaults to 1/sqrt(T) for a known horizon T, else 0.1.
  std::optional<double> eta;
};

/// Multiplicative weights from uniform weights. The first move leaves the
/// initial state for a draw from the first updated distribution; later
/// moves follow the greedy coupling.
class MwSolver final : public OnlineSolver {
 public:
  explicit MwSolver(MwOptions options = {}) : options_(options) {}

  std::string name() const override { return "mw"; }
  void reset(const MtsInstance& instance, std::uint64_t seed, std::size_t horizon) override;
  std::size_t serve(int edge) override;
  std::optional<double> expected_cost() const override { return expected_; }

  double eta() const noexcept { return eta_; }
  const StateDistribution& distribution() const noexcept { return dist_; }
  /// Largest normalization error seen after any update.
  double worst_normalization_error() const noexcept { return worst_error_; }

 private:
  MwOptions options_;
  const MtsInstance* instance_ = nullptr;
  StateDistribution dist_;
  std::optional<Rng> rng_;
  std::size_t current_ = 0;
  bool anchored_ = true;
  double eta_ = 0.1;
  double expected_ = 0.0;
  double worst_error_ = 0.0;
};

/// "wfa" or "mw"; throws std::invalid_argument otherwise.
std::unique_ptr<OnlineSolver> make_solver(const std::string& name, MwOptions options = {});

struct OnlineRun {
  Trajectory trajectory;
  std::vector<std::size_t> visited;  ///< state index after each request
  std::optional<double> expected_cost;

  explicit OnlineRun(CutEdgeSet start) : trajectory(start) {}
};

/// Feeds `requests` to the solver one at a time, recording the realized
/// trajectory.
OnlineRun run_online(OnlineSolver& solver, const MtsInstance& instance, std::span<const int> requests,
                     std::uint64_t seed);

}  // namespace ringbisect
