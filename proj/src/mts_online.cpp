#include "ringbisect/mts_online.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ringbisect/rebalance.hpp"

namespace ringbisect {

std::vector<std::uint8_t> hit_vector(const StateSpace& space, int edge) {
  if (edge < 0 || edge >= space.ring_size()) throw std::invalid_argument("hit_vector: edge outside ring");
  std::vector<std::uint8_t> out(space.size());
  for (std::size_t s = 0; s < space.size(); ++s) out[s] = space[s].contains(edge) ? 1 : 0;
  return out;
}

MtsInstance::MtsInstance(StateSpace states, const CutEdgeSet& start)
    : space(std::move(states)), distance(space) {
  const auto idx = space.index_of(start);
  if (!idx) throw std::invalid_argument("initial state " + start.str() + " is not in the restricted space");
  initial = *idx;
  for (int e = 0; e < space.ring_size(); ++e) hits.push_back(hit_vector(space, e));
}

MtsInstance make_restricted_instance(int k, const Ratio& alpha, const CutEdgeSet& initial) {
  const CutEdgeSet start = global_rebalance(initial, k).cuts;
  return MtsInstance(enumerate_states(initial.ring_size(), 2 * k, alpha), start);
}

WorkTable::WorkTable(const MtsInstance& instance) : w_(instance.space.size()), scratch_(instance.space.size()) {
  for (std::size_t s = 0; s < w_.size(); ++s) w_[s] = instance.distance(instance.initial, s);
}

void WorkTable::update(const MtsInstance& instance, int edge) {
  // w is 1-Lipschitz, so w'(s) is w(s) when s is not hit, and otherwise
  // w(s) + 1 unless some unhit s' has w(s') + d(s', s) = w(s).
  const auto& hit = instance.hit(edge);
  const std::size_t size = w_.size();
  std::vector<std::size_t> free_states;
  for (std::size_t s = 0; s < size; ++s) {
    if (!hit[s]) free_states.push_back(s);
  }
  for (std::size_t s = 0; s < size; ++s) scratch_[s] = w_[s];
  for (std::size_t s = 0; s < size; ++s) {
    if (!hit[s]) continue;
    const std::uint8_t* row = instance.distance.row(s);
    bool reached = false;
    for (std::size_t t : free_states) {
      if (scratch_[t] + row[t] <= scratch_[s]) {
        reached = true;
        break;
      }
    }
    if (!reached) w_[s] += 1;
  }
}

WfaMove wfa_step(WorkTable& table, const MtsInstance& instance, std::size_t current, int edge) {
  WfaMove move;
  move.paid_hit = instance.hit(edge)[current];
  table.update(instance, edge);
  const std::uint8_t* row = instance.distance.row(current);
  std::size_t best = current;
  std::int64_t best_value = table[current];
  for (std::size_t s = 0; s < instance.space.size(); ++s) {
    const std::int64_t v = table[s] + row[s];
    if (v < best_value) {
      best_value = v;
      best = s;
    }
  }
  move.next = best;
  move.paid_move = row[best];
  return move;
}

StateDistribution StateDistribution::uniform(std::size_t size) {
  if (size == 0) throw std::invalid_argument("empty distribution");
  return StateDistribution(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

StateDistribution StateDistribution::point_mass(std::size_t size, std::size_t at) {
  std::vector<double> p(size, 0.0);
  p.at(at) = 1.0;
  return StateDistribution(std::move(p));
}

double StateDistribution::normalization_error() const {
  double sum = 0.0;
  double worst_negative = 0.0;
  for (double x : p_) {
    sum += x;
    worst_negative = std::max(worst_negative, -x);
  }
  return std::max(std::abs(sum - 1.0), worst_negative);
}

bool StateDistribution::is_valid(double tolerance) const {
  return !p_.empty() && std::all_of(p_.begin(), p_.end(), [](double x) { return x >= 0.0 && std::isfinite(x); }) &&
         normalization_error() <= tolerance;
}

StateDistribution multiplicative_update(const StateDistribution& dist, const std::vector<std::uint8_t>& hit,
                                        double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("learning rate must be positive");
  if (hit.size() != dist.size()) throw std::invalid_argument("hit vector size mismatch");
  const double penalty = std::exp(-eta);
  std::vector<double> q(dist.size());
  double total = 0.0;
  for (std::size_t s = 0; s < q.size(); ++s) {
    q[s] = hit[s] ? dist[s] * penalty : dist[s];
    total += q[s];
  }
  if (!(total > 0.0)) return dist;
  for (double& x : q) x /= total;
  return StateDistribution(std::move(q));
}

namespace {

double expected_hit(const StateDistribution& dist, const std::vector<std::uint8_t>& hit) {
  double e = 0.0;
  for (std::size_t s = 0; s < dist.size(); ++s) e += hit[s] ? dist[s] : 0.0;
  return e;
}

// Index drawn from `dist` by inversion.
std::size_t draw(const StateDistribution& dist, Rng& rng) {
  double u = rng.unit();
  std::size_t last = 0;
  for (std::size_t s = 0; s < dist.size(); ++s) {
    if (dist[s] <= 0.0) continue;
    last = s;
    if (u < dist[s]) return s;
    u -= dist[s];
  }
  return last;
}

}  // namespace

MwMove mw_step(const StateDistribution& dist, const MtsInstance& instance, std::size_t current, int edge, double eta,
               Rng& rng) {
  if (!(eta > 0.0)) throw std::invalid_argument("learning rate must be positive");
  const auto& hit = instance.hit(edge);
  MwMove move;
  move.expected_hit = expected_hit(dist, hit);
  move.next = multiplicative_update(dist, hit, eta);
  move.plan = greedy_coupling(dist.masses(), move.next.masses(), instance.distance);
  move.expected_move_cost = move.plan.cost;

  // Condition the coupling on the current sample.
  const double here = dist[current];
  move.sample = current;
  if (!(here > 0.0)) {
    move.sample = draw(move.next, rng);
    return move;
  }
  double u = rng.unit() * here;
  const double stay = std::min(here, move.next[current]);
  if (u < stay) return move;
  u -= stay;
  for (const TransportFlow& f : move.plan.flows) {
    if (f.from != current) continue;
    move.sample = f.to;
    if (u < f.mass) break;
    u -= f.mass;
  }
  return move;
}

void WfaSolver::reset(const MtsInstance& instance, std::uint64_t, std::size_t) {
  instance_ = &instance;
  table_.emplace(instance);
  current_ = instance.initial;
}

std::size_t WfaSolver::serve(int edge) {
  current_ = wfa_step(*table_, *instance_, current_, edge).next;
  return current_;
}

void MwSolver::reset(const MtsInstance& instance, std::uint64_t seed, std::size_t horizon) {
  instance_ = &instance;
  dist_ = StateDistribution::uniform(instance.space.size());
  rng_.emplace(seed);
  current_ = instance.initial;
  anchored_ = true;
  expected_ = 0.0;
  worst_error_ = dist_.normalization_error();
  if (options_.eta) {
    eta_ = *options_.eta;
  } else {
    eta_ = horizon > 0 ? 1.0 / std::sqrt(static_cast<double>(horizon)) : 0.1;
  }
  if (!(eta_ > 0.0)) throw std::invalid_argument("learning rate must be positive");
}

std::size_t MwSolver::serve(int edge) {
  const auto& hit = instance_->hit(edge);
  if (anchored_) {
    // The sample still sits at the initial state, not at a draw from the
    // weights, so the only coupling is the independent one.
    expected_ += hit[current_];
    dist_ = multiplicative_update(dist_, hit, eta_);
    const std::uint8_t* row = instance_->distance.row(current_);
    for (std::size_t s = 0; s < dist_.size(); ++s) expected_ += dist_[s] * row[s];
    current_ = draw(dist_, *rng_);
    anchored_ = false;
  } else {
    MwMove move = mw_step(dist_, *instance_, current_, edge, eta_, *rng_);
    expected_ += move.expected_hit + move.expected_move_cost;
    dist_ = std::move(move.next);
    current_ = move.sample;
  }
  worst_error_ = std::max(worst_error_, dist_.normalization_error());
  return current_;
}

std::unique_ptr<OnlineSolver> make_solver(const std::string& name, MwOptions options) {
  if (name == "wfa") return std::make_unique<WfaSolver>();
  if (name == "mw") return std::make_unique<MwSolver>(options);
  throw std::invalid_argument("unknown online solver '" + name + "' (expected wfa or mw)");
}

OnlineRun run_online(OnlineSolver& solver, const MtsInstance& instance, std::span<const int> requests,
                     std::uint64_t seed) {
  OnlineRun run(instance.space[instance.initial]);
  solver.reset(instance, seed, requests.size());
  std::size_t current = instance.initial;
  for (int e : requests) {
    if (e < 0 || e >= instance.space.ring_size()) throw std::invalid_argument("request edge outside ring");
    const std::size_t next = solver.serve(e);
    if (next >= instance.space.size()) throw std::logic_error("solver " + solver.name() + " left the state space");
    run.trajectory.push(e, instance.space[current], instance.space[next]);
    run.visited.push_back(next);
    current = next;
  }
  run.expected_cost = solver.expected_cost();
  return run;
}

}  // namespace ringbisect
