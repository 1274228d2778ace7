#include "ringbisect/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ringbisect/experiment.hpp"
#include "ringbisect/oracles.hpp"
#include "ringbisect/state_space.hpp"
#include "ringbisect/transport.hpp"

namespace ringbisect {

CutEdgeSet random_cut_set(int n, Rng& rng) {
  check_ring_size(n);
  std::uint64_t mask = rng.next();
  if (n < 64) mask &= (std::uint64_t{1} << n) - 1;
  if (std::popcount(mask) % 2 != 0) mask ^= 1U;
  return CutEdgeSet::from_mask(n, mask);
}

CutEdgeSet random_bisection(int n, Rng& rng) {
  check_ring_size(n);
  Coloring c(static_cast<std::size_t>(n), Color::Blue);
  std::fill(c.begin(), c.begin() + n / 2, Color::Red);
  for (std::size_t i = c.size() - 1; i > 0; --i) std::swap(c[i], c[static_cast<std::size_t>(rng.below(i + 1))]);
  return cut_edges_of(c);
}

std::optional<std::string> rebalance_violation(const CutEdgeSet& input, int k, const RebalanceResult& result) {
  const int n = input.ring_size();
  const CutEdgeSet& out = result.cuts;
  std::ostringstream why;
  why << "n=" << n << " k=" << k << " input=" << input.str() << " output=" << out.str() << ": ";
  if (!out.is_subset_of(input)) return why.str() + "output is not a subset of the input";
  if (out.size() != std::min(2 * k, input.size())) return why.str() + "wrong number of cut edges";
  if (2 * k * less_count(out) < n * (k - 1)) {
    return why.str() + "less=" + std::to_string(less_count(out)) + " below n/2 - n/(2k)";
  }
  for (const RebalanceStep& step : result.trace.steps) {
    const int j = (step.cuts_before - 2) / 2;
    if (j >= 1 && !meets_sparsification_bound(n, j, step.less_after)) {
      return why.str() + "trace step removing {" + std::to_string(step.removed_first) + "," +
             std::to_string(step.removed_second) + "} leaves less=" + std::to_string(step.less_after) +
             " with " + std::to_string(2 * j) + " edges";
    }
  }
  return std::nullopt;
}

std::string CorpusRun::label() const {
  return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " gen=" + generator.str() +
         " seed=" + std::to_string(seed);
}

void run_corpus(const CorpusSpec& spec, const std::function<void(const CorpusRun&)>& visit) {
  std::map<std::pair<int, int>, MtsInstance> instances;
  for (int n : spec.ring_sizes) {
    const StateSpace full = enumerate_states(n, std::nullopt, Ratio(1));
    const DistanceMatrix dist(full);
    for (const GeneratorSpec& gen : spec.generators) {
      const bool per_k = gen.kind == GeneratorSpec::Kind::CutChaser;
      for (int seed = 1; seed <= spec.seeds; ++seed) {
        const auto useed = static_cast<std::uint64_t>(seed);
        const CutEdgeSet initial = initial_state(InitialLayout::Random, n, layout_seed(useed));
        std::vector<int> requests;
        std::optional<OptResult> opt;
        if (!per_k) {
          requests = generate(gen, n, spec.length, request_seed(useed));
          opt = exact_opt(full, dist, initial, requests);
        }
        for (int k : spec.ks) {
          if (per_k) {
            requests = generate(gen, n, spec.length, request_seed(useed), ChaserSetup{k, shadow_alpha(k), initial});
            opt = exact_opt(full, dist, initial, requests);
          }
          const OffRun off = run_off(k, requests, opt->trajectory);
          CorpusRun run{n, k, gen, useed, initial, &requests, &*opt, &off};
          if (!spec.online) {
            visit(run);
            continue;
          }
          auto it = instances.find({n, k});
          if (it == instances.end()) {
            it = instances.emplace(std::pair{n, k}, make_restricted_instance(k, shadow_alpha(k), initial)).first;
          }
          MtsInstance instance = it->second;
          const auto start = instance.space.index_of(global_rebalance(initial, k).cuts);
          if (!start) throw std::logic_error("rebalanced start outside the restricted space");
          instance.initial = *start;
          const OptResult ropt = exact_opt(instance.space, instance.distance, instance.space[*start], requests);
          WfaSolver wfa;
          MwSolver mw;
          const OnlineRun wfa_run = run_online(wfa, instance, requests, solver_seed(useed));
          const OnlineRun mw_run = run_online(mw, instance, requests, solver_seed(useed));
          run.instance = &instance;
          run.ropt = &ropt;
          run.wfa = &wfa_run;
          run.mw = &mw_run;
          run.mw_normalization_error = mw.worst_normalization_error();
          visit(run);
        }
      }
    }
  }
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"phi",  "metric",     "rebalance",  "oracle", "transport",
                                              "step", "structural", "offline", "online"};
  return names;
}

namespace {

std::vector<int> even_sizes(const VerifyOptions& o, int lo, int hi) {
  std::vector<int> out;
  for (int n = std::max({o.min_n, lo, kMinRingSize}); n <= std::min(o.max_n, hi); ++n) {
    if (n % 2 == 0) out.push_back(n);
  }
  return out;
}

// Records the first failure and counts checks.
class Tally {
 public:
  explicit Tally(SuiteReport& report) : report_(report) {}

  template <typename Describe>
  void expect(bool ok, Describe&& describe) {
    ++report_.checked;
    if (ok || !report_.passed) return;
    report_.passed = false;
    report_.counterexample = describe();
  }
  bool failed() const { return !report_.passed; }

 private:
  SuiteReport& report_;
};

void suite_phi(const VerifyOptions& o, Tally& tally) {
  auto check_pair = [&](const CutEdgeSet& a, const CutEdgeSet& b) {
    const PhiSet p = phi(a, b);
    const int expected = oracle::recolor_distance(a, b);
    const CutEdgeSet moved = recolor_nodes(a, p.nodes);
    tally.expect(p.size() == expected && state_distance(a, b) == expected && moved == b, [&] {
      return "a=" + a.str() + " b=" + b.str() + " |phi|=" + std::to_string(p.size()) +
             " distance=" + std::to_string(state_distance(a, b)) + " brute force=" + std::to_string(expected) +
             " recolored=" + moved.str();
    });
  };
  Rng rng(Rng::derive(o.seed, 10));
  for (int n : even_sizes(o, 4, 64)) {
    if (n <= 8) {
      const auto states = oracle::all_states(n);
      for (const auto& a : states) {
        for (const auto& b : states) check_pair(a, b);
      }
    } else {
      for (int i = 0; i < o.cases; ++i) check_pair(random_cut_set(n, rng), random_cut_set(n, rng));
    }
  }
}

void suite_metric(const VerifyOptions& o, Tally& tally) {
  auto check_triple = [&](const CutEdgeSet& a, const CutEdgeSet& b, const CutEdgeSet& c) {
    const int ab = state_distance(a, b), ba = state_distance(b, a);
    const int bc = state_distance(b, c), ac = state_distance(a, c);
    tally.expect(ab == ba && state_distance(a, a) == 0 && (ab == 0) == (a == b) && ac <= ab + bc, [&] {
      return "a=" + a.str() + " b=" + b.str() + " c=" + c.str() + " d(a,b)=" + std::to_string(ab) +
             " d(b,a)=" + std::to_string(ba) + " d(b,c)=" + std::to_string(bc) + " d(a,c)=" + std::to_string(ac);
    });
  };
  Rng rng(Rng::derive(o.seed, 11));
  for (int n : even_sizes(o, 4, 64)) {
    if (n <= 8) {
      const auto states = oracle::all_states(n);
      for (const auto& a : states) {
        for (const auto& b : states) {
          for (const auto& c : states) check_triple(a, b, c);
        }
      }
    } else {
      for (int i = 0; i < o.cases; ++i) {
        check_triple(random_cut_set(n, rng), random_cut_set(n, rng), random_cut_set(n, rng));
      }
    }
  }
}

void suite_rebalance(const VerifyOptions& o, Tally& tally) {
  Rng rng(Rng::derive(o.seed, 12));
  for (int n : even_sizes(o, 4, 64)) {
    for (int k = 1; k <= 6; ++k) {
      for (int i = 0; i < o.cases && !tally.failed(); ++i) {
        const CutEdgeSet input = random_bisection(n, rng);
        std::optional<std::string> problem;
        try {
          problem = rebalance_violation(input, k, o.rebalancer(input, k));
        } catch (const std::exception& e) {
          problem = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " input=" + input.str() +
                    ": rebalancer threw: " + e.what();
        }
        tally.expect(!problem, [&] { return *problem; });
      }
    }
  }
}

std::string sequence_str(std::span<const int> requests) {
  std::string out = "(";
  for (std::size_t i = 0; i < requests.size(); ++i) out += (i ? "," : "") + std::to_string(requests[i]);
  return out + ")";
}

void suite_oracle(const VerifyOptions& o, Tally& tally) {
  Rng rng(Rng::derive(o.seed, 13));
  for (int n : even_sizes(o, 4, 6)) {
    const StateSpace space = enumerate_states(n, std::nullopt, Ratio(1));
    auto brute_states = oracle::balanced_states(n, std::nullopt, Ratio(1));
    std::sort(brute_states.begin(), brute_states.end());
    tally.expect(brute_states == space.states(), [&] { return "1-balanced state lists differ for n=" + std::to_string(n); });
    const DistanceMatrix dist(space);
    for (int i = 0; i < o.cases; ++i) {
      const CutEdgeSet& initial = space[static_cast<std::size_t>(rng.below(space.size()))];
      std::vector<int> sigma(rng.below(5));
      for (int& e : sigma) e = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      const auto dp = exact_opt(space, dist, initial, sigma).cost;
      const auto brute = oracle::exhaustive_opt(space.states(), initial, sigma);
      tally.expect(dp == brute, [&] {
        return "n=" + std::to_string(n) + " initial=" + initial.str() + " sigma=" + sequence_str(sigma) +
               " dp=" + std::to_string(dp) + " exhaustive=" + std::to_string(brute);
      });
    }
  }
  if (o.min_n <= 4 && o.max_n >= 4) {
    const std::vector<int> sigma(5, 1);
    const CutEdgeSet initial(4, {1, 3});
    const auto cost = exact_opt(enumerate_states(4, std::nullopt, Ratio(1)), initial, sigma).cost;
    tally.expect(cost == 3, [&] { return "n=4 initial={1,3} sigma=e1 x5: dp=" + std::to_string(cost) + ", expected 3"; });
  }
  // Restricted spaces against depth-first search.
  for (int n : even_sizes(o, 6, 8)) {
    for (int k = 1; k <= 2; ++k) {
      const Ratio alpha = shadow_alpha(k);
      auto states = oracle::balanced_states(n, 2 * k, alpha);
      std::sort(states.begin(), states.end());
      tally.expect(states == enumerate_states(n, 2 * k, alpha).states(),
                   [&] { return "restricted state lists differ for n=" + std::to_string(n) + " k=" + std::to_string(k); });
      for (int i = 0; i < std::max(1, o.cases / 50); ++i) {
        const CutEdgeSet initial = random_bisection(n, rng);
        std::vector<int> sigma(1 + rng.below(5));
        for (int& e : sigma) e = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const auto r = restricted_opt(k, alpha, initial, sigma);
        const auto brute = oracle::branch_and_bound_opt(states, r.start, sigma);
        tally.expect(r.opt.cost == brute, [&] {
          return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " start=" + r.start.str() +
                 " sigma=" + sequence_str(sigma) + " dp=" + std::to_string(r.opt.cost) +
                 " search=" + std::to_string(brute);
        });
      }
    }
  }
}

void suite_transport(const VerifyOptions& o, Tally& tally) {
  Rng rng(Rng::derive(o.seed, 14));
  for (int n : even_sizes(o, 4, 8)) {
    const StateSpace space = enumerate_states(n, 4, shadow_alpha(2));
    const DistanceMatrix dist(space);
    for (int i = 0; i < std::max(1, o.cases / 10); ++i) {
      std::vector<double> p(space.size());
      for (double& x : p) x = rng.unit() + 1e-3;
      double total = 0.0;
      for (double x : p) total += x;
      for (double& x : p) x /= total;
      const StateDistribution before(p);
      const int e = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      const StateDistribution after = multiplicative_update(before, hit_vector(space, e), 0.05 + rng.unit());
      const TransportPlan plan = greedy_coupling(before.masses(), after.masses(), dist);
      double worst = 0.0;
      for (std::size_t s = 0; s < space.size(); ++s) {
        const double change = before[s] - after[s];
        worst = std::max(worst, std::abs(plan.outflow(s) - plan.inflow(s) - change));
      }
      const double exact = optimal_transport_cost(before.masses(), after.masses(), dist);
      tally.expect(after.is_valid() && worst <= 1e-12 && plan.cost >= exact - 1e-9, [&] {
        std::ostringstream msg;
        msg << "n=" << n << " e=" << e << " normalization=" << after.normalization_error()
            << " mass imbalance=" << worst << " greedy=" << plan.cost << " exact=" << exact;
        return msg.str();
      });
    }
  }
}

CorpusSpec corpus_for(const VerifyOptions& o, bool online) {
  CorpusSpec spec;
  spec.ring_sizes = even_sizes(o, 4, 12);
  spec.seeds = o.corpus_seeds;
  spec.length = o.corpus_length;
  spec.online = online;
  return spec;
}

void suite_step(const VerifyOptions& o, Tally& tally) {
  run_corpus(corpus_for(o, false), [&](const CorpusRun& run) {
    for (const StepRecord& s : run.off->steps) {
      tally.expect(s.meets_step_bound(), [&] {
        return run.label() + ": step " + std::to_string(s.step_index) + " (" + to_string(s.sub_case) +
               ", node " + std::to_string(s.event.node) + ") recolor=" + std::to_string(s.off_recolor_cost) +
               " delta phi=" + std::to_string(s.delta_phi);
      });
    }
  });
}

void suite_structural(const VerifyOptions& o, Tally& tally) {
  run_corpus(corpus_for(o, false), [&](const CorpusRun& run) {
    const int n = run.n;
    const int k = run.k;
    for (const std::string& v : run.off->violations) {
      const bool structural = v.starts_with("cut invariants") || v.starts_with("less(off)") ||
                              v.starts_with("phase bound") || v.starts_with("off pays");
      tally.expect(!structural, [&] { return run.label() + ": " + v; });
    }
    const auto& off_steps = run.off->trajectory.steps;
    const auto& opt_steps = run.opt->trajectory.steps;
    for (std::size_t t = 0; t < off_steps.size(); ++t) {
      const CutEdgeSet& off = off_steps[t].after;
      const CutEdgeSet& opt = opt_steps[t].after;
      const int potential = state_distance(opt, off);
      const bool cuts_ok = off.is_subset_of(opt) && off.size() == std::min(2 * k, opt.size());
      tally.expect(cuts_ok && 2 * (less_count(off) + potential) >= n, [&] {
        return run.label() + ": request " + std::to_string(t) + " off=" + off.str() + " opt=" + opt.str() +
               " less=" + std::to_string(less_count(off)) + " phi=" + std::to_string(potential);
      });
    }
    for (const PhaseRecord& p : run.off->phases) {
      if (!p.closed_by_rebalance) continue;
      tally.expect(p.meets_phase_bound(n, k), [&] {
        return run.label() + ": phase " + std::to_string(p.index) + " MC=" + std::to_string(p.off_recolor) +
               " delta phi=" + std::to_string(p.delta_phi());
      });
    }
    tally.expect(run.off->trajectory.hit_cost <= run.opt->trajectory.hit_cost, [&] {
      return run.label() + ": HC(off)=" + std::to_string(run.off->trajectory.hit_cost) +
             " HC(opt)=" + std::to_string(run.opt->trajectory.hit_cost);
    });
  });
}

void suite_offline(const VerifyOptions& o, Tally& tally) {
  run_corpus(corpus_for(o, false), [&](const CorpusRun& run) {
    const auto off = run.off->total_with_initial();
    tally.expect(meets_offline_bound(off, run.opt->cost, run.n, run.k), [&] {
      return run.label() + ": OFF=" + std::to_string(off) + " OPT=" + std::to_string(run.opt->cost);
    });
  });
}

void suite_online(const VerifyOptions& o, Tally& tally) {
  bool reproduced = false;
  run_corpus(corpus_for(o, true), [&](const CorpusRun& run) {
    const int k = run.k;
    const Ratio alpha = shadow_alpha(k);
    for (const OnlineRun* r : {run.wfa, run.mw}) {
      const std::string name = r == run.wfa ? "wfa" : "mw";
      for (std::size_t t = 0; t < r->trajectory.steps.size(); ++t) {
        const CutEdgeSet& s = r->trajectory.steps[t].after;
        tally.expect(s.size() <= 2 * k && is_alpha_balanced(s, alpha),
                     [&] { return run.label() + ": " + name + " left the class at request " + std::to_string(t) + " in " + s.str(); });
      }
      tally.expect(r->trajectory.total() >= run.ropt->cost, [&] {
        return run.label() + ": " + name + "=" + std::to_string(r->trajectory.total()) +
               " below the restricted optimum " + std::to_string(run.ropt->cost);
      });
    }
    tally.expect(run.mw_normalization_error <= 1e-9, [&] {
      return run.label() + ": mw normalization error " + std::to_string(run.mw_normalization_error);
    });
    if (!reproduced) {
      reproduced = true;
      MwSolver again;
      const OnlineRun repeat = run_online(again, *run.instance, *run.requests, solver_seed(run.seed));
      tally.expect(repeat.visited == run.mw->visited, [&] { return run.label() + ": mw run not reproducible"; });
    }
  });
}

}  // namespace

SuiteReport run_suite(const std::string& name, const VerifyOptions& options) {
  SuiteReport report;
  report.name = name;
  Tally tally(report);
  const auto begin = std::chrono::steady_clock::now();
  try {
    if (name == "phi") {
      suite_phi(options, tally);
    } else if (name == "metric") {
      suite_metric(options, tally);
    } else if (name == "rebalance") {
      suite_rebalance(options, tally);
    } else if (name == "oracle") {
      suite_oracle(options, tally);
    } else if (name == "transport") {
      suite_transport(options, tally);
    } else if (name == "step") {
      suite_step(options, tally);
    } else if (name == "structural") {
      suite_structural(options, tally);
    } else if (name == "offline") {
      suite_offline(options, tally);
    } else if (name == "online") {
      suite_online(options, tally);
    } else {
      throw std::invalid_argument("unknown suite '" + name + "'");
    }
  } catch (const std::invalid_argument& e) {
    if (std::string(e.what()).starts_with("unknown suite")) throw;
    tally.expect(false, [&] { return std::string("exception: ") + e.what(); });
  } catch (const std::exception& e) {
    tally.expect(false, [&] { return std::string("exception: ") + e.what(); });
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
  return report;
}

std::vector<SuiteReport> run_verify(const VerifyOptions& options) {
  const auto& names = options.suites.empty() ? suite_names() : options.suites;
  for (const std::string& name : names) {
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
      throw std::invalid_argument("unknown suite '" + name + "'");
    }
  }
  std::vector<SuiteReport> out;
  for (const std::string& name : names) out.push_back(run_suite(name, options));
  return out;
}

void print_report(std::ostream& out, const std::vector<SuiteReport>& reports) {
  for (const SuiteReport& r : reports) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.checked << " checks)\n";
    if (!r.passed) out << "  counterexample: " << r.counterexample << '\n';
  }
}

}  // namespace ringbisect
