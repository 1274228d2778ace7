// Acceptance run: one pass/fail line per criterion. Optional argv[1] is the
// path of the ringbisect executable for the command-line determinism check.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "ringbisect/experiment.hpp"
#include "ringbisect/oracles.hpp"
#include "ringbisect/verify.hpp"

using namespace ringbisect;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
  std::string note;

  void fail(std::string why) {
    if (passed) detail = std::move(why);
    passed = false;
  }
};

using Clock = std::chrono::steady_clock;

bool report(int id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto begin = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - begin).count();
  if (limit_seconds > 0 && seconds > limit_seconds) {
    o.fail("took " + std::to_string(seconds) + " s, limit " + std::to_string(limit_seconds) + " s");
  }
  std::printf("[%s] %d %s (%.1f s)", o.passed ? "PASS" : "FAIL", id, title.c_str(), seconds);
  if (!o.note.empty()) std::printf(" %s", o.note.c_str());
  std::printf("\n");
  if (!o.passed) std::printf("       %s\n", o.detail.c_str());
  std::fflush(stdout);
  return o.passed;
}

Outcome rebalance_postconditions() {
  Outcome o;
  Rng rng(101);
  std::int64_t cases = 0;
  for (int n = 4; n <= 32; n += 2) {
    for (int k = 1; k <= 6; ++k) {
      for (int i = 0; i < 1000; ++i) {
        const CutEdgeSet input = random_bisection(n, rng);
        const auto problem = rebalance_violation(input, k, global_rebalance(input, k));
        if (problem) o.fail(*problem);
        ++cases;
      }
    }
  }
  o.note = std::to_string(cases) + " cases";
  return o;
}

Outcome potential_matches_brute_force() {
  Outcome o;
  std::int64_t pairs = 0;
  auto check = [&](const CutEdgeSet& a, const CutEdgeSet& b) {
    const int expected = oracle::recolor_distance(a, b);
    const PhiSet p = phi(a, b);
    if (p.size() != expected || state_distance(a, b) != expected || recolor_nodes(a, p.nodes) != b) {
      o.fail("a=" + a.str() + " b=" + b.str() + " |phi|=" + std::to_string(p.size()) +
             " brute force=" + std::to_string(expected));
    }
    ++pairs;
  };
  for (int n = 4; n <= 8; n += 2) {
    const auto states = oracle::all_states(n);
    for (const auto& a : states) {
      for (const auto& b : states) check(a, b);
    }
  }
  Rng rng(102);
  for (int n : {10, 12}) {
    for (int i = 0; i < 10000; ++i) check(random_cut_set(n, rng), random_cut_set(n, rng));
  }
  o.note = std::to_string(pairs) + " pairs";
  return o;
}

Outcome metric_axioms() {
  Outcome o;
  for (int n : {4, 6, 8}) {
    const auto states = oracle::all_states(n);
    const std::size_t m = states.size();
    std::vector<int> d(m * m);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) d[a * m + b] = state_distance(states[a], states[b]);
    }
    for (std::size_t a = 0; a < m; ++a) {
      if (d[a * m + a] != 0) o.fail("nonzero diagonal at " + states[a].str());
      for (std::size_t b = 0; b < m; ++b) {
        if (d[a * m + b] != d[b * m + a]) o.fail("asymmetric " + states[a].str() + " " + states[b].str());
        if (a != b && d[a * m + b] == 0) o.fail("distinct states at distance 0: " + states[a].str() + " " + states[b].str());
        for (std::size_t c = 0; c < m; ++c) {
          if (d[a * m + c] > d[a * m + b] + d[b * m + c]) {
            o.fail("triangle " + states[a].str() + " " + states[b].str() + " " + states[c].str());
          }
        }
      }
    }
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  Rng rng(104);
  for (int n : {4, 6}) {
    const StateSpace space = enumerate_states(n, std::nullopt, Ratio(1));
    for (int i = 0; i < 200; ++i) {
      const CutEdgeSet& initial = space[static_cast<std::size_t>(rng.below(space.size()))];
      std::vector<int> sigma(static_cast<std::size_t>(rng.below(5)));
      for (int& e : sigma) e = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      const auto dp = exact_opt(space, initial, sigma).cost;
      const auto brute = oracle::exhaustive_opt(space.states(), initial, sigma);
      if (dp != brute) {
        o.fail("n=" + std::to_string(n) + " initial=" + initial.str() + " dp=" + std::to_string(dp) +
               " exhaustive=" + std::to_string(brute));
      }
    }
  }
  const std::vector<int> repeated(5, 1);
  const auto worked = exact_opt(enumerate_states(4, std::nullopt, Ratio(1)), CutEdgeSet(4, {1, 3}), repeated).cost;
  if (worked != 3) o.fail("n=4, e1 five times from {1,3}: expected 3, got " + std::to_string(worked));
  return o;
}

struct OfflineTally {
  Outcome step, structural, bound;
  std::int64_t runs = 0, steps = 0;
  double seconds = 0;
};

OfflineTally offline_corpus() {
  OfflineTally t;
  const auto begin = Clock::now();
  run_corpus(CorpusSpec{}, [&](const CorpusRun& run) {
    ++t.runs;
    const int n = run.n;
    const int k = run.k;
    for (const StepRecord& s : run.off->steps) {
      ++t.steps;
      if (!s.meets_step_bound()) {
        t.step.fail(run.label() + ": step " + std::to_string(s.step_index) + " recolor=" +
                    std::to_string(s.off_recolor_cost) + " delta phi=" + std::to_string(s.delta_phi));
      }
    }
    const auto& off_steps = run.off->trajectory.steps;
    const auto& opt_steps = run.opt->trajectory.steps;
    if (off_steps.size() != opt_steps.size()) t.structural.fail(run.label() + ": trajectory lengths differ");
    for (std::size_t i = 0; i < std::min(off_steps.size(), opt_steps.size()); ++i) {
      const CutEdgeSet& off = off_steps[i].after;
      const CutEdgeSet& opt = opt_steps[i].after;
      const int potential = oracle::recolor_distance(opt, off);
      if (!off.is_subset_of(opt) || off.size() != std::min(2 * k, opt.size())) {
        t.structural.fail(run.label() + ": cut invariants at request " + std::to_string(i));
      }
      if (2 * (oracle::smaller_class(off) + potential) < n) {
        t.structural.fail(run.label() + ": less + phi < n/2 at request " + std::to_string(i));
      }
    }
    for (const PhaseRecord& p : run.off->phases) {
      if (p.closed_by_rebalance && 2 * k * (p.off_recolor + p.delta_phi()) < n) {
        t.structural.fail(run.label() + ": phase " + std::to_string(p.index) + " MC + delta phi < n/(2k)");
      }
    }
    if (run.off->trajectory.hit_cost > run.opt->trajectory.hit_cost) {
      t.structural.fail(run.label() + ": HC(off) > HC(opt)");
    }
    for (const std::string& v : run.off->violations) t.structural.fail(run.label() + ": " + v);

    // 2 OFF <= 2 (3k+1) OPT + 3n
    const std::int64_t off_total = run.off->total_with_initial();
    if (2 * off_total > 2 * (3 * k + 1) * run.opt->cost + 3 * n) {
      t.bound.fail(run.label() + ": OFF=" + std::to_string(off_total) + " OPT=" + std::to_string(run.opt->cost));
    }
  });
  t.seconds = std::chrono::duration<double>(Clock::now() - begin).count();
  return t;
}

Outcome online_sanity() {
  Outcome o;
  CorpusSpec spec;
  spec.online = true;
  std::int64_t runs = 0;
  double wfa_ratio_sum = 0, mw_ratio_sum = 0, wfa_ratio_max = 0, mw_ratio_max = 0;
  std::int64_t ratio_runs = 0;
  run_corpus(spec, [&](const CorpusRun& run) {
    ++runs;
    const Ratio alpha = shadow_alpha(run.k);
    for (const OnlineRun* r : {run.wfa, run.mw}) {
      for (const TrajectoryStep& s : r->trajectory.steps) {
        if (s.after.size() > 2 * run.k || !is_alpha_balanced(s.after, alpha)) {
          o.fail(run.label() + ": left the restricted space at " + s.after.str());
        }
      }
      if (r->trajectory.total() < run.ropt->cost) {
        o.fail(run.label() + ": online " + std::to_string(r->trajectory.total()) + " below restricted optimum " +
               std::to_string(run.ropt->cost));
      }
    }
    if (run.mw_normalization_error > 1e-9) o.fail(run.label() + ": normalization error");
    if (run.mw->expected_cost && *run.mw->expected_cost < static_cast<double>(run.ropt->cost) - 1e-6) {
      o.fail(run.label() + ": expected weights cost below restricted optimum");
    }

    // Reproducibility on a subset: rerun both solvers with the same seed.
    if (run.seed <= 2) {
      WfaSolver wfa;
      MwSolver mw;
      const OnlineRun w2 = run_online(wfa, *run.instance, *run.requests, solver_seed(run.seed));
      const OnlineRun m2 = run_online(mw, *run.instance, *run.requests, solver_seed(run.seed));
      if (w2.visited != run.wfa->visited || m2.visited != run.mw->visited ||
          m2.expected_cost != run.mw->expected_cost) {
        o.fail(run.label() + ": rerun differs");
      }
    }

    const std::int64_t off = run.off->total_with_initial();
    if (off > 0) {
      const double w = static_cast<double>(run.wfa->trajectory.total()) / static_cast<double>(off);
      const double m = static_cast<double>(run.mw->trajectory.total()) / static_cast<double>(off);
      wfa_ratio_sum += w;
      mw_ratio_sum += m;
      wfa_ratio_max = std::max(wfa_ratio_max, w);
      mw_ratio_max = std::max(mw_ratio_max, m);
      ++ratio_runs;
    }
  });
  char buf[200];
  std::snprintf(buf, sizeof buf, "%lld runs; wfa/off mean %.3f max %.3f; mw/off mean %.3f max %.3f",
                static_cast<long long>(runs), ratio_runs ? wfa_ratio_sum / static_cast<double>(ratio_runs) : 0.0,
                wfa_ratio_max, ratio_runs ? mw_ratio_sum / static_cast<double>(ratio_runs) : 0.0, mw_ratio_max);
  o.note = buf;
  return o;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const char* cli) {
  Outcome o;
  RunConfig c;
  c.n = 10;
  c.k = 2;
  c.seed = 7;
  c.length = 120;
  for (const char* gen : {"uniform", "cut-chaser"}) {
    c.generator = GeneratorSpec::parse(gen);
    std::ostringstream a, b;
    write_trace(a, run_experiment(c).rows, TraceFormat::Csv);
    write_trace(b, run_experiment(c).rows, TraceFormat::Csv);
    if (a.str() != b.str()) o.fail(std::string("in-process traces differ for ") + gen);
  }
  if (!cli) {
    o.note = "(command line not checked: no executable given)";
    return o;
  }
  const auto dir = std::filesystem::temp_directory_path() / ("ringbisect_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::string outputs[2];
  for (int i = 0; i < 2; ++i) {
    const auto trace = dir / ("trace" + std::to_string(i) + ".csv");
    const std::string cmd = std::string("\"") + cli + "\" run --n 10 --k 2 --seed 7 --gen uniform --len 120 --out \"" +
                            trace.string() + "\" > \"" + (dir / "summary.json").string() + "\"";
    const int status = std::system(cmd.c_str());
    if (status != 0) o.fail("command failed with status " + std::to_string(status) + ": " + cmd);
    outputs[i] = slurp(trace);
  }
  if (outputs[0].empty()) o.fail("empty trace from the command line");
  if (outputs[0] != outputs[1]) o.fail("command-line traces differ");
  std::filesystem::remove_all(dir);
  o.note = "(command line: " + std::to_string(outputs[0].size()) + " bytes twice)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const char* cli = argc > 1 ? argv[1] : nullptr;
  bool ok = true;
  ok &= report(1, "rebalancing postconditions, n 4..32, k 1..6", 30, rebalance_postconditions);
  ok &= report(2, "potential equals brute-force recoloring distance", 60, potential_matches_brute_force);
  ok &= report(3, "state distance is a metric", 60, metric_axioms);
  ok &= report(4, "dynamic program equals exhaustive search", 60, oracle_equivalence);

  const OfflineTally offline = offline_corpus();
  auto corpus_note = [&](Outcome o) {
    o.note = "(" + std::to_string(offline.runs) + " runs, " + std::to_string(offline.steps) + " steps, corpus " +
             std::to_string(static_cast<int>(offline.seconds)) + " s)";
    if (offline.seconds > 300) o.fail("corpus took longer than 5 min");
    return o;
  };
  ok &= report(5, "shadow per-step bound", 0, [&] { return corpus_note(offline.step); });
  ok &= report(6, "shadow structural invariants", 0, [&] { return corpus_note(offline.structural); });
  ok &= report(7, "offline bound (3k+1) OPT + 3n/2", 0, [&] { return corpus_note(offline.bound); });

  ok &= report(8, "online solvers stay in class, dominate the restricted optimum, reproduce", 0, online_sanity);
  ok &= report(9, "end-to-end trace determinism", 0, [&] { return determinism(cli); });
  return ok ? 0 : 1;
}
