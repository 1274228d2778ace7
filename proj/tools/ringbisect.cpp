#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ringbisect/experiment.hpp"
#include "ringbisect/mts_online.hpp"
#include "ringbisect/off_shadow.hpp"
#include "ringbisect/opt_oracle.hpp"
#include "ringbisect/state_space.hpp"
#include "ringbisect/verify.hpp"

namespace rb = ringbisect;
using nlohmann::ordered_json;

namespace {

// Raw flag values shared by opt, run and bench.
struct CommonFlags {
  int n = 8;
  int k = 2;
  std::string alpha;
  std::uint64_t seed = 1;
  std::string gen = "uniform";
  std::size_t len = 50;
  std::string init = "random";
  std::vector<std::string> algos;
  std::optional<double> eta;

  void attach(CLI::App& app, bool with_algos) {
    app.add_option("--n", n, "Ring size (even, 4..64)")->capture_default_str();
    app.add_option("--k", k, "Cut budget parameter: at most 2k cut edges")->capture_default_str();
    app.add_option("--alpha", alpha, "Balance of the restricted space, e.g. 11/6 (default 3/2 + 1/k)");
    app.add_option("--seed", seed, "Seed for requests, initial layout and solvers")->capture_default_str();
    app.add_option("--gen", gen, "uniform | sweep | blocks[:L] | cut-chaser")->capture_default_str();
    app.add_option("--len", len, "Number of requests")->capture_default_str();
    app.add_option("--init", init, "Initial bisection: block | alternating | random")->capture_default_str();
    app.add_option("--eta", eta, "Learning rate of the multiplicative-weights solver");
    if (with_algos) {
      app.add_option("--algo", algos, "Algorithms: opt, off, ropt, wfa, mw (repeatable or comma separated)")
          ->delimiter(',');
    }
  }

  rb::RunConfig config() const {
    rb::RunConfig c;
    c.n = n;
    c.k = k;
    if (!alpha.empty()) c.alpha = rb::Ratio::parse(alpha);
    c.seed = seed;
    c.generator = rb::GeneratorSpec::parse(gen);
    c.length = len;
    c.layout = rb::parse_initial_layout(init);
    c.eta = eta;
    if (!algos.empty()) c.algorithms = algos;
    c.validate();
    return c;
  }
};

std::vector<int> requests_for(const rb::RunConfig& c, const rb::CutEdgeSet& initial) {
  std::optional<rb::ChaserSetup> chaser;
  if (c.generator.kind == rb::GeneratorSpec::Kind::CutChaser) chaser = rb::ChaserSetup{c.k, c.effective_alpha(), initial};
  return rb::generate(c.generator, c.n, c.length, rb::request_seed(c.seed), chaser);
}

int cmd_states(int n, std::optional<int> k, const std::string& alpha_text, bool list) {
  const rb::Ratio alpha = !alpha_text.empty() ? rb::Ratio::parse(alpha_text) : k ? rb::shadow_alpha(*k) : rb::Ratio(1);
  std::optional<int> max_cut;
  if (k) max_cut = 2 * *k;
  const rb::StateSpace space = rb::enumerate_states(n, max_cut, alpha);
  ordered_json out;
  out["n"] = n;
  out["max_cut"] = max_cut ? ordered_json(*max_cut) : ordered_json(nullptr);
  out["alpha"] = alpha.str();
  out["count"] = space.size();
  if (list) {
    ordered_json states = ordered_json::array();
    for (const auto& s : space.states()) states.push_back(s.str());
    out["states"] = states;
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_opt(const CommonFlags& flags, bool restricted) {
  const rb::RunConfig c = flags.config();
  const rb::CutEdgeSet initial = rb::initial_state(c.layout, c.n, rb::layout_seed(c.seed));
  const std::vector<int> sigma = requests_for(c, initial);
  ordered_json out;
  out["n"] = c.n;
  out["initial"] = initial.str();
  out["len"] = sigma.size();
  if (restricted) {
    const auto r = rb::restricted_opt(c.k, c.effective_alpha(), initial, sigma);
    out["k"] = c.k;
    out["alpha"] = c.effective_alpha().str();
    out["start"] = r.start.str();
    out["initial_rebalance"] = r.initial_rebalance_cost;
    out["cost"] = r.opt.cost;
    out["hit"] = r.opt.trajectory.hit_cost;
    out["recolor"] = r.opt.trajectory.recolor_cost;
    out["final"] = r.opt.trajectory.final_state().str();
  } else {
    const auto r = rb::exact_opt(rb::enumerate_states(c.n, std::nullopt, rb::Ratio(1)), initial, sigma);
    out["cost"] = r.cost;
    out["hit"] = r.trajectory.hit_cost;
    out["recolor"] = r.trajectory.recolor_cost;
    out["final"] = r.trajectory.final_state().str();
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_run(const CommonFlags& flags, const std::string& out_path, const std::string& format_text,
            const std::string& summary_path) {
  const rb::RunConfig c = flags.config();
  const rb::TraceFormat format = rb::parse_trace_format(format_text);
  const rb::ExperimentResult result = rb::run_experiment(c);
  if (!out_path.empty()) {
    std::ofstream trace(out_path, std::ios::binary);
    if (!trace) throw std::runtime_error("cannot write " + out_path);
    rb::write_trace(trace, result.rows, format);
  }
  const std::string summary = rb::summary_json(result).dump(2) + "\n";
  if (summary_path.empty()) {
    std::cout << summary;
  } else {
    std::ofstream file(summary_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + summary_path);
    file << summary;
  }
  return result.ok() ? 0 : 1;
}

template <typename F>
double seconds(F&& f) {
  const auto begin = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
}

int cmd_bench(const CommonFlags& flags) {
  const rb::RunConfig c = flags.config();
  const rb::CutEdgeSet initial = rb::initial_state(c.layout, c.n, rb::layout_seed(c.seed));
  const std::vector<int> sigma = requests_for(c, initial);
  ordered_json out;
  out["n"] = c.n;
  out["k"] = c.k;
  out["alpha"] = c.effective_alpha().str();
  out["len"] = sigma.size();

  std::optional<rb::StateSpace> full;
  std::optional<rb::OptResult> opt;
  out["full_space_s"] = seconds([&] { full.emplace(rb::enumerate_states(c.n, std::nullopt, rb::Ratio(1))); });
  out["full_states"] = full->size();
  out["exact_opt_s"] = seconds([&] { opt = rb::exact_opt(*full, initial, sigma); });
  out["off_s"] = seconds([&] { (void)rb::run_off(c.k, sigma, opt->trajectory); });

  std::optional<rb::MtsInstance> instance;
  out["restricted_instance_s"] =
      seconds([&] { instance.emplace(rb::make_restricted_instance(c.k, c.effective_alpha(), initial)); });
  out["restricted_states"] = instance->space.size();
  out["restricted_opt_s"] = seconds([&] {
    (void)rb::exact_opt(instance->space, instance->distance, instance->space[instance->initial], sigma);
  });
  for (const char* name : {"wfa", "mw"}) {
    auto solver = rb::make_solver(name, rb::MwOptions{c.eta});
    out[std::string(name) + "_s"] =
        seconds([&] { (void)rb::run_online(*solver, *instance, sigma, rb::solver_seed(c.seed)); });
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online bisection of a ring under edge requests: oracles, shadow algorithm and online solvers"};
  app.require_subcommand(1);

  auto* states = app.add_subcommand("states", "Count or list a state space");
  int states_n = 8;
  std::optional<int> states_k;
  std::string states_alpha;
  bool states_list = false;
  states->add_option("--n", states_n, "Ring size")->capture_default_str();
  states->add_option("--k", states_k, "Limit to at most 2k cut edges");
  states->add_option("--alpha", states_alpha, "Balance (default 3/2 + 1/k with --k, else 1)");
  states->add_flag("--list", states_list, "Print every state");

  CommonFlags opt_flags;
  bool opt_restricted = false;
  auto* opt = app.add_subcommand("opt", "Offline optimum of a generated request sequence");
  opt_flags.attach(*opt, false);
  opt->add_flag("--restricted", opt_restricted, "Optimize over the restricted space after rebalancing");

  CommonFlags run_flags;
  std::string run_out, run_format = "csv", run_summary;
  auto* run = app.add_subcommand("run", "Run algorithms on one sequence and write traces and a summary");
  run_flags.attach(*run, true);
  run->add_option("--out", run_out, "Trace file");
  run->add_option("--format", run_format, "Trace format: csv | jsonl")->capture_default_str();
  run->add_option("--summary", run_summary, "Summary file (default: standard output)");

  rb::VerifyOptions verify_options;
  auto* verify = app.add_subcommand("verify", "Run the invariant suites");
  verify->add_option("--min-n", verify_options.min_n, "Smallest ring size")->capture_default_str();
  verify->add_option("--max-n", verify_options.max_n, "Largest ring size")->capture_default_str();
  verify->add_option("--cases", verify_options.cases, "Random cases per size")->capture_default_str();
  verify->add_option("--seed", verify_options.seed, "Seed")->capture_default_str();
  verify->add_option("--suite", verify_options.suites, "Suites to run (default: all)")->delimiter(',');
  verify->add_option("--corpus-seeds", verify_options.corpus_seeds, "Seeds per corpus cell")->capture_default_str();
  verify->add_option("--corpus-len", verify_options.corpus_length, "Corpus sequence length")->capture_default_str();

  CommonFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "Time each stage on one configuration");
  bench_flags.attach(*bench, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*states) return cmd_states(states_n, states_k, states_alpha, states_list);
    if (*opt) return cmd_opt(opt_flags, opt_restricted);
    if (*run) return cmd_run(run_flags, run_out, run_format, run_summary);
    if (*verify) {
      const auto reports = rb::run_verify(verify_options);
      rb::print_report(std::cout, reports);
      for (const auto& r : reports) {
        if (!r.passed) return 1;
      }
      return 0;
    }
    if (*bench) return cmd_bench(bench_flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
