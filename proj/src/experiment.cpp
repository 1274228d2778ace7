#include "ringbisect/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "ringbisect/mts_online.hpp"
#include "ringbisect/off_shadow.hpp"
#include "ringbisect/opt_oracle.hpp"
#include "ringbisect/rng.hpp"
#include "ringbisect/state_space.hpp"

namespace ringbisect {

void RunConfig::validate() const {
  check_ring_size(n);
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const Ratio a = effective_alpha();
  if (a < Ratio(k + 1, k)) {
    throw std::invalid_argument("alpha " + a.str() + " is below 1 + 1/k = " + Ratio(k + 1, k).str());
  }
  if (algorithms.empty()) throw std::invalid_argument("no algorithm selected");
  for (const std::string& name : algorithms) {
    const auto& known = known_algorithms();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw std::invalid_argument("unknown algorithm '" + name + "' (expected opt, off, ropt, wfa or mw)");
    }
  }
  if (eta && !(*eta > 0.0)) throw std::invalid_argument("eta must be positive");
}

std::uint64_t request_seed(std::uint64_t seed) noexcept { return Rng::derive(seed, 0); }
std::uint64_t layout_seed(std::uint64_t seed) noexcept { return Rng::derive(seed, 1); }
std::uint64_t solver_seed(std::uint64_t seed) noexcept { return Rng::derive(seed, 2); }

bool ExperimentResult::ok() const {
  return violations.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

const AlgorithmSummary* ExperimentResult::find(const std::string& name) const {
  for (const AlgorithmSummary& s : summaries) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

namespace {

void append_rows(ExperimentResult& result, const std::string& name, const Trajectory& trajectory,
                 const std::vector<int>* phases) {
  std::int64_t cumulative = 0;
  for (std::size_t t = 0; t < trajectory.steps.size(); ++t) {
    const TrajectoryStep& s = trajectory.steps[t];
    cumulative += s.hit + s.recolor;
    result.rows.push_back(TraceRow{t + 1, s.request_edge, name, s.hit, s.recolor, cumulative, s.after.size(),
                                   less_count(s.after), phases ? (*phases)[t] : 0});
  }
}

AlgorithmSummary summarize(const std::string& name, const Trajectory& trajectory) {
  AlgorithmSummary s;
  s.name = name;
  s.hit = trajectory.hit_cost;
  s.recolor = trajectory.recolor_cost;
  return s;
}

bool stays_in_class(const Trajectory& trajectory, int k, const Ratio& alpha) {
  auto inside = [&](const CutEdgeSet& c) { return c.size() <= 2 * k && is_alpha_balanced(c, alpha); };
  if (!inside(trajectory.initial)) return false;
  return std::all_of(trajectory.steps.begin(), trajectory.steps.end(),
                     [&](const TrajectoryStep& s) { return inside(s.after); });
}

}  // namespace

ExperimentResult run_experiment(const RunConfig& config) {
  config.validate();
  const int n = config.n;
  const int k = config.k;
  const Ratio alpha = config.effective_alpha();
  auto wants = [&](const char* name) {
    return std::find(config.algorithms.begin(), config.algorithms.end(), name) != config.algorithms.end();
  };
  const bool need_opt = wants("opt") || wants("off");
  const bool need_restricted = wants("ropt") || wants("wfa") || wants("mw");

  ExperimentResult result{config, initial_state(config.layout, n, layout_seed(config.seed)), {}, {}, {}, {}, {}};

  // Both spaces are built first so that an oversized one is rejected
  // before anything runs.
  std::optional<StateSpace> full;
  if (need_opt) full.emplace(enumerate_states(n, std::nullopt, Ratio(1)));
  std::optional<MtsInstance> instance;
  if (need_restricted) instance.emplace(make_restricted_instance(k, alpha, result.initial));

  std::optional<ChaserSetup> chaser;
  if (config.generator.kind == GeneratorSpec::Kind::CutChaser) chaser = ChaserSetup{k, alpha, result.initial};
  result.requests = generate(config.generator, n, config.length, request_seed(config.seed), chaser);
  const std::vector<int>& sigma = result.requests;

  std::optional<OptResult> opt;
  if (full) opt = exact_opt(*full, result.initial, sigma);

  if (wants("opt")) {
    append_rows(result, "opt", opt->trajectory, nullptr);
    result.summaries.push_back(summarize("opt", opt->trajectory));
  }

  if (wants("off")) {
    const OffRun off = run_off(k, sigma, opt->trajectory);
    append_rows(result, "off", off.trajectory, &off.request_phase);
    AlgorithmSummary s = summarize("off", off.trajectory);
    s.initial_rebalance = off.initial_rebalance_cost;
    s.phases = static_cast<int>(off.phases.size());
    s.rebalances = off.rebalance_count();
    result.summaries.push_back(s);
    for (const std::string& v : off.violations) result.violations.push_back("off: " + v);
    result.checks.emplace_back("off_invariants", off.violations.empty());
    result.checks.emplace_back("off_hit_le_opt_hit", off.trajectory.hit_cost <= opt->trajectory.hit_cost);
    result.checks.emplace_back("offline_bound", meets_offline_bound(off.total_with_initial(), opt->cost, n, k));
  }

  if (instance) {
    const CutEdgeSet& start = instance->space[instance->initial];
    const int entry_cost = state_distance(result.initial, start);
    const OptResult ropt = exact_opt(instance->space, instance->distance, start, sigma);
    if (wants("ropt")) {
      append_rows(result, "ropt", ropt.trajectory, nullptr);
      AlgorithmSummary s = summarize("ropt", ropt.trajectory);
      s.initial_rebalance = entry_cost;
      result.summaries.push_back(s);
    }
    for (const char* name : {"wfa", "mw"}) {
      if (!wants(name)) continue;
      auto solver = make_solver(name, MwOptions{config.eta});
      const OnlineRun run = run_online(*solver, *instance, sigma, solver_seed(config.seed));
      append_rows(result, name, run.trajectory, nullptr);
      AlgorithmSummary s = summarize(name, run.trajectory);
      s.initial_rebalance = entry_cost;
      const std::string tag = name;
      result.checks.emplace_back(tag + "_in_class", stays_in_class(run.trajectory, k, alpha));
      result.checks.emplace_back(tag + "_ge_ropt", run.trajectory.total() >= ropt.cost);
      if (const auto* mw = dynamic_cast<const MwSolver*>(solver.get())) {
        s.expected_total = run.expected_cost;
        s.eta = mw->eta();
        result.checks.emplace_back("mw_normalized", mw->worst_normalization_error() <= 1e-9);
        result.checks.emplace_back("mw_expected_ge_ropt",
                                   *run.expected_cost >= static_cast<double>(ropt.cost) - 1e-6);
      }
      result.summaries.push_back(s);
    }
  }

  // Canonical order regardless of how the algorithms were listed.
  const auto& order = known_algorithms();
  auto rank = [&](const std::string& name) { return std::find(order.begin(), order.end(), name) - order.begin(); };
  std::stable_sort(result.summaries.begin(), result.summaries.end(),
                   [&](const auto& a, const auto& b) { return rank(a.name) < rank(b.name); });
  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [&](const auto& a, const auto& b) { return rank(a.algorithm) < rank(b.algorithm); });
  return result;
}

TraceFormat parse_trace_format(const std::string& text) {
  if (text == "csv") return TraceFormat::Csv;
  if (text == "jsonl") return TraceFormat::Jsonl;
  throw std::invalid_argument("unknown format '" + text + "' (expected csv or jsonl)");
}

void write_trace(std::ostream& out, const std::vector<TraceRow>& rows, TraceFormat format) {
  if (format == TraceFormat::Csv) {
    out << kCsvHeader << '\n';
    for (const TraceRow& r : rows) {
      out << r.t << ',' << r.request_edge << ',' << r.algorithm << ',' << r.hit << ',' << r.recolor << ','
          << r.cumulative_cost << ',' << r.cut_count << ',' << r.less_count << ',' << r.phase_index << '\n';
    }
    return;
  }
  for (const TraceRow& r : rows) {
    nlohmann::ordered_json j;
    j["t"] = r.t;
    j["request_edge"] = r.request_edge;
    j["algorithm"] = r.algorithm;
    j["hit"] = r.hit;
    j["recolor"] = r.recolor;
    j["cumulative_cost"] = r.cumulative_cost;
    j["cut_count"] = r.cut_count;
    j["less_count"] = r.less_count;
    j["phase_index"] = r.phase_index;
    out << j.dump() << '\n';
  }
}

namespace {

double round6(double x) { return std::round(x * 1e6) / 1e6; }

}  // namespace

nlohmann::ordered_json ratio_json(std::int64_t num, std::int64_t den) {
  if (den == 0) return nullptr;
  return round6(static_cast<double>(num) / static_cast<double>(den));
}

nlohmann::ordered_json summary_json(const ExperimentResult& result) {
  using nlohmann::ordered_json;
  const RunConfig& c = result.config;
  ordered_json config;
  config["n"] = c.n;
  config["k"] = c.k;
  config["alpha"] = c.effective_alpha().str();
  config["seed"] = c.seed;
  config["gen"] = c.generator.str();
  config["len"] = c.length;
  config["init"] = to_string(c.layout);
  ordered_json algos = ordered_json::array();
  for (const std::string& name : known_algorithms()) {
    if (std::find(c.algorithms.begin(), c.algorithms.end(), name) != c.algorithms.end()) algos.push_back(name);
  }
  config["algorithms"] = algos;
  if (c.eta) config["eta"] = *c.eta;

  ordered_json out;
  out["config"] = config;
  out["initial"] = result.initial.str();
  out["alpha_at_least_2"] = c.effective_alpha() >= Ratio(2);

  ordered_json totals = ordered_json::object();
  for (const AlgorithmSummary& s : result.summaries) {
    ordered_json a;
    a["total"] = s.total();
    a["hit"] = s.hit;
    a["recolor"] = s.recolor;
    if (s.initial_rebalance) a["initial_rebalance"] = *s.initial_rebalance;
    if (s.name == "off") a["total_with_initial"] = s.total() + *s.initial_rebalance;
    if (s.phases) a["phases"] = *s.phases;
    if (s.rebalances) a["rebalances"] = *s.rebalances;
    if (s.expected_total) a["expected_total"] = round6(*s.expected_total);
    if (s.eta) a["eta"] = round6(*s.eta);
    totals[s.name] = a;
  }
  out["algorithms"] = totals;

  // OFF is measured with its initial rebalance, as in the offline bound.
  ordered_json ratios = ordered_json::object();
  const AlgorithmSummary* opt = result.find("opt");
  const AlgorithmSummary* off = result.find("off");
  std::optional<std::int64_t> off_total;
  if (off) off_total = off->total() + off->initial_rebalance.value_or(0);
  if (off && opt) ratios["off/opt"] = ratio_json(*off_total, opt->total());
  for (const char* name : {"wfa", "mw"}) {
    const AlgorithmSummary* onl = result.find(name);
    if (!onl) continue;
    if (off) ratios[std::string(name) + "/off"] = ratio_json(onl->total(), *off_total);
    if (opt) ratios[std::string(name) + "/opt"] = ratio_json(onl->total(), opt->total());
  }
  out["ratios"] = ratios;

  ordered_json checks = ordered_json::object();
  for (const auto& [name, ok] : result.checks) checks[name] = ok;
  out["checks"] = checks;
  out["violations"] = result.violations;
  out["ok"] = result.ok();
  return out;
}

}  // namespace ringbisect
