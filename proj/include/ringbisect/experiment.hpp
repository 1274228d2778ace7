#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ringbisect/generators.hpp"
#include "ringbisect/ratio.hpp"
#include "ringbisect/ring.hpp"

namespace ringbisect {

/// Algorithm names accepted by the harness, in reporting order.
///
///   opt   exact optimum over all 1-balanced states
///   off   the offline shadow of that optimum
///   ropt  optimum over the restricted space (alpha-balanced, <= 2k cuts)
///   wfa   work-function solver on the restricted space
///   mw    multiplicative weights on the restricted space
inline const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names{"opt", "off", "ropt", "wfa", "mw"};
  return names;
}

struct RunConfig {
  int n = 8;
  int k = 2;
  std::optional<Ratio> alpha;  ///< unset: 3/2 + 1/k
  std::uint64_t seed = 1;
  GeneratorSpec generator;
  std::size_t length = 50;
  std::vector<std::string> algorithms = known_algorithms();
  InitialLayout layout = InitialLayout::Random;
  std::optional<double> eta;

  Ratio effective_alpha() const { return alpha ? *alpha : shadow_alpha(k); }
  /// Throws std::invalid_argument for an infeasible configuration.
  void validate() const;
};

/// Seeds for the independent random streams of one run.
std::uint64_t request_seed(std::uint64_t seed) noexcept;
std::uint64_t layout_seed(std::uint64_t seed) noexcept;
std::uint64_t solver_seed(std::uint64_t seed) noexcept;

struct TraceRow {
  std::size_t t = 0;  ///< 1-based request index
  int request_edge = 0;
  std::string algorithm;
  int hit = 0;
  int recolor = 0;
  std::int64_t cumulative_cost = 0;
  int cut_count = 0;   ///< after serving the request
  int less_count = 0;  ///< after serving the request
  int phase_index = 0;
};

struct AlgorithmSummary {
  std::string name;
  std::int64_t hit = 0;
  std::int64_t recolor = 0;
  std::int64_t total() const noexcept { return hit + recolor; }
  /// Cost of entering the algorithm's start state; not in total().
  std::optional<int> initial_rebalance;
  std::optional<int> phases;
  std::optional<int> rebalances;
  std::optional<double> expected_total;
  std::optional<double> eta;
};

struct ExperimentResult {
  RunConfig config;
  CutEdgeSet initial;
  std::vector<int> requests;
  std::vector<TraceRow> rows;
  std::vector<AlgorithmSummary> summaries;
  /// Named runtime invariants and whether they held.
  std::vector<std::pair<std::string, bool>> checks;
  std::vector<std::string> violations;

  bool ok() const;
  const AlgorithmSummary* find(const std::string& name) const;
};

/// Runs every configured algorithm on one request sequence. Throws
/// std::invalid_argument (bad config) or std::length_error (state space
/// too large) before any algorithm runs.
ExperimentResult run_experiment(const RunConfig& config);

enum class TraceFormat { Csv, Jsonl };

TraceFormat parse_trace_format(const std::string& text);
inline constexpr const char* kCsvHeader =
    "t,request_edge,algorithm,hit,recolor,cumulative_cost,cut_count,less_count,phase_index";
void write_trace(std::ostream& out, const std::vector<TraceRow>& rows, TraceFormat format);

/// Rounded to 6 decimals; null on a zero denominator.
nlohmann::ordered_json ratio_json(std::int64_t num, std::int64_t den);
nlohmann::ordered_json summary_json(const ExperimentResult& result);

}  // namespace ringbisect
