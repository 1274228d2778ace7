#pragma once

// Invariant suites over exhaustive and randomized small instances, plus the
// regression corpus driver they share with the acceptance tests.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ringbisect/generators.hpp"
#include "ringbisect/mts_online.hpp"
#include "ringbisect/off_shadow.hpp"
#include "ringbisect/opt_oracle.hpp"
#include "ringbisect/rebalance.hpp"
#include "ringbisect/rng.hpp"

namespace ringbisect {

using Rebalancer = std::function<RebalanceResult(const CutEdgeSet&, int)>;

/// Uniform over valid cut-edge sets (even cardinality) of an n-ring.
CutEdgeSet random_cut_set(int n, Rng& rng);
/// Uniform over half/half colorings.
CutEdgeSet random_bisection(int n, Rng& rng);

/// First failure of the rebalancing postconditions on one input, or
/// nothing if they all hold: output within input, |output| = min(2k, |input|),
/// less >= n/2 - n/(2k), and less >= n/2 - n/(2j) after every trace step
/// that leaves 2j edges.
std::optional<std::string> rebalance_violation(const CutEdgeSet& input, int k, const RebalanceResult& result);

struct CorpusSpec {
  std::vector<int> ring_sizes{8, 10, 12};
  std::vector<int> ks{1, 2, 3};
  std::vector<GeneratorSpec> generators{GeneratorSpec::parse("uniform"), GeneratorSpec::parse("sweep"),
                                        GeneratorSpec::parse("blocks"), GeneratorSpec::parse("cut-chaser")};
  int seeds = 20;  ///< seeds 1..seeds
  std::size_t length = 200;
  /// Also run the restricted optimum and both online solvers.
  bool online = false;
};

/// One corpus case. The request sequence and start state are derived from
/// the seed exactly as the `run` command does with the random layout.
struct CorpusRun {
  int n = 0;
  int k = 0;
  GeneratorSpec generator;
  std::uint64_t seed = 0;
  CutEdgeSet initial;
  const std::vector<int>* requests = nullptr;
  const OptResult* opt = nullptr;
  const OffRun* off = nullptr;

  // Set only for online corpora.
  const MtsInstance* instance = nullptr;
  const OptResult* ropt = nullptr;
  const OnlineRun* wfa = nullptr;
  const OnlineRun* mw = nullptr;
  double mw_normalization_error = 0.0;

  std::string label() const;
};

/// Calls `visit` for every (n, generator, seed, k) of the corpus. The
/// unrestricted optimum is computed once per request sequence.
void run_corpus(const CorpusSpec& spec, const std::function<void(const CorpusRun&)>& visit);

struct VerifyOptions {
  int min_n = 4;
  int max_n = 12;
  int cases = 500;
  std::uint64_t seed = 1;
  /// Empty: every suite.
  std::vector<std::string> suites;
  Rebalancer rebalancer = global_rebalance;
  /// Corpus size for the shadow and online suites.
  int corpus_seeds = 2;
  std::size_t corpus_length = 60;
};

struct SuiteReport {
  std::string name;
  bool passed = true;
  std::int64_t checked = 0;
  std::string counterexample;
  double seconds = 0.0;
};

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite.
SuiteReport run_suite(const std::string& name, const VerifyOptions& options);
std::vector<SuiteReport> run_verify(const VerifyOptions& options);

/// One "[PASS]"/"[FAIL]" line per suite, with the counterexample under a
/// failing one.
void print_report(std::ostream& out, const std::vector<SuiteReport>& reports);

}  // namespace ringbisect
