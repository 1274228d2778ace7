#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "ringbisect/verify.hpp"

using namespace ringbisect;

namespace {

// Deliberately wrong: drops the smallest arc of the less frequent color.
RebalanceResult wrong_color_rebalance(const CutEdgeSet& input, int k) {
  const int n = input.ring_size();
  RebalanceResult result{input, {}};
  while (result.cuts.size() > 2 * k) {
    const std::vector<int> e = result.cuts.edges();
    const Coloring colors = coloring_of(result.cuts);
    const Color less = more_frequent_color(result.cuts) == Color::Red ? Color::Blue : Color::Red;
    int best = -1;
    int best_size = n + 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
      const Arc arc = clockwise_arc(n, e[i], e[(i + 1) % e.size()]);
      if (colors[static_cast<std::size_t>(arc.nodes.front())] == less && arc.size() < best_size) {
        best = static_cast<int>(i);
        best_size = arc.size();
      }
    }
    const int a = e[static_cast<std::size_t>(best)];
    const int b = e[(static_cast<std::size_t>(best) + 1) % e.size()];
    RebalanceStep step{a, b, less, best_size, result.cuts.size(), 0};
    std::uint64_t mask = result.cuts.mask() & ~(std::uint64_t{1} << a) & ~(std::uint64_t{1} << b);
    result.cuts = CutEdgeSet::from_mask(n, mask);
    step.less_after = less_count(result.cuts);
    result.trace.steps.push_back(step);
  }
  return result;
}

VerifyOptions small_options() {
  VerifyOptions o;
  o.max_n = 8;
  o.cases = 40;
  o.corpus_seeds = 1;
  o.corpus_length = 30;
  return o;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("every suite passes on small instances") {
    const auto reports = run_verify(small_options());
    REQUIRE(reports.size() == suite_names().size());
    for (const auto& r : reports) {
      CHECK_MESSAGE(r.passed, r.name, ": ", r.counterexample);
      CHECK(r.checked > 0);
    }
    std::ostringstream out;
    print_report(out, reports);
    CHECK(out.str().find("[PASS] phi") != std::string::npos);
  }

  TEST_CASE("the rebalance suite catches a rebalancer that recolors the wrong color") {
    VerifyOptions o = small_options();
    o.max_n = 16;
    o.rebalancer = wrong_color_rebalance;
    const SuiteReport r = run_suite("rebalance", o);
    CHECK_FALSE(r.passed);
    CHECK_FALSE(r.counterexample.empty());
    std::ostringstream out;
    print_report(out, {r});
    CHECK(out.str().find("[FAIL] rebalance") != std::string::npos);
  }

  TEST_CASE("a rebalancer that throws is reported, not propagated") {
    VerifyOptions o = small_options();
    o.rebalancer = [](const CutEdgeSet&, int) -> RebalanceResult { throw std::runtime_error("boom"); };
    const SuiteReport r = run_suite("rebalance", o);
    CHECK_FALSE(r.passed);
    CHECK(r.counterexample.find("boom") != std::string::npos);
  }

  TEST_CASE("unknown suites are errors") {
    CHECK_THROWS_AS(run_suite("bounds", small_options()), std::invalid_argument);
    VerifyOptions o = small_options();
    o.suites = {"phi", "nope"};
    CHECK_THROWS_AS(run_verify(o), std::invalid_argument);
  }

  TEST_CASE("random generators") {
    Rng rng(30);
    for (int i = 0; i < 200; ++i) {
      CHECK(random_cut_set(10, rng).size() % 2 == 0);
      CHECK(is_alpha_balanced(random_bisection(10, rng), Ratio(1)));
    }
  }
}
