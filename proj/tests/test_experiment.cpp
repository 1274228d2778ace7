#include <doctest.h>

#include <map>
#include <sstream>
#include <stdexcept>

#include "ringbisect/experiment.hpp"

using namespace ringbisect;

namespace {

RunConfig config(int n, int k, const char* gen, std::size_t length, std::uint64_t seed = 1) {
  RunConfig c;
  c.n = n;
  c.k = k;
  c.generator = GeneratorSpec::parse(gen);
  c.length = length;
  c.seed = seed;
  return c;
}

std::string csv(const ExperimentResult& r) {
  std::ostringstream out;
  write_trace(out, r.rows, TraceFormat::Csv);
  return out.str();
}

}  // namespace

TEST_SUITE("experiment") {
  TEST_CASE("empty sequence") {
    const ExperimentResult r = run_experiment(config(8, 2, "uniform", 0));
    CHECK(r.ok());
    CHECK(r.rows.empty());
    REQUIRE(r.summaries.size() == known_algorithms().size());
    for (const auto& s : r.summaries) CHECK(s.total() == 0);
  }

  TEST_CASE("sweep run passes every check") {
    const ExperimentResult r = run_experiment(config(8, 2, "sweep", 50));
    CHECK(r.ok());
    bool found = false;
    for (const auto& [name, ok] : r.checks) {
      if (name == "offline_bound") {
        found = true;
        CHECK(ok);
      }
    }
    CHECK(found);
    CHECK(r.rows.size() == 50 * known_algorithms().size());
    CHECK(r.find("opt")->total() <= r.find("off")->total() + *r.find("off")->initial_rebalance);
  }

  TEST_CASE("traces are byte-identical across runs") {
    for (const char* gen : {"uniform", "cut-chaser", "blocks:4"}) {
      const RunConfig c = config(10, 2, gen, 80, 13);
      const ExperimentResult a = run_experiment(c);
      const ExperimentResult b = run_experiment(c);
      CHECK(csv(a) == csv(b));
      CHECK(summary_json(a).dump() == summary_json(b).dump());
    }
  }

  TEST_CASE("csv header and totals agree with the summary") {
    const ExperimentResult r = run_experiment(config(8, 1, "uniform", 40, 3));
    const std::string text = csv(r);
    CHECK(text.substr(0, text.find('\n')) == kCsvHeader);

    std::map<std::string, std::int64_t> sums;
    std::map<std::string, std::int64_t> last;
    for (const TraceRow& row : r.rows) {
      sums[row.algorithm] += row.hit + row.recolor;
      last[row.algorithm] = row.cumulative_cost;
    }
    const auto json = summary_json(r);
    for (const auto& s : r.summaries) {
      CHECK(sums[s.name] == s.total());
      CHECK(last[s.name] == s.total());
      CHECK(json["algorithms"][s.name]["total"].get<std::int64_t>() == s.total());
    }
    CHECK(json["config"]["gen"] == "uniform");
    CHECK(json["ok"] == true);
  }

  TEST_CASE("jsonl has one object per row") {
    const ExperimentResult r = run_experiment(config(8, 2, "sweep", 5));
    std::ostringstream out;
    write_trace(out, r.rows, TraceFormat::Jsonl);
    std::istringstream in(out.str());
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line)) {
      const auto row = nlohmann::json::parse(line);
      CHECK(row.contains("phase_index"));
      ++count;
    }
    CHECK(count == r.rows.size());
    CHECK(parse_trace_format("jsonl") == TraceFormat::Jsonl);
    CHECK_THROWS_AS(parse_trace_format("xml"), std::invalid_argument);
  }

  TEST_CASE("ratios") {
    CHECK(ratio_json(1, 0).is_null());
    CHECK(ratio_json(2, 3).get<double>() == doctest::Approx(0.666667));
    const ExperimentResult r = run_experiment(config(8, 2, "uniform", 0));
    CHECK(summary_json(r)["ratios"]["wfa/opt"].is_null());
  }

  TEST_CASE("infeasible configurations are rejected") {
    RunConfig c = config(8, 2, "uniform", 10);
    c.alpha = Ratio(5, 4);
    CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);
    c = config(8, 2, "uniform", 10);
    c.algorithms = {"opt", "greedy"};
    CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);
    c = config(8, 2, "uniform", 10);
    c.eta = 0.0;
    CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);
    c = config(7, 2, "uniform", 10);
    CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);
  }

  TEST_CASE("a subset of algorithms") {
    RunConfig c = config(8, 2, "uniform", 20);
    c.algorithms = {"wfa", "ropt"};
    const ExperimentResult r = run_experiment(c);
    REQUIRE(r.summaries.size() == 2);
    CHECK(r.summaries[0].name == "ropt");
    CHECK(r.summaries[1].name == "wfa");
    CHECK(r.find("opt") == nullptr);
    CHECK(r.ok());
  }

  TEST_CASE("independent seed streams") {
    CHECK(request_seed(1) != layout_seed(1));
    CHECK(layout_seed(1) != solver_seed(1));
    CHECK(request_seed(1) != request_seed(2));
  }
}
