#include <catch_amalgamated.hpp>
#include <cmath>

#include "estail/errors.hpp"
#include "estail/power_lab.hpp"

using namespace estail;
using Catch::Approx;

namespace {

SimulationPlan plan_for(DistributionSpec spec, std::vector<std::size_t> grid, std::size_t reps,
                        std::size_t k = 1) {
  SimulationPlan p;
  p.spec = spec;
  p.n_grid = std::move(grid);
  p.reps = reps;
  p.k_blocks = k;
  return p;
}

void check_accounting(const SimulationReport& rep) {
  for (const auto& r : rep.rows) {
    REQUIRE(r.short_count + r.medium_count + r.long_count + r.error_count == r.reps);
    REQUIRE(r.short_rate() + r.long_rate() + r.medium_rate() +
                static_cast<double>(r.error_count) / static_cast<double>(r.reps) ==
            Approx(1.0).margin(1e-15));
    REQUIRE(r.diagnostics.size() == std::min<std::size_t>(r.error_count, 10));
  }
}

}  // namespace

TEST_CASE("plan validation", "[power_lab]") {
  CHECK_NOTHROW(plan_for(DistributionSpec::exponential(1), {10}, 100).validate());
  CHECK_THROWS_AS(plan_for(DistributionSpec::exponential(1), {10}, 99).validate(), DomainError);
  CHECK_THROWS_AS(plan_for(DistributionSpec::exponential(1), {}, 100).validate(), DomainError);
  CHECK_THROWS_AS(plan_for(DistributionSpec::exponential(1), {10}, 100, 4).validate(), BlockTooSmall);
  auto p = plan_for(DistributionSpec::exponential(1), {10}, 100);
  p.alpha = 0.5;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("reports do not depend on the thread count", "[power_lab][property]") {
  std::vector<SimulationReport> one, many;
  for (auto spec : {DistributionSpec::exponential(1), DistributionSpec::pareto_shifted(2)}) {
    auto p = plan_for(spec, {20, 100, 400}, 1000, 1);
    one.push_back(run_plan(p, 1));
    many.push_back(run_plan(p, 8));
    p.k_blocks = 3;
    p.partition = PartitionStrategy::Kind::SeededShuffle;
    one.push_back(run_plan(p, 1));
    many.push_back(run_plan(p, 8));
  }
  CHECK(emit_table(one, TableFormat::CSV) == emit_table(many, TableFormat::CSV));
  CHECK(emit_table(one, TableFormat::JSON) == emit_table(many, TableFormat::JSON));
  for (const auto& r : one) check_accounting(r);
}

TEST_CASE("replicate errors are counted, not dropped", "[power_lab]") {
  auto p = plan_for(DistributionSpec::uniform01(), {10, 50}, 200);
  p.small_max = SmallMaxPolicy::Error;
  const auto rep = run_plan(p);
  check_accounting(rep);
  for (const auto& r : rep.rows) {
    CHECK(r.error_count == 200);
    CHECK(r.diagnostics.size() == 10);
  }
  p.small_max = SmallMaxPolicy::Short;
  for (const auto& r : run_plan(p).rows) CHECK(r.short_count == 200);
}

TEST_CASE("standard errors", "[power_lab]") {
  RateRow r;
  r.reps = 10000;
  r.short_count = 500;
  r.long_count = 9000;
  CHECK(r.stderr_short() == Approx(std::sqrt(0.05 * 0.95 / 10000)));
  CHECK(r.stderr_long() == Approx(std::sqrt(0.9 * 0.1 / 10000)));
}

TEST_CASE("consistency scans", "[power_lab]") {
  const auto med = consistency_scan(DistributionSpec::exponential(1), {10, 100}, 1, 0.05, 1000);
  CHECK(med.verdict == ConsistencyVerdict::NotApplicable);
  CHECK(med.report.rows.empty());

  const auto cauchy = consistency_scan(DistributionSpec::cauchy(), {10, 100, 1000}, 1, 0.05, 10000);
  CHECK(cauchy.verdict == ConsistencyVerdict::Pass);
  const auto& rows = cauchy.report.rows;
  CHECK(rows[0].long_rate() < rows[1].long_rate());
  CHECK(rows[1].long_rate() < rows[2].long_rate());
  CHECK(rows[0].long_rate() == Approx(0.4640).margin(0.03));
  CHECK(rows[1].long_rate() == Approx(0.8161).margin(0.03));
  CHECK(rows[2].long_rate() == Approx(0.9701).margin(0.03));

  // Uniform(0,1) under the raw formula is short in every replicate.
  const auto unif = consistency_scan(DistributionSpec::uniform01(), {50, 250}, 1, 0.05, 2000);
  CHECK(unif.verdict == ConsistencyVerdict::Pass);

  const auto pareto = consistency_scan(DistributionSpec::pareto_shifted(1), {10, 100, 1000}, 1, 0.05, 2000);
  CHECK(pareto.verdict == ConsistencyVerdict::Pass);
  CHECK(to_string(pareto.verdict) == "PASS");
}

TEST_CASE("medium-tailed calibration envelope", "[power_lab][property]") {
  struct Cell {
    DistributionSpec spec;
    std::size_t n;
    double s, l;
  };
  // Published Type-I rates at n >= 250.
  const Cell cells[] = {
      {DistributionSpec::exponential(1), 250, .0506, .0541},
      {DistributionSpec::exponential(1), 500, .0542, .0517},
      {DistributionSpec::exponential(1), 1000, .0501, .0503},
      {DistributionSpec::exponential(0.01), 250, .0530, .0590},
      {DistributionSpec::exponential(0.01), 500, .0541, .0545},
      {DistributionSpec::exponential(0.01), 1000, .0526, .0546},
      {DistributionSpec::logistic(), 250, .0471, .0559},
      {DistributionSpec::logistic(), 500, .0490, .0594},
      {DistributionSpec::logistic(), 1000, .0462, .0568},
  };
  for (const auto& c : cells) {
    const auto rep = run_plan(plan_for(c.spec, {c.n}, 10000));
    const auto& r = rep.rows.front();
    INFO(c.spec.to_string() << " n=" << c.n << " S=" << r.short_rate() << " L=" << r.long_rate());
    CHECK(std::abs(r.short_rate() - c.s) <= 4 * r.stderr_short() + 0.01);
    CHECK(std::abs(r.long_rate() - c.l) <= 4 * r.stderr_long() + 0.01);
  }
}

TEST_CASE("a long tail is almost never called short", "[power_lab][property]") {
  const auto rep = run_plan(plan_for(DistributionSpec::pareto_shifted(1), {250, 1000}, 10000));
  for (const auto& r : rep.rows) CHECK(r.short_rate() < 0.005);
  CHECK(rep.rows[1].long_rate() == Approx(0.9809).margin(0.012));
}

TEST_CASE("small-max policy names", "[power_lab]") {
  CHECK(parse_small_max_policy("raw") == SmallMaxPolicy::Raw);
  CHECK(parse_small_max_policy("short") == SmallMaxPolicy::Short);
  CHECK(parse_small_max_policy("error") == SmallMaxPolicy::Error);
  CHECK(to_string(SmallMaxPolicy::Raw) == "raw");
  CHECK_THROWS_AS(parse_small_max_policy("sometimes"), DomainError);
}
