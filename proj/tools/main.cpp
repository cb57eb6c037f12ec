// estail: command-line front end for the tail tests and the simulation engine.
//
// Exit codes for `test` and `bryson`: 0 medium, 2 short, 3 long, 1 error.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "estail/blocking.hpp"
#include "estail/bryson.hpp"
#include "estail/dataset.hpp"
#include "estail/errors.hpp"
#include "estail/power_lab.hpp"
#include "estail/report.hpp"
#include "estail/tail_test.hpp"

namespace {

using namespace estail;

constexpr int kExitError = 1;

int exit_code(TailClass c) {
  switch (c) {
    case TailClass::Medium: return 0;
    case TailClass::Short: return 2;
    case TailClass::Long: return 3;
  }
  return kExitError;
}

struct Preprocess {
  std::string shift = "none";
  bool negate = false;
  bool abs = false;
};

ShiftMode parse_shift(const std::string& s) {
  if (s == "none") return ShiftMode::none();
  if (s == "min") return ShiftMode::subtract_min();
  double v = 0.0;
  std::size_t used = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !std::isfinite(v))
    throw DomainError(fmt::format("--shift expects none, min or a number, got '{}'", s));
  return ShiftMode::subtract_value(v);
}

// Negation, then absolute value, then the shift.
Sample load(const std::string& path, const Preprocess& pre, DatasetFile* file_out = nullptr) {
  auto file = read_dataset(path);
  for (auto& v : file.values) {
    if (pre.negate) v = -v;
    if (pre.abs) v = std::abs(v);
  }
  auto sample = shift_sample(file.values, parse_shift(pre.shift));
  if (file_out) *file_out = std::move(file);
  return sample;
}

nlohmann::json input_json(const std::string& path, const Preprocess& pre, const Sample& s) {
  return {{"path", path}, {"negate", pre.negate}, {"abs", pre.abs},
          {"shift", pre.shift}, {"shift_value", s.shift()}, {"n", s.size()}};
}

void write_json(const std::string& where, const nlohmann::json& doc) {
  if (where.empty()) return;
  if (where == "-") {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(where);
  if (!out) throw Error(fmt::format("cannot write {}", where));
  out << doc.dump(2) << '\n';
}

void write_text(const std::string& where, const std::string& text) {
  if (where.empty() || where == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(where);
  if (!out) throw Error(fmt::format("cannot write {}", where));
  out << text;
}

TableFormat parse_format(const std::string& f) {
  if (f == "csv") return TableFormat::CSV;
  if (f == "md" || f == "markdown") return TableFormat::Markdown;
  if (f == "json") return TableFormat::JSON;
  throw DomainError(fmt::format("unknown format '{}'; use csv, md or json", f));
}

std::vector<std::size_t> parse_grid(const std::vector<std::string>& items) {
  std::vector<std::size_t> grid;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != tok.size())
        throw DomainError(fmt::format("--n expects sample sizes, got '{}'", tok));
      grid.push_back(static_cast<std::size_t>(v));
    }
  }
  return grid;
}

void add_preprocess(CLI::App* cmd, Preprocess& pre) {
  cmd->add_option("--shift", pre.shift, "Subtract before testing: none, min, or a number")
      ->default_val("none");
  cmd->add_flag("--negate", pre.negate, "Negate values (left-tail analysis)");
  cmd->add_flag("--abs", pre.abs, "Take absolute values (after --negate)");
}

// ---- test -------------------------------------------------------------

struct TestArgs {
  std::string path;
  double alpha = 0.05;
  Preprocess pre;
  std::size_t blocks = 1;
  bool sequential = false;
  std::uint64_t block_seed = PartitionStrategy{}.seed;
  std::string small_max = "error";
  std::string json;
};

int run_test(const TestArgs& a) {
  const Sample s = load(a.path, a.pre);
  TailTestOptions opts{parse_small_max_policy(a.small_max)};
  nlohmann::json doc = {{"input", input_json(a.path, a.pre, s)}};
  TailClass decision;

  fmt::print("n            {}\n", s.size());
  if (s.shift() != 0.0) fmt::print("shift        {}\n", s.shift());
  if (a.blocks == 1) {
    const auto r = tail_test(s, a.alpha, opts);
    fmt::print("T            {:.6g}\n", r.t_stat);
    fmt::print("theta_hat    {:.6g}\n", r.theta_hat);
    fmt::print("spacing      {:.6g}\n", r.spacing);
    fmt::print("p_short      {:.6g}\n", r.p_short);
    fmt::print("p_long       {:.6g}\n", r.p_long);
    if (r.tied_top) fmt::print(stderr, "warning: top two observations are tied; T = 0\n");
    if (r.small_max_applied)
      fmt::print(stderr, "warning: maximum <= 1; small-max policy '{}' applied\n", a.small_max);
    decision = r.decision;
    doc["result"] = to_json(r);
  } else {
    const auto strategy = a.sequential ? PartitionStrategy::sequential()
                                       : PartitionStrategy::shuffled(a.block_seed);
    const auto r = blocked_test(s, a.blocks, a.alpha, strategy, opts);
    fmt::print("k            {}\n", r.k);
    fmt::print("block sum    {:.6g}\n", r.sum_stat);
    fmt::print("critical     [{:.6g}, {:.6g}]\n", r.lower_crit, r.upper_crit);
    decision = r.decision;
    doc["result"] = to_json(r);
    doc["result"]["partition"] = a.sequential ? "sequential" : "shuffle";
    if (!a.sequential) doc["result"]["block_seed"] = a.block_seed;
  }
  fmt::print("decision     {} (alpha = {})\n", to_string(decision), a.alpha);
  write_json(a.json, doc);
  return exit_code(decision);
}

// ---- simulate ---------------------------------------------------------

struct SimulateArgs {
  std::string plan_file;
  std::vector<std::string> dists;
  std::vector<std::string> n;
  std::size_t k = 1;
  double alpha = 0.05;
  std::size_t reps = 10000;
  std::uint64_t seed = 42;
  std::string small_max = "raw";
  std::string partition = "sequential";
  std::string format = "csv";
  std::string out;
  unsigned threads = 0;
};

std::vector<SimulationPlan> plans_from(const SimulateArgs& a) {
  if (!a.plan_file.empty()) {
    std::ifstream in(a.plan_file);
    if (!in) throw Error(fmt::format("cannot open plan file {}", a.plan_file));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_plan(ss.str());
  }
  if (a.dists.empty() || a.n.empty()) throw DomainError("simulate needs --plan, or --dist and --n");
  SimulationPlan base;
  base.n_grid = parse_grid(a.n);
  base.k_blocks = a.k;
  base.alpha = a.alpha;
  base.reps = a.reps;
  base.base_seed = a.seed;
  base.small_max = parse_small_max_policy(a.small_max);
  if (a.partition == "sequential")
    base.partition = PartitionStrategy::Kind::Sequential;
  else if (a.partition == "shuffle")
    base.partition = PartitionStrategy::Kind::SeededShuffle;
  else
    throw DomainError("--partition must be sequential or shuffle");
  std::vector<SimulationPlan> plans;
  for (const auto& d : a.dists) {
    auto p = base;
    p.spec = DistributionSpec::parse(d);
    p.validate();
    plans.push_back(std::move(p));
  }
  return plans;
}

int run_simulate(const SimulateArgs& a) {
  const auto format = parse_format(a.format);
  std::vector<SimulationReport> reports;
  for (const auto& p : plans_from(a)) {
    reports.push_back(run_plan(p, a.threads));
    for (const auto& row : reports.back().rows)
      if (row.error_count > 0)
        fmt::print(stderr, "{} n={}: {} replicate(s) failed, e.g. {}\n", p.spec.to_string(), row.n,
                   row.error_count, row.diagnostics.front());
  }
  write_text(a.out, emit_table(reports, format));
  return 0;
}

// ---- scan -------------------------------------------------------------

struct ScanArgs {
  std::string dist;
  std::vector<std::string> n;
  std::size_t k = 1;
  double alpha = 0.05;
  std::size_t reps = 10000;
  std::uint64_t seed = 42;
  unsigned threads = 0;
};

int run_scan(const ScanArgs& a) {
  const auto scan = consistency_scan(DistributionSpec::parse(a.dist), parse_grid(a.n), a.k, a.alpha,
                                     a.reps, a.seed, a.threads);
  if (!scan.report.rows.empty()) std::cout << emit_table({&scan.report, 1}, TableFormat::Markdown);
  fmt::print("{}: {}\n", to_string(scan.verdict), scan.reason);
  return scan.verdict == ConsistencyVerdict::Fail ? kExitError : 0;
}

// ---- bryson -----------------------------------------------------------

struct BrysonArgs {
  std::string path;
  double alpha = 0.05;
  Preprocess pre;
  std::size_t reps = 10000;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::string json;
};

int run_bryson(const BrysonArgs& a) {
  const Sample s = load(a.path, a.pre);
  const double t_star = bryson_statistic(s);
  const std::vector<double> probs{a.alpha / 2, 0.05, 0.95, 1 - a.alpha / 2};
  std::vector<double> uniq;
  for (double p : probs)
    if (std::find(uniq.begin(), uniq.end(), p) == uniq.end()) uniq.push_back(p);
  std::sort(uniq.begin(), uniq.end());
  const auto table =
      simulate_bryson_quantiles(DistributionSpec::exponential(1), s.size(), a.reps, a.seed, uniq, a.threads);
  const auto decision = bryson_test(s, a.alpha, table);

  fmt::print("n            {}\n", s.size());
  fmt::print("T*           {:.6g}\n", t_star);
  fmt::print("Exp(1) reference, {} replicates, seed {}:\n", table.reps, table.seed);
  for (std::size_t i = 0; i < table.probs.size(); ++i)
    fmt::print("  q{:<10g} {:.6f} (se {:.6f})\n", table.probs[i], table.quantiles[i], table.stderrs[i]);
  fmt::print("decision     {} (alpha = {})\n", to_string(decision), a.alpha);

  write_json(a.json, {{"input", input_json(a.path, a.pre, s)},
                      {"result",
                       {{"test", "bryson"},
                        {"t_star", t_star},
                        {"alpha", a.alpha},
                        {"decision", to_string(decision)},
                        {"null_table", to_json(table)}}}});
  return exit_code(decision);
}

struct QuantileArgs {
  std::vector<std::string> dists;
  std::vector<std::string> n;
  std::size_t reps = 10000;
  std::uint64_t seed = 42;
  std::vector<double> probs{std::begin(kBrysonDefaultProbs), std::end(kBrysonDefaultProbs)};
  std::string format = "csv";
  std::string out;
  unsigned threads = 0;
};

int run_quantiles(const QuantileArgs& a) {
  const auto format = parse_format(a.format);
  std::vector<BrysonQuantileTable> tables;
  for (const auto& d : a.dists) {
    const auto spec = DistributionSpec::parse(d);
    for (std::size_t n : parse_grid(a.n))
      tables.push_back(simulate_bryson_quantiles(spec, n, a.reps, a.seed, a.probs, a.threads));
  }
  write_text(a.out, emit_bryson_table(tables, format));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify right tails as short, medium or long"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "estail 1.0.0");

  TestArgs ta;
  auto* test = app.add_subcommand("test", "Extreme-spacing tail test on a data file");
  test->add_option("path", ta.path, "One value per line; '#' comments")->required();
  test->add_option("--alpha", ta.alpha, "Level in (0, 0.5)")->default_val(0.05);
  add_preprocess(test, ta.pre);
  test->add_option("--blocks,-k", ta.blocks, "Number of blocks (1 = unblocked)")->default_val(1);
  test->add_flag("--sequential", ta.sequential, "Block in file order instead of a seeded shuffle");
  test->add_option("--block-seed", ta.block_seed, "Shuffle seed for blocking")->default_str("24301");
  test->add_option("--smallmax", ta.small_max, "Maximum <= 1: error, short or raw")->default_val("error");
  test->add_option("--json", ta.json, "Also write a JSON report ('-' for stdout)");

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo rejection rates");
  sim->add_option("--plan", sa.plan_file, "Plan file of key=value lines");
  sim->add_option("--dist", sa.dists, "Distribution, e.g. exp:1, pareto:2, weibull:5 (repeatable)");
  sim->add_option("--n", sa.n, "Sample sizes, comma separated");
  sim->add_option("--k", sa.k, "Blocks")->default_val(1);
  sim->add_option("--alpha", sa.alpha)->default_val(0.05);
  sim->add_option("--reps", sa.reps)->default_val(10000);
  sim->add_option("--seed", sa.seed)->default_val(42);
  sim->add_option("--smallmax", sa.small_max)->default_val("raw");
  sim->add_option("--partition", sa.partition, "sequential or shuffle")->default_val("sequential");
  sim->add_option("--format", sa.format, "csv, md or json")->default_val("csv");
  sim->add_option("--out,-o", sa.out, "Output file (default stdout)");
  sim->add_option("--threads", sa.threads, "Worker threads (0 = all cores)")->default_val(0);
  sim->get_option("--plan")->excludes(sim->get_option("--dist"));

  ScanArgs ca;
  auto* scan = app.add_subcommand("scan", "Check that power grows with n for a short or long tail");
  scan->add_option("--dist", ca.dist)->required();
  scan->add_option("--n", ca.n, "Ascending sample sizes")->required();
  scan->add_option("--k", ca.k)->default_val(1);
  scan->add_option("--alpha", ca.alpha)->default_val(0.05);
  scan->add_option("--reps", ca.reps)->default_val(10000);
  scan->add_option("--seed", ca.seed)->default_val(42);
  scan->add_option("--threads", ca.threads)->default_val(0);

  BrysonArgs ba;
  auto* bry = app.add_subcommand("bryson", "Bryson's T* against a simulated Exp(1) reference");
  bry->add_option("path", ba.path)->required();
  bry->add_option("--alpha", ba.alpha)->default_val(0.05);
  add_preprocess(bry, ba.pre);
  bry->add_option("--reps", ba.reps, "Reference replicates (>= 1000)")->default_val(10000);
  bry->add_option("--seed", ba.seed)->default_val(42);
  bry->add_option("--threads", ba.threads)->default_val(0);
  bry->add_option("--json", ba.json, "Also write a JSON report ('-' for stdout)");

  QuantileArgs qa;
  auto* bq = app.add_subcommand("bryson-quantiles", "Simulated quantiles of T*");
  bq->add_option("--dist", qa.dists)->required();
  bq->add_option("--n", qa.n)->required();
  bq->add_option("--reps", qa.reps)->default_val(10000);
  bq->add_option("--seed", qa.seed)->default_val(42);
  bq->add_option("--probs", qa.probs, "Probabilities in (0, 1)")->delimiter(',');
  bq->add_option("--format", qa.format, "csv, md or json")->default_val("csv");
  bq->add_option("--out,-o", qa.out);
  bq->add_option("--threads", qa.threads)->default_val(0);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*test) return run_test(ta);
    if (*sim) return run_simulate(sa);
    if (*scan) return run_scan(ca);
    if (*bry) return run_bryson(ba);
    if (*bq) return run_quantiles(qa);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
  }
  return kExitError;
}
