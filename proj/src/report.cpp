#include "estail/report.hpp"

#include <algorithm>
#include <charconv>
#include <fmt/format.h>
#include <map>
#include <set>

#include "estail/errors.hpp"

namespace estail {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string_view partition_name(PartitionStrategy::Kind k) {
  return k == PartitionStrategy::Kind::Sequential ? "sequential" : "shuffle";
}

std::string column_label(const SimulationPlan& plan) {
  if (plan.k_blocks == 1) return plan.spec.label();
  return fmt::format("{} k={}", plan.spec.label(), plan.k_blocks);
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_scalar(std::string_view s, std::size_t line) {
  T v{};
  s = trim(s);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw DomainError(fmt::format("plan line {}: cannot parse '{}'", line, s));
  return v;
}

}  // namespace

SmallMaxPolicy parse_small_max_policy(std::string_view text) {
  if (text == "error") return SmallMaxPolicy::Error;
  if (text == "short") return SmallMaxPolicy::Short;
  if (text == "raw") return SmallMaxPolicy::Raw;
  throw DomainError(fmt::format("unknown smallmax policy '{}'; use error, short or raw", text));
}

std::string_view to_string(SmallMaxPolicy p) noexcept {
  switch (p) {
    case SmallMaxPolicy::Error: return "error";
    case SmallMaxPolicy::Short: return "short";
    case SmallMaxPolicy::Raw: return "raw";
  }
  return "?";
}

nlohmann::json to_json(const TailTestResult& r) {
  return {{"test", "extreme_spacing"},
          {"n", r.n},
          {"alpha", r.alpha},
          {"t_stat", r.t_stat},
          {"theta_hat", r.theta_hat},
          {"spacing", r.spacing},
          {"surv_at_log_max", r.surv_at_log_max},
          {"p_short", r.p_short},
          {"p_long", r.p_long},
          {"decision", to_string(r.decision)},
          {"tied_top", r.tied_top},
          {"small_max_applied", r.small_max_applied}};
}

nlohmann::json to_json(const BlockedTestResult& r) {
  return {{"test", "blocked_extreme_spacing"},
          {"k", r.k},
          {"alpha", r.alpha},
          {"block_stats", r.block_stats},
          {"block_sizes", r.block_sizes},
          {"sum_stat", r.sum_stat},
          {"lower_crit", r.lower_crit},
          {"upper_crit", r.upper_crit},
          {"decision", to_string(r.decision)}};
}

nlohmann::json to_json(const BrysonQuantileTable& t) {
  return {{"dist", t.spec.to_string()}, {"n", t.n},         {"reps", t.reps},
          {"seed", t.seed},             {"probs", t.probs}, {"quantiles", t.quantiles},
          {"stderrs", t.stderrs}};
}

nlohmann::json to_json(const SimulationReport& r) {
  const auto& p = r.plan;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"n", row.n},
                    {"reps", row.reps},
                    {"short_rate", row.short_rate()},
                    {"medium_rate", row.medium_rate()},
                    {"long_rate", row.long_rate()},
                    {"stderr_s", row.stderr_short()},
                    {"stderr_l", row.stderr_long()},
                    {"short", row.short_count},
                    {"medium", row.medium_count},
                    {"long", row.long_count},
                    {"errors", row.error_count},
                    {"diagnostics", row.diagnostics}});
  }
  return {{"dist", p.spec.to_string()},
          {"label", p.spec.label()},
          {"k", p.k_blocks},
          {"alpha", p.alpha},
          {"reps", p.reps},
          {"seed", p.base_seed},
          {"smallmax", to_string(p.small_max)},
          {"partition", partition_name(p.partition)},
          {"rows", std::move(rows)}};
}

std::string emit_table(std::span<const SimulationReport> reports, TableFormat format) {
  switch (format) {
    case TableFormat::CSV: {
      std::string out(kReportCsvHeader);
      out += '\n';
      for (const auto& rep : reports)
        for (const auto& row : rep.rows)
          out += fmt::format("{},{},{},{},{:.6f},{:.6f},{:.6f},{:.6f},{},{}\n",
                             csv_field(rep.plan.spec.to_string()), row.n, rep.plan.k_blocks,
                             rep.plan.alpha, row.short_rate(), row.long_rate(),
                             row.stderr_short(), row.stderr_long(), row.error_count,
                             rep.plan.base_seed);
      return out;
    }
    case TableFormat::JSON: {
      nlohmann::json doc = {{"reports", nlohmann::json::array()}};
      for (const auto& rep : reports) doc["reports"].push_back(to_json(rep));
      return doc.dump(2) + "\n";
    }
    case TableFormat::Markdown: {
      std::set<std::size_t> sizes;
      for (const auto& rep : reports)
        for (const auto& row : rep.rows) sizes.insert(row.n);
      std::string out = "| n |";
      std::string rule = "|---|";
      for (const auto& rep : reports) {
        const auto label = column_label(rep.plan);
        out += fmt::format(" {} S | {} L |", label, label);
        rule += "---|---|";
      }
      out += '\n' + rule + '\n';
      for (std::size_t n : sizes) {
        out += fmt::format("| {} |", n);
        for (const auto& rep : reports) {
          const auto it = std::find_if(rep.rows.begin(), rep.rows.end(),
                                       [n](const RateRow& r) { return r.n == n; });
          if (it == rep.rows.end())
            out += "  |  |";
          else
            out += fmt::format(" {:.4f} | {:.4f} |", it->short_rate(), it->long_rate());
        }
        out += '\n';
      }
      return out;
    }
  }
  return {};
}

std::string emit_bryson_table(std::span<const BrysonQuantileTable> tables, TableFormat format) {
  switch (format) {
    case TableFormat::CSV: {
      std::string out(kBrysonCsvHeader);
      out += '\n';
      for (const auto& t : tables)
        for (std::size_t i = 0; i < t.probs.size(); ++i)
          out += fmt::format("{},{},{},{},{},{:.6f},{:.6f}\n", csv_field(t.spec.to_string()), t.n,
                             t.reps, t.seed, t.probs[i], t.quantiles[i], t.stderrs[i]);
      return out;
    }
    case TableFormat::JSON: {
      nlohmann::json doc = {{"tables", nlohmann::json::array()}};
      for (const auto& t : tables) doc["tables"].push_back(to_json(t));
      return doc.dump(2) + "\n";
    }
    case TableFormat::Markdown: {
      // Columns keyed by (dist, prob) in first-seen order; rows by n.
      std::vector<std::pair<std::string, double>> columns;
      std::map<std::size_t, std::map<std::pair<std::string, double>, double>> cells;
      for (const auto& t : tables) {
        for (std::size_t i = 0; i < t.probs.size(); ++i) {
          std::pair<std::string, double> key{t.spec.label(), t.probs[i]};
          if (std::find(columns.begin(), columns.end(), key) == columns.end())
            columns.push_back(key);
          cells[t.n][key] = t.quantiles[i];
        }
      }
      std::string out = "| n |";
      std::string rule = "|---|";
      for (const auto& [label, p] : columns) {
        out += fmt::format(" {} {} |", label, p);
        rule += "---|";
      }
      out += '\n' + rule + '\n';
      for (const auto& [n, row] : cells) {
        out += fmt::format("| {} |", n);
        for (const auto& key : columns) {
          const auto it = row.find(key);
          out += it == row.end() ? std::string("  |") : fmt::format(" {:.4f} |", it->second);
        }
        out += '\n';
      }
      return out;
    }
  }
  return {};
}

std::vector<SimulationPlan> parse_plan(std::string_view text) {
  SimulationPlan base;
  std::vector<DistributionSpec> dists;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw DomainError(fmt::format("plan line {}: expected key=value", line_no));
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));

    if (key == "dist") {
      try {
        dists.push_back(DistributionSpec::parse(value));
      } catch (const DomainError& e) {
        throw DomainError(fmt::format("plan line {}: {}", line_no, e.what()));
      }
    } else if (key == "n") {
      base.n_grid.clear();
      std::string_view rest = value;
      while (true) {
        const auto comma = rest.find(',');
        base.n_grid.push_back(parse_scalar<std::size_t>(rest.substr(0, comma), line_no));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
    } else if (key == "k") {
      base.k_blocks = parse_scalar<std::size_t>(value, line_no);
    } else if (key == "alpha") {
      base.alpha = parse_scalar<double>(value, line_no);
    } else if (key == "reps") {
      base.reps = parse_scalar<std::size_t>(value, line_no);
    } else if (key == "seed") {
      base.base_seed = parse_scalar<std::uint64_t>(value, line_no);
    } else if (key == "smallmax") {
      base.small_max = parse_small_max_policy(value);
    } else if (key == "partition") {
      if (value == "sequential")
        base.partition = PartitionStrategy::Kind::Sequential;
      else if (value == "shuffle")
        base.partition = PartitionStrategy::Kind::SeededShuffle;
      else
        throw DomainError(fmt::format("plan line {}: partition must be sequential or shuffle", line_no));
    } else {
      throw DomainError(fmt::format("plan line {}: unknown key '{}'", line_no, key));
    }
  }
  if (dists.empty()) throw DomainError("plan has no dist= line");

  std::vector<SimulationPlan> plans;
  for (const auto& d : dists) {
    SimulationPlan p = base;
    p.spec = d;
    p.validate();
    plans.push_back(std::move(p));
  }
  return plans;
}

}  // namespace estail
