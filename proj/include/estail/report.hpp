#pragma once

#include <json.hpp>
#include <span>
#include <string>

#include "estail/blocking.hpp"
#include "estail/bryson.hpp"
#include "estail/power_lab.hpp"
#include "estail/tail_test.hpp"

namespace estail {

nlohmann::json to_json(const TailTestResult& r);
nlohmann::json to_json(const BlockedTestResult& r);
nlohmann::json to_json(const BrysonQuantileTable& t);
nlohmann::json to_json(const SimulationReport& r);

inline constexpr std::string_view kBrysonCsvHeader = "dist,n,reps,seed,prob,quantile,stderr";

/// Quantile tables in the same flat style as simulation reports: CSV has
/// one row per (dist, n, prob); Markdown has rows = n and one column per
/// (dist, prob).
std::string emit_bryson_table(std::span<const BrysonQuantileTable> tables, TableFormat format);

}  // namespace estail
