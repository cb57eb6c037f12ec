#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace estail {

/// One numeric value per line; blank lines and lines starting with `#` are
/// skipped. Decimal point is always `.` regardless of locale.
struct DatasetFile {
  std::string path;
  std::vector<double> values;
  std::size_t skipped_lines = 0;
};

/// Throws IngestionError listing every offending line (unparsable, NaN, inf).
DatasetFile parse_dataset(std::string_view text, std::string path = "<memory>");
DatasetFile read_dataset(const std::filesystem::path& path);

}  // namespace estail
