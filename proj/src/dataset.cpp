#include "estail/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <fstream>
#include <sstream>

#include "estail/errors.hpp"

namespace estail {

DatasetFile parse_dataset(std::string_view text, std::string path) {
  DatasetFile out;
  out.path = std::move(path);
  std::vector<std::size_t> bad;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string_view::npos || line[b] == '#') {
      ++out.skipped_lines;
      continue;
    }
    line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
    if (line.front() == '+') line.remove_prefix(1);

    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc{} || ptr != line.data() + line.size() || !std::isfinite(v)) {
      bad.push_back(line_no);
      continue;
    }
    out.values.push_back(v);
  }
  if (!bad.empty()) {
    auto what = fmt::format("{}: invalid or non-finite values on line(s) {}", out.path, fmt::join(bad, ", "));
    throw IngestionError(what, std::move(bad));
  }
  return out;
}

DatasetFile read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError(fmt::format("cannot open {}", path.string()), {});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str(), path.string());
}

}  // namespace estail
