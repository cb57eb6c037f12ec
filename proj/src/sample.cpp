#include "estail/sample.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "estail/errors.hpp"

namespace estail {

Sample shift_sample(std::vector<double> values, ShiftMode mode) {
  if (values.empty()) throw DomainError("sample is empty");

  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i])) bad.push_back(i + 1);
  if (!bad.empty()) {
    auto what = fmt::format("non-finite values at positions {}", fmt::join(bad, ", "));
    throw IngestionError(what, std::move(bad));
  }

  Sample s;
  switch (mode.kind) {
    case ShiftMode::Kind::None: s.shift_ = 0.0; break;
    case ShiftMode::Kind::SubtractMin: s.shift_ = *std::min_element(values.begin(), values.end()); break;
    case ShiftMode::Kind::SubtractValue:
      if (!std::isfinite(mode.value)) throw DomainError("shift value must be finite");
      s.shift_ = mode.value;
      break;
  }
  s.values_ = values;
  if (s.shift_ != 0.0)
    for (double& x : s.values_) x -= s.shift_;
  s.raw_ = std::move(values);
  s.sorted_ = s.values_;
  std::sort(s.sorted_.begin(), s.sorted_.end());
  return s;
}

}  // namespace estail
