#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace estail {

/// How to shift observations before testing: the statistic depends on
/// location through ln X_(n), so the shift is explicit and recorded.
struct ShiftMode {
  enum class Kind { None, SubtractMin, SubtractValue };
  Kind kind = Kind::None;
  double value = 0.0;

  static ShiftMode none() { return {}; }
  static ShiftMode subtract_min() { return {Kind::SubtractMin, 0.0}; }
  static ShiftMode subtract_value(double c) { return {Kind::SubtractValue, c}; }
};

/// A validated, finite dataset with its shift bookkeeping.
class Sample {
 public:
  /// Raw observations, in input order.
  std::span<const double> raw() const noexcept { return raw_; }
  /// Observations after the shift, in input order.
  std::span<const double> values() const noexcept { return values_; }
  /// Observations after the shift, ascending.
  std::span<const double> sorted() const noexcept { return sorted_; }
  double shift() const noexcept { return shift_; }
  std::size_t size() const noexcept { return values_.size(); }

  double max() const noexcept { return sorted_.back(); }

 private:
  friend Sample shift_sample(std::vector<double> values, ShiftMode mode);

  std::vector<double> raw_;
  std::vector<double> values_;
  std::vector<double> sorted_;
  double shift_ = 0.0;
};

/// Builds a Sample. Throws DomainError on empty input and IngestionError
/// listing the 1-based positions of any NaN or infinite values.
Sample shift_sample(std::vector<double> values, ShiftMode mode = ShiftMode::none());

}  // namespace estail
