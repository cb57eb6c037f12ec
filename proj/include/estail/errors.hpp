#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace estail {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The tail statistic needs ln X_(n) > 0.
class MaxNotAboveOne : public Error {
 public:
  explicit MaxNotAboveOne(double max_value);
  double max_value() const noexcept { return max_value_; }

 private:
  double max_value_;
};

class DegenerateSample : public Error {
 public:
  using Error::Error;
};

/// k blocks leave fewer than three observations per block.
class BlockTooSmall : public Error {
 public:
  BlockTooSmall(std::size_t n, std::size_t k);
  std::size_t max_feasible_blocks() const noexcept { return max_blocks_; }

 private:
  std::size_t max_blocks_;
};

/// A per-block failure inside the blocked test, tagged with the block index.
class BlockFailure : public Error {
 public:
  BlockFailure(std::size_t block_index, const std::string& what);
  std::size_t block_index() const noexcept { return block_; }

 private:
  std::size_t block_;
};

/// Non-finite or unparsable input; lines are 1-based.
class IngestionError : public Error {
 public:
  IngestionError(const std::string& what, std::vector<std::size_t> lines);
  const std::vector<std::size_t>& lines() const noexcept { return lines_; }

 private:
  std::vector<std::size_t> lines_;
};

}  // namespace estail
