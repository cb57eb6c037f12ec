#include "estail/errors.hpp"

#include <fmt/format.h>

namespace estail {

MaxNotAboveOne::MaxNotAboveOne(double max_value)
    : Error(fmt::format("sample maximum {} is not above 1, so ln X_(n) <= 0; shift or rescale "
                        "the data (e.g. --shift min, or a unit change) before testing",
                        max_value)),
      max_value_(max_value) {}

BlockTooSmall::BlockTooSmall(std::size_t n, std::size_t k)
    : Error(fmt::format("{} blocks of a sample of size {} leave fewer than 3 points per block; "
                        "use at most {} blocks",
                        k, n, n / 3)),
      max_blocks_(n / 3) {}

BlockFailure::BlockFailure(std::size_t block_index, const std::string& what)
    : Error(fmt::format("block {}: {}", block_index, what)), block_(block_index) {}

IngestionError::IngestionError(const std::string& what, std::vector<std::size_t> lines)
    : Error(what), lines_(std::move(lines)) {}

}  // namespace estail
