#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace estail {

/// Identifies one variate stream: a simulation seed plus a replicate index.
struct SeedSpec {
  std::uint64_t base_seed = 0;
  std::uint64_t stream_id = 0;
};

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based stream keyed by (base_seed, stream_id). The i-th output of a
/// stream depends only on the seed pair and i, so replicates can be assigned
/// to threads in any order.
///
/// Satisfies UniformRandomBitGenerator, but the samplers below are used
/// instead of <random> distributions so that variates do not depend on the
/// standard library implementation.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(SeedSpec seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1).
  double uniform() noexcept;
  /// Exponential with rate theta, i.e. mean 1/theta.
  double exponential(double theta = 1.0);
  double normal() noexcept;
  /// Gamma(shape, 1).
  double gamma(double shape);
  double student_t(double df);
  double cauchy() noexcept;
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) noexcept;

  SeedSpec seed() const noexcept { return seed_; }

 private:
  void refill() noexcept;

  SeedSpec seed_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace estail
