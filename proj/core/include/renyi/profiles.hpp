#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "renyi/rational.hpp"
#include "renyi/weight_profile.hpp"

namespace renyi {

/// Common denominator of every block-48 value (0, 1/2, 1, 30/47).
inline constexpr std::int64_t kBlock48Denominator = 94;

/// a_1..a_{n_max} of the block-48 construction.
std::vector<double> profile_block48(std::size_t n_max);
ScaledProfile profile_block48_scaled(std::size_t n_max);

/// Block bases k_0 = k_seed, k_{l+1} = ceil(ratio * k_l), continued until
/// 2 k_l >= n_max.
std::vector<std::int64_t> geometric_block_bases(double ratio, std::size_t n_max,
                                                std::int64_t k_seed);

std::vector<double> profile_geometric_blocks(double ratio, std::size_t n_max,
                                             std::int64_t k_seed);
ScaledProfile profile_geometric_blocks_scaled(double ratio, std::size_t n_max,
                                              std::int64_t k_seed);

/// Streaming sums at one checkpoint n.
struct ProfileStats {
  std::size_t n = 0;
  /// sum_{j <= n} a_j
  double running_sum = 0.0;
  /// sum_{k < n} k (n - k) a_k
  double weighted_sum = 0.0;

  double average() const { return running_sum / static_cast<double>(n); }
  /// (6 / n^3) sum k (n - k) a_k
  double normalized_weighted() const;
  /// (6 / (n^3 - n)) sum k (n - k) a_k; equals 1 for the all-ones profile.
  double lsq_weighted() const;

  bool exact = false;
  Rational running_sum_exact;
  Rational weighted_sum_exact;
  Rational average_exact() const;
  Rational normalized_weighted_exact() const;
};

/// One O(max checkpoint) pass producing stats at each checkpoint (in the
/// order given). Rational mode uses exact integer arithmetic and throws
/// RationalOverflowError when the profile has no exact small form.
std::vector<ProfileStats> running_stats(const WeightProfile& profile,
                                        std::span<const std::size_t> checkpoints,
                                        bool rational);

}  // namespace renyi
