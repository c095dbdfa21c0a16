#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace renyi {

enum class ProfileKind { constant, block48, geometric_blocks, explicit_list };

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& name);

/// Exact representation of a_1..a_n as integer numerators over one common
/// denominator. Used by the rational statistics path.
struct ScaledProfile {
  std::int64_t denominator = 1;
  std::vector<std::int64_t> numerators;
};

/// Rule producing the sequence a_1, a_2, ... in [0, 1] that drives a cascade.
/// Generation is deterministic; two equal profiles give equal sequences.
class WeightProfile {
 public:
  static WeightProfile constant(double a);
  /// a_1 = 30/47 followed by the 0 / 1 / 1/2 blocks on (48^p, 12*48^p],
  /// (12*48^p, 36*48^p], (36*48^p, 48^(p+1)] for p >= 0.
  static WeightProfile block48();
  /// Default 1/2 with a 0-block on (2k_l, k_l + k_{l+1}] and a 1-block on
  /// (k_l + k_{l+1}, 2k_{l+1}], where k_0 = k_seed and k_{l+1} = ceil(R k_l).
  static WeightProfile geometric_blocks(double ratio, std::int64_t k_seed);
  static WeightProfile explicit_list(std::vector<double> values);

  ProfileKind kind() const noexcept { return kind_; }
  double constant_value() const noexcept { return constant_; }
  double ratio() const noexcept { return ratio_; }
  std::int64_t k_seed() const noexcept { return k_seed_; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Number of terms available; nullopt for unbounded kinds.
  std::optional<std::size_t> length() const noexcept;

  /// a_1..a_n (index 0 holds a_1). Throws DomainError if the profile is
  /// shorter than n.
  std::vector<double> generate(std::size_t n) const;

  /// Exact integer form of generate(n). Throws RationalOverflowError when a
  /// value has no small common denominator.
  ScaledProfile generate_scaled(std::size_t n) const;

  std::string describe() const;

  friend bool operator==(const WeightProfile&, const WeightProfile&) = default;

 private:
  WeightProfile() = default;

  ProfileKind kind_ = ProfileKind::constant;
  double constant_ = 0.0;
  double ratio_ = 0.0;
  std::int64_t k_seed_ = 0;
  std::vector<double> values_;
};

}  // namespace renyi
