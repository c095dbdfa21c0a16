#include "renyi/profiles.hpp"

#include <algorithm>
#include <cmath>

#include "renyi/errors.hpp"

namespace renyi {

namespace {

// Numerators over 94 for a_1 = 30/47, 0, 1, 1/2.
constexpr std::int64_t kBlock48First = 60;
constexpr std::int64_t kZero = 0;
constexpr std::int64_t kOne = 94;
constexpr std::int64_t kHalf = 47;

std::vector<std::int64_t> block48_numerators(std::size_t n_max) {
  std::vector<std::int64_t> out;
  out.reserve(n_max);
  if (n_max == 0) return out;
  out.push_back(kBlock48First);
  // Blocks (P, 12P], (12P, 36P], (36P, 48P] for P = 48^p, p >= 0.
  std::size_t period = 1;
  std::size_t k = 2;
  while (k <= n_max) {
    std::size_t zeros_end = 12 * period;
    std::size_t ones_end = 36 * period;
    std::size_t halves_end = 48 * period;
    for (; k <= n_max && k <= zeros_end; ++k) out.push_back(kZero);
    for (; k <= n_max && k <= ones_end; ++k) out.push_back(kOne);
    for (; k <= n_max && k <= halves_end; ++k) out.push_back(kHalf);
    period *= 48;
  }
  return out;
}

// Numerators over 2: a_j in {0, 1/2, 1}.
std::vector<std::int64_t> geometric_numerators(double ratio, std::size_t n_max,
                                               std::int64_t k_seed) {
  std::vector<std::int64_t> out(n_max, 1);
  auto bases = geometric_block_bases(ratio, n_max, k_seed);
  for (std::size_t l = 0; l + 1 < bases.size(); ++l) {
    auto k0 = static_cast<std::size_t>(bases[l]);
    auto k1 = static_cast<std::size_t>(bases[l + 1]);
    // j is 1-based; out[j - 1] holds a_j.
    for (std::size_t j = 2 * k0 + 1; j <= k0 + k1 && j <= n_max; ++j) out[j - 1] = 0;
    for (std::size_t j = k0 + k1 + 1; j <= 2 * k1 && j <= n_max; ++j) out[j - 1] = 2;
  }
  return out;
}

}  // namespace

std::vector<double> profile_block48(std::size_t n_max) {
  if (n_max < 1) throw DomainError("profile_block48 requires n_max >= 1");
  auto nums = block48_numerators(n_max);
  std::vector<double> out(nums.size());
  for (std::size_t i = 0; i < nums.size(); ++i) {
    switch (nums[i]) {
      case kBlock48First: out[i] = 30.0 / 47.0; break;
      case kOne: out[i] = 1.0; break;
      case kHalf: out[i] = 0.5; break;
      default: out[i] = 0.0; break;
    }
  }
  return out;
}

ScaledProfile profile_block48_scaled(std::size_t n_max) {
  if (n_max < 1) throw DomainError("profile_block48 requires n_max >= 1");
  return ScaledProfile{kBlock48Denominator, block48_numerators(n_max)};
}

std::vector<std::int64_t> geometric_block_bases(double ratio, std::size_t n_max,
                                                std::int64_t k_seed) {
  if (!(ratio > 1.0)) throw DomainError("geometric-blocks ratio must be > 1");
  if (k_seed < 1) throw DomainError("geometric-blocks k_seed must be >= 1");
  std::vector<std::int64_t> bases{k_seed};
  while (2 * static_cast<std::size_t>(bases.back()) < n_max) {
    double next = std::ceil(ratio * static_cast<double>(bases.back()));
    auto k = static_cast<std::int64_t>(next);
    if (k <= bases.back()) k = bases.back() + 1;
    bases.push_back(k);
  }
  return bases;
}

std::vector<double> profile_geometric_blocks(double ratio, std::size_t n_max,
                                             std::int64_t k_seed) {
  auto nums = geometric_numerators(ratio, n_max, k_seed);
  std::vector<double> out(nums.size());
  for (std::size_t i = 0; i < nums.size(); ++i) out[i] = 0.5 * static_cast<double>(nums[i]);
  return out;
}

ScaledProfile profile_geometric_blocks_scaled(double ratio, std::size_t n_max,
                                              std::int64_t k_seed) {
  return ScaledProfile{2, geometric_numerators(ratio, n_max, k_seed)};
}

// ---------------------------------------------------------------------------

double ProfileStats::normalized_weighted() const {
  double nd = static_cast<double>(n);
  return 6.0 * weighted_sum / (nd * nd * nd);
}

double ProfileStats::lsq_weighted() const {
  double nd = static_cast<double>(n);
  return 6.0 * weighted_sum / (nd * nd * nd - nd);
}

Rational ProfileStats::average_exact() const {
  return running_sum_exact / Rational(static_cast<std::int64_t>(n));
}

Rational ProfileStats::normalized_weighted_exact() const {
  Rational::Int nn = static_cast<Rational::Int>(n);
  return weighted_sum_exact * Rational(6, checked_mul(checked_mul(nn, nn), nn));
}

std::vector<ProfileStats> running_stats(const WeightProfile& profile,
                                        std::span<const std::size_t> checkpoints,
                                        bool rational) {
  std::vector<ProfileStats> out(checkpoints.size());
  if (checkpoints.empty()) return out;
  std::size_t n_max = *std::max_element(checkpoints.begin(), checkpoints.end());
  if (std::find(checkpoints.begin(), checkpoints.end(), std::size_t{0}) != checkpoints.end())
    throw DomainError("running_stats checkpoints must be >= 1");
  if (auto len = profile.length(); len && n_max > *len)
    throw DomainError("checkpoint beyond profile length");

  // Visit checkpoints in increasing order while streaming once.
  std::vector<std::size_t> order(checkpoints.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return checkpoints[a] < checkpoints[b]; });

  // sum_{k<n} k (n-k) a_k = n * sum_{k<n} k a_k - sum_{k<n} k^2 a_k
  if (rational) {
    ScaledProfile scaled = profile.generate_scaled(n_max);
    const Rational::Int den = scaled.denominator;
    // Guard: n^3 * max numerator must fit comfortably in 127 bits.
    Rational::Int nn = static_cast<Rational::Int>(n_max);
    checked_mul(checked_mul(checked_mul(nn, nn), nn), checked_mul(den, 8));

    Rational::Int s0 = 0, s1 = 0, s2 = 0;  // sums over k < current index
    std::size_t next = 0;
    for (std::size_t k = 1; k <= n_max && next < order.size(); ++k) {
      // Stats at n = k use s1, s2 over k' < k and s0 over k' <= k.
      Rational::Int ak = scaled.numerators[k - 1];
      Rational::Int kk = static_cast<Rational::Int>(k);
      while (next < order.size() && checkpoints[order[next]] == k) {
        ProfileStats& st = out[order[next]];
        st.n = k;
        st.exact = true;
        st.running_sum_exact = Rational(s0 + ak, den);
        st.weighted_sum_exact = Rational(checked_add(checked_mul(kk, s1), -s2), den);
        st.running_sum = st.running_sum_exact.to_double();
        st.weighted_sum = st.weighted_sum_exact.to_double();
        ++next;
      }
      s0 += ak;
      s1 = checked_add(s1, checked_mul(kk, ak));
      s2 = checked_add(s2, checked_mul(checked_mul(kk, kk), ak));
    }
    return out;
  }

  std::vector<double> a = profile.generate(n_max);
  long double s0 = 0, s1 = 0, s2 = 0;
  std::size_t next = 0;
  for (std::size_t k = 1; k <= n_max && next < order.size(); ++k) {
    long double ak = a[k - 1];
    long double kk = static_cast<long double>(k);
    while (next < order.size() && checkpoints[order[next]] == k) {
      ProfileStats& st = out[order[next]];
      st.n = k;
      st.running_sum = static_cast<double>(s0 + ak);
      st.weighted_sum = static_cast<double>(kk * s1 - s2);
      ++next;
    }
    s0 += ak;
    s1 += kk * ak;
    s2 += kk * kk * ak;
  }
  return out;
}

}  // namespace renyi
