#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "renyi/errors.hpp"
#include "renyi/profiles.hpp"

using namespace renyi;

TEST_SUITE("profiles") {

TEST_CASE("block-48 sequence matches the case-by-case oracle") {
  const std::size_t n = 48 * 48 * 48 + 1000;
  auto a = profile_block48(n);
  auto scaled = profile_block48_scaled(n);
  REQUIRE(a.size() == n);
  CHECK(scaled.denominator == kBlock48Denominator);
  for (std::size_t k = 1; k <= n; ++k) {
    CAPTURE(k);
    REQUIRE(a[k - 1] == oracle::block48(k));
    REQUIRE(static_cast<double>(scaled.numerators[k - 1]) / 94.0 == a[k - 1]);
  }
}

TEST_CASE("block-48 checkpoint averages are exact") {
  std::vector<std::size_t> cps;
  for (std::size_t p = 1; p <= 48 * 48 * 48; p *= 48) cps.insert(cps.end(), {p, 12 * p, 36 * p});
  auto stats = running_stats(WeightProfile::block48(), cps, true);
  const Rational want[] = {Rational(30, 47), Rational(5, 94), Rational(193, 282)};
  for (std::size_t i = 0; i < stats.size(); ++i) {
    CAPTURE(stats[i].n);
    CHECK(stats[i].exact);
    CHECK(stats[i].average_exact() == want[i % 3]);
    CHECK(stats[i].average() == doctest::Approx(want[i % 3].to_double()).epsilon(1e-15));
  }
  // The fixed point that makes the average at 48 match the one at 1.
  CHECK((Rational(30, 47) + Rational(30)) / Rational(48) == Rational(30, 47));
}

TEST_CASE("block-48 best-fit weighting exceeds the secant peak") {
  std::size_t cps[] = {48 * 48 * 48, 48 * 48 * 48 * 48};
  auto stats = running_stats(WeightProfile::block48(), cps, false);
  CHECK(stats[0].normalized_weighted() > 0.70);
  CHECK(stats[1].normalized_weighted() > 0.70);
  CHECK(stats[1].normalized_weighted() < 49.0 / 64.0 + 0.01);
}

TEST_CASE("constant profile closed forms") {
  for (double a : {0.0, 0.25, 0.5, 1.0}) {
    std::size_t cps[] = {1, 2, 10, 1000};
    auto fl = running_stats(WeightProfile::constant(a), cps, false);
    auto ex = running_stats(WeightProfile::constant(a), cps, true);
    for (std::size_t i = 0; i < 4; ++i) {
      double n = static_cast<double>(cps[i]);
      CHECK(fl[i].running_sum == doctest::Approx(n * a));
      CHECK(fl[i].weighted_sum == doctest::Approx(a * (n * n * n - n) / 6.0));
      CHECK(ex[i].running_sum_exact.to_double() == n * a);
      CHECK(ex[i].weighted_sum_exact.to_double() == a * (n * n * n - n) / 6.0);
    }
  }
  std::size_t cps[] = {7, 500};
  for (const auto& s : running_stats(WeightProfile::constant(1.0), cps, false))
    CHECK(s.lsq_weighted() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("rational and floating modes agree on explicit lists") {
  std::vector<double> v{0.5, 0.25, 1.0, 0.0, 0.75, 0.125};
  std::size_t cps[] = {3, 6};
  auto fl = running_stats(WeightProfile::explicit_list(v), cps, false);
  auto ex = running_stats(WeightProfile::explicit_list(v), cps, true);
  for (int i = 0; i < 2; ++i) {
    CHECK(ex[i].running_sum_exact.to_double() == fl[i].running_sum);
    CHECK(ex[i].weighted_sum_exact.to_double() == fl[i].weighted_sum);
  }
  std::size_t two[] = {2};
  CHECK_THROWS_AS(running_stats(WeightProfile::explicit_list({0.1, 0.2}), two, true),
                  RationalOverflowError);
  std::size_t too_far[] = {7};
  CHECK_THROWS_AS(running_stats(WeightProfile::explicit_list(v), too_far, false), DomainError);
}

TEST_CASE("geometric blocks, R = 2") {
  auto a = profile_geometric_blocks(2.0, 100, 1);
  for (std::size_t j = 1; j <= 100; ++j) {
    CAPTURE(j);
    CHECK(a[j - 1] == oracle::geometric(2.0, 1, static_cast<std::int64_t>(j)));
  }
  auto k = geometric_block_bases(2.0, 100, 1);
  REQUIRE(k.size() >= 7);
  CHECK(k[0] == 1);
  CHECK(k[6] == 64);
}

TEST_CASE("geometric blocks with a non-integer ratio") {
  const double R = 1.5;
  auto a = profile_geometric_blocks(R, 5000, 3);
  for (std::size_t j = 1; j <= 5000; ++j)
    REQUIRE(a[j - 1] == oracle::geometric(R, 3, static_cast<std::int64_t>(j)));
  auto k = geometric_block_bases(R, 5000, 3);
  for (std::size_t l = 1; l < k.size(); ++l) CHECK(static_cast<double>(k[l]) >= R * k[l - 1]);
}

TEST_CASE("geometric blocks: averages at the block edges") {
  const std::size_t n = 1 << 16;
  auto k = geometric_block_bases(2.0, n, 1);
  std::vector<std::size_t> at_2k, at_sum;
  for (std::size_t l = 0; l + 1 < k.size(); ++l) {
    if (2 * static_cast<std::size_t>(k[l]) <= n) at_2k.push_back(2 * k[l]);
    if (static_cast<std::size_t>(k[l] + k[l + 1]) <= n) at_sum.push_back(k[l] + k[l + 1]);
  }
  auto wp = WeightProfile::geometric_blocks(2.0, 1);
  for (const auto& s : running_stats(wp, at_2k, true)) CHECK(s.average_exact() == Rational(1, 2));
  auto sums = running_stats(wp, at_sum, true);
  for (std::size_t l = 0; l < sums.size(); ++l)
    CHECK(sums[l].average_exact() == Rational(k[l], k[l] + k[l + 1]));
}

TEST_CASE("profiles are deterministic and validated") {
  auto p = WeightProfile::geometric_blocks(1.7, 2);
  CHECK(p.generate(1000) == p.generate(1000));
  CHECK(p == WeightProfile::geometric_blocks(1.7, 2));
  CHECK_THROWS_AS(WeightProfile::constant(1.5), DomainError);
  CHECK_THROWS_AS(WeightProfile::explicit_list({0.5, -0.1}), DomainError);
  CHECK_THROWS_AS(geometric_block_bases(1.0, 10, 1), DomainError);
  CHECK_THROWS_AS(geometric_block_bases(2.0, 10, 0), DomainError);
  CHECK_THROWS_AS(WeightProfile::explicit_list({0.5}).generate(2), DomainError);
  CHECK(profile_kind_from_string("block-48") == ProfileKind::block48);
  CHECK_THROWS_AS(profile_kind_from_string("cantor"), DomainError);
}

}  // TEST_SUITE
