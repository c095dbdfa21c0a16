#pragma once
// Reference implementations used only by the tests. Each one is written from
// the defining formula, without calling the library routine it checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace oracle {

/// Bisection on w^q + (1 - w)^q = 2^((1 - q) a) in long double.
inline long double omega(long double q, long double a) {
  const long double target = std::pow(2.0L, (1.0L - q) * a);
  long double lo = 0.0L, hi = 0.5L;
  auto f = [&](long double w) { return std::pow(w, q) + std::pow(1.0L - w, q) - target; };
  // f increases on [0, 1/2] for q < 1 and decreases for q > 1.
  const bool increasing = q < 1.0L;
  for (int i = 0; i < 200; ++i) {
    long double mid = 0.5L * (lo + hi);
    if ((f(mid) < 0.0L) == increasing)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5L * (lo + hi);
}

/// Level-n cell masses, left to right, by repeated splitting: a level-(j-1)
/// cell of mass w has children (1 - w_j) w and w_j w.
inline std::vector<long double> leaf_masses(const std::vector<double>& omegas, std::size_t n) {
  std::vector<long double> cur{1.0L};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<long double> next;
    next.reserve(cur.size() * 2);
    for (long double w : cur) {
      next.push_back((1.0L - omegas[j]) * w);
      next.push_back(omegas[j] * w);
    }
    cur.swap(next);
  }
  return cur;
}

inline long double log_partition(const std::vector<long double>& masses, long double q) {
  long double s = 0.0L;
  for (long double w : masses)
    if (w > 0.0L) s += std::pow(w, q);
  return std::log(s);
}

/// a_k of the block-48 profile read off case by case.
inline double block48(std::size_t k) {
  if (k == 1) return 30.0 / 47.0;
  std::size_t P = 1;
  while (48 * P < k) P *= 48;  // now P < k <= 48 P
  if (k <= 12 * P) return 0.0;
  if (k <= 36 * P) return 1.0;
  return 0.5;
}

/// a_j of the geometric-blocks profile by scanning every block.
inline double geometric(double R, std::int64_t k_seed, std::int64_t j) {
  std::int64_t k = k_seed;
  while (2 * k < j) {
    std::int64_t next = static_cast<std::int64_t>(std::ceil(R * static_cast<double>(k)));
    if (j > 2 * k && j <= k + next) return 0.0;
    if (j > k + next && j <= 2 * next) return 1.0;
    k = next;
  }
  return 0.5;
}

/// Ordinary least-squares slope of y on x.
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  long double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return static_cast<double>(sxy / sxx);
}

/// Max and min slope over all pairs with u_j - u_i >= L, by checking every pair.
struct SecantRange {
  double max = -std::numeric_limits<double>::infinity();
  double min = std::numeric_limits<double>::infinity();
};
inline SecantRange long_secants(const std::vector<double>& u, const std::vector<double>& y,
                                double L) {
  SecantRange r;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      if (u[j] - u[i] >= L - 1e-12 * std::max(1.0, std::abs(u[j]))) {
        double s = (y[j] - y[i]) / (u[j] - u[i]);
        r.max = std::max(r.max, s);
        r.min = std::min(r.min, s);
      }
  return r;
}

/// Smallest A with |y_i - y_j| <= A + B |u_i - u_j| over all pairs.
inline double lipschitz_A(const std::vector<double>& u, const std::vector<double>& y, double B) {
  double A = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      A = std::max(A, std::abs(y[i] - y[j]) - B * std::abs(u[i] - u[j]));
  return A;
}

inline double gauss(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }

/// Closed form of the integral of g^q over the line.
inline double gauss_q_integral(double q) {
  return std::pow(2.0 * M_PI, (1.0 - q) / 2.0) / std::sqrt(q);
}

}  // namespace oracle
