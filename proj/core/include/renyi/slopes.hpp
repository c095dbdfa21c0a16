#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "renyi/measure.hpp"
#include "renyi/partition.hpp"

namespace renyi {

// Conventions used throughout this header:
//   rho(t) = ln S(e^{-t}),  t = -ln eps measured from the first table row.
// Raw slopes are slopes of ln S against ln eps (>= 0 for q > 1, <= 0 for
// q < 1). Dividing a raw slope by (q - 1) gives a dimension in [0, 1].

enum class SlopeMethod {
  secant,
  sequence,
  lsq_continuous,
  lsq_discrete_v1,
  lsq_discrete_v2,
  lsq_discrete_v3,
  lsq_discrete_v4,
  matuszewska_upper,
  matuszewska_lower,
};

std::string to_string(SlopeMethod method);

struct SlopeFit {
  SlopeMethod method = SlopeMethod::secant;
  /// x for the continuous fit, n for the discrete fit, L for Matuszewska.
  double window = 0.0;
  /// Grid base v of the discrete fit.
  double grid_base = 2.0;
  double q = 0.0;
  /// Slope of ln S against ln eps.
  double slope = 0.0;
  /// Value of the fitted line at t = 0 (least-squares fits only).
  double intercept = 0.0;
  bool has_intercept = false;

  double dimension() const { return slope / (q - 1.0); }
};

/// ln S(v^-n) / ((q - 1) ln v^-n) from the row at ln eps = -n ln v.
/// For cascade tables at the build q this is the running average of a_j.
double secant_estimate(const PartitionTable& t, std::size_t n, double v = 2.0);

/// Secant dimension ln S / ((q - 1) ln eps) of one row.
double secant_at_row(const PartitionTable& t, std::size_t row);

struct SequenceEstimate {
  /// Secant dimensions along the mapped subsequence, in order.
  std::vector<double> values;
  std::vector<std::size_t> rows;
  double liminf = 0.0;
  double limsup = 0.0;
  std::size_t tail_terms = 0;
  /// max |ln eps_{n+1} / ln eps_n - 1| over the tail.
  double ratio_deviation = 0.0;
  /// Non-empty when the ratio condition looks violated; the estimate is still
  /// returned because that is exactly the case worth inspecting.
  std::string warning;
};

/// Maps each ln eps_n (decreasing) to the nearest row and returns the
/// inf/sup of the secant dimensions over the last `tail` terms. Takes ln eps
/// because the interesting sequences underflow double long before their logs
/// do. Needs at least 3 terms inside the table.
SequenceEstimate sequence_estimate(const PartitionTable& t,
                                   std::span<const double> ln_eps_seq,
                                   std::size_t tail = 5,
                                   double ratio_warn_threshold = 0.1);

/// Continuous least-squares slope over t in [0, x] with rho interpolated
/// linearly between rows. The integral is exact for that interpolant.
SlopeFit lsq_continuous(const PartitionTable& t, double x);

/// Discrete least-squares slope through rows eps = v^-k, k = 0..n-1.
/// The four variants are algebraically equal and computed independently.
SlopeFit lsq_discrete(const PartitionTable& t, std::size_t n, double v = 2.0,
                      int variant = 1);

/// Same four formulas on a raw sequence rho_0..rho_{n-1} at spacing ln v.
double lsq_discrete_values(std::span<const double> rho, double v, int variant);

struct GapRow {
  std::size_t n = 0;
  double x = 0.0;
  double m_x = 0.0;
  double m_tilde = 0.0;
  double gap = 0.0;
  double scaled_gap = 0.0;  // gap * n
};

struct GapReport {
  double v = 2.0;
  std::vector<GapRow> rows;
  double max_scaled = 0.0;
  double median_scaled = 0.0;
  /// max / median of gap * n; +inf when the median is zero but not the max.
  double ratio = 0.0;
  bool bounded = false;
};

/// Compares m_x at x = n ln v with the discrete slope m~_n for each n and
/// checks that gap * n stays bounded (max/median < 10). Gaps that are all
/// below 1e-9 count as bounded.
GapReport lsq_gap_check(const PartitionTable& t, double v,
                        std::span<const std::size_t> n_list);

struct NearlyLipschitz {
  double A_hat = 0.0;
  double B = 0.0;
};

/// Smallest A with |rho(x) - rho(y)| <= A + B |x - y| over all row pairs,
/// for B = |q - 1|. Linear time.
NearlyLipschitz nearly_lipschitz_constants(const PartitionTable& t);

struct MatuszewskaFit {
  double L = 0.0;
  double tail_fraction = 0.0;
  /// Sup and inf of the secant slopes of ln f against ln x, where
  /// f(x) = S(1/x)^(1/(1-q)), over pairs at separation >= L in the tail.
  double alpha = 0.0;
  double beta = 0.0;
  /// u = -ln eps range of the tail window.
  double u_lo = 0.0;
  double u_hi = 0.0;
};

/// Long-secant estimate of the Matuszewska indices. The tail window is the
/// last tail_fraction of the table on the -ln eps scale and must span at
/// least 3L. Runs in O(n log n) using a lower hull of the eligible points.
MatuszewskaFit matuszewska_estimate(const PartitionTable& t, double L,
                                    double tail_fraction = 0.5);

std::vector<MatuszewskaFit> matuszewska_sweep(const PartitionTable& t,
                                              std::span<const double> windows,
                                              double tail_fraction = 0.5);

/// Default L values: tail span times 1/64, 1/32, 1/16, 1/8.
std::vector<double> default_matuszewska_windows(const PartitionTable& t,
                                                double tail_fraction);

struct DimensionConfig {
  /// Fraction of the scales (on the -ln eps axis) that forms the tail.
  double tail_fraction = 0.5;
  /// Matuszewska windows; empty selects the default sweep.
  std::vector<double> matuszewska_windows;
  /// Slack for 0 <= D-- <= D- <= D+ <= D++ <= 1.
  double ordering_tolerance = 0.06;
};

struct DimensionReport {
  double q = 0.0;
  std::size_t depth = 0;
  std::string source;
  DimensionConfig config;
  std::size_t tail_start = 0;  // first level of the tail
  double D_minus = 0.0;
  double D_plus = 0.0;
  double D_mm = 0.0;
  double D_pp = 0.0;
  double bestfit_liminf = 0.0;
  double bestfit_limsup = 0.0;
  double A_hat = 0.0;
  double B = 0.0;
  /// Envelope constant of the Gaussian ratio bound at this q.
  double C = 0.0;
  /// Largest |ln S(2^-n-1) - ln S(2^-n)|.
  double E = 0.0;
  std::vector<MatuszewskaFit> sweep;
  bool ordering_ok = false;
};

/// Runs every estimator on the dyadic table of m up to `depth` at q. Uses the
/// closed form when q is the build q and enumeration otherwise. Throws
/// InvariantError if the dimension ordering fails beyond the tolerance.
DimensionReport dimension_report(const CascadeMeasure& m, double q, std::size_t depth,
                                 const DimensionConfig& config = {});

struct ConvolutionReport {
  double q = 0.0;
  double r = 0.0;
  double s = 0.0;
  std::size_t depth = 0;
  std::size_t n_lo = 0;
  std::size_t n_hi = 0;
  double D_conv = 0.0;   // D_q(mu * nu)
  double D_r_mu = 0.0;
  double D_s_nu = 0.0;
  double weight_r = 0.0;  // q (r - 1) / (r (q - 1))
  double weight_s = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool holds = false;
};

/// Finite-depth check of D_q(mu * nu) >= w_r D_r(mu) + w_s D_s(nu) for q > 1
/// with r, s > 1 and for q < 1 with r, s < 1. Each D is the secant between
/// levels 2 and depth - 3.
/// Needs 1/q + 1 = 1/r + 1/s and depth <= 12.
ConvolutionReport convolution_bound_check(const CascadeMeasure& m1,
                                          const CascadeMeasure& m2, double q, double r,
                                          double s, std::size_t depth,
                                          double tolerance = 0.05);

}  // namespace renyi
