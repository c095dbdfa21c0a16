#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "renyi/measure.hpp"

namespace renyi {

/// Standard Gaussian g(x) = (2 pi)^-1/2 exp(-x^2 / 2) and its dilations
/// g_eps(x) = eps^-1 g(x / eps).
struct GaussianKernel {
  static double value(double x);
  static double scaled(double eps, double x);
};

/// Composite Simpson with step halving.
struct QuadratureSpec {
  double rel_tol = 1e-6;
  /// Initial step as a fraction of eps.
  double initial_step_factor = 0.125;
  int max_halvings = 16;
  /// Integration domain is [min_pos - R eps, max_pos + R eps] with
  /// R = truncation_sigmas / sqrt(min(q, 1)), so the q-th power of the
  /// Gaussian tail is cut at the same height for every q.
  double truncation_sigmas = 10.0;
};

struct QuadratureResult {
  double value = 0.0;
  double last_rel_change = 0.0;
  int halvings = 0;
  std::size_t evaluations = 0;
};

/// Simpson integration of f over [a, b] starting from step h0 and halving
/// until successive estimates agree to rel_tol. Throws QuadratureError.
QuadratureResult simpson_integrate(const std::function<double(double)>& f, double a,
                                   double b, double h0, double rel_tol,
                                   int max_halvings);

/// sum_i w_i g_eps(x - x_i)
double filtered_density(const DiscretizedMeasure& dm, double eps, double x);

/// I^q(eps) = ||g_eps * mu||_q^q with respect to Lebesgue measure.
/// Requires eps >= 4 * dm.resolution().
QuadratureResult lq_norm_q_detailed(const DiscretizedMeasure& dm, double eps, double q,
                                    const QuadratureSpec& quad = {});
double lq_norm_q(const DiscretizedMeasure& dm, double eps, double q,
                 const QuadratureSpec& quad = {});

/// Bounds of g on the unit windows n + (-1, 1) and the constant C for which
/// C^-1 <= eps^(q-1) I^q(eps) / S^q(eps) <= C.
struct EnvelopeConstants {
  double q = 0.0;
  int radius = 0;
  /// gamma_n = inf g on n + (-1, 1), stored for n = -radius..radius.
  std::vector<double> gamma;
  /// Gamma_n = sup g on n + (-1, 1), stored for n = -radius..radius.
  std::vector<double> Gamma;
  /// Analytic bound on the truncated tail of the Gamma norm that enters C.
  double tail_bound = 0.0;
  /// q > 1: ||Gamma||_1 and ||gamma||_q^q.  q < 1: ||Gamma||_q^q and ||gamma||_1.
  double upper_norm = 0.0;
  double lower_norm = 0.0;
  double C = 0.0;

  double gamma_at(int n) const { return gamma.at(static_cast<std::size_t>(n + radius)); }
  double Gamma_at(int n) const { return Gamma.at(static_cast<std::size_t>(n + radius)); }
};

inline constexpr int kMinEnvelopeRadius = 8;

EnvelopeConstants envelope_constants(double q, int radius = 12);

struct RatioRow {
  double eps = 0.0;
  double ln_eps = 0.0;
  double ln_I = 0.0;
  double ln_S = 0.0;
  /// ln(eps^(q-1) I / S)
  double ln_ratio = 0.0;
  bool within = false;
};

struct RatioReport {
  double q = 0.0;
  double C = 0.0;
  std::size_t depth = 0;
  std::vector<RatioRow> rows;
  bool all_within() const;
  double lower_bound() const { return 1.0 / C; }
  double upper_bound() const { return C; }
};

/// Evaluates eps^(q-1) I / S on a discretization of m at `depth` for each
/// eps and compares against [1/C, C]. Every eps must be >= 4 * 2^-depth.
RatioReport check_ratio_bound(const CascadeMeasure& m, double q,
                              std::span<const double> eps_list, std::size_t depth,
                              const QuadratureSpec& quad = {}, int radius = 12);

struct MonotonicityRow {
  double eps = 0.0;
  double norm = 0.0;  // ||g_eps * mu||_q
};

struct MonotonicityReport {
  double q = 0.0;
  double tolerance = 0.0;
  std::vector<MonotonicityRow> rows;
  std::size_t violations = 0;
  double max_violation = 0.0;  // relative
  bool ok() const noexcept { return violations == 0; }
};

/// ||g_eps * mu||_q is nonincreasing in eps for q > 1 and nondecreasing for
/// q < 1. eps_grid must be increasing.
MonotonicityReport check_monotonicity(const DiscretizedMeasure& dm, double q,
                                      std::span<const double> eps_grid,
                                      double rel_tolerance = 1e-8,
                                      const QuadratureSpec& quad = {1e-11});

/// Quadrature value of integral g_eps.
double kernel_mass(double eps, double rel_tol = 1e-13);

/// (g_eps * g_eta)(x) by quadrature.
double kernel_convolution(double eps, double eta, double x, double rel_tol = 1e-13);

}  // namespace renyi
