#include "renyi/gaussfilter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "renyi/errors.hpp"
#include "renyi/partition.hpp"

namespace renyi {
namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// Step-halving Simpson on [a, b]. sum_at(x0, step, count) must return
// sum_{i < count} f(x0 + i step) with the points visited in increasing order.
template <class SumAt>
QuadratureResult refine(double a, double b, double h0, double rel_tol, int max_halvings,
                        SumAt&& sum_at) {
  if (!(b > a)) return {};
  if (!(h0 > 0.0)) throw DomainError("quadrature step must be positive");
  std::size_t panels =
      std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil((b - a) / h0)));
  double h = (b - a) / static_cast<double>(panels);

  QuadratureResult out;
  double ends = sum_at(a, b - a, 2);
  double interior = panels > 1 ? sum_at(a + h, h, panels - 1) : 0.0;
  out.evaluations = panels + 1;
  double trap = h * (0.5 * ends + interior);
  double simpson_prev = 0.0;
  bool have_prev = false;

  for (int k = 1; k <= max_halvings; ++k) {
    double mid = sum_at(a + 0.5 * h, h, panels);
    out.evaluations += panels;
    double trap_half = 0.5 * trap + 0.5 * h * mid;
    double simpson = (4.0 * trap_half - trap) / 3.0;
    trap = trap_half;
    h *= 0.5;
    panels *= 2;
    out.halvings = k;
    out.value = simpson;
    if (have_prev) {
      double scale = std::max(std::abs(simpson), std::numeric_limits<double>::min());
      out.last_rel_change = std::abs(simpson - simpson_prev) / scale;
      if (out.last_rel_change < rel_tol) return out;
    }
    simpson_prev = simpson;
    have_prev = true;
  }
  std::ostringstream msg;
  msg.precision(3);
  msg << "quadrature did not converge after " << max_halvings
      << " halvings: last relative change " << out.last_rel_change << ", target "
      << rel_tol << ", " << out.evaluations << " evaluations on [" << a << ", " << b
      << "]";
  throw QuadratureError(msg.str());
}

void check_q(double q) {
  if (!(q > 0.0) || q == 1.0 || !std::isfinite(q))
    throw DomainError("q must be positive and different from 1");
}

double truncation_radius(const QuadratureSpec& quad, double q) {
  return quad.truncation_sigmas / std::sqrt(std::min(q, 1.0));
}

}  // namespace

double GaussianKernel::value(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double GaussianKernel::scaled(double eps, double x) { return value(x / eps) / eps; }

QuadratureResult simpson_integrate(const std::function<double(double)>& f, double a,
                                   double b, double h0, double rel_tol,
                                   int max_halvings) {
  return refine(a, b, h0, rel_tol, max_halvings,
                [&](double x0, double step, std::size_t count) {
                  double s = 0.0;
                  for (std::size_t i = 0; i < count; ++i)
                    s += f(x0 + static_cast<double>(i) * step);
                  return s;
                });
}

double filtered_density(const DiscretizedMeasure& dm, double eps, double x) {
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  double s = 0.0;
  for (const Atom& a : dm.atoms()) s += a.weight * GaussianKernel::scaled(eps, x - a.position);
  return s;
}

QuadratureResult lq_norm_q_detailed(const DiscretizedMeasure& dm, double eps, double q,
                                    const QuadratureSpec& quad) {
  check_q(q);
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  if (dm.empty()) throw DomainError("lq_norm_q needs a nonempty measure");
  if (eps < kBucketGuardFactor * dm.resolution()) {
    std::ostringstream msg;
    msg << "eps " << eps << " is below 4 x resolution " << dm.resolution();
    throw PrecisionError(msg.str());
  }

  std::vector<Atom> atoms;
  atoms.reserve(dm.size());
  for (const Atom& a : dm.atoms())
    if (a.weight > 0.0) atoms.push_back(a);
  if (atoms.empty()) return {};

  const double radius = truncation_radius(quad, q) * eps;
  const double lo = atoms.front().position - radius;
  const double hi = atoms.back().position + radius;
  const double inv_eps = 1.0 / eps;

  auto sum_at = [&](double x0, double step, std::size_t count) {
    std::size_t first = 0;
    double total = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      double x = x0 + static_cast<double>(i) * step;
      while (first < atoms.size() && atoms[first].position < x - radius) ++first;
      double density = 0.0;
      for (std::size_t j = first; j < atoms.size() && atoms[j].position <= x + radius; ++j) {
        double z = (x - atoms[j].position) * inv_eps;
        density += atoms[j].weight * std::exp(-0.5 * z * z);
      }
      density *= kInvSqrt2Pi * inv_eps;
      if (density > 0.0) total += std::pow(density, q);
    }
    return total;
  };
  return refine(lo, hi, quad.initial_step_factor * eps, quad.rel_tol, quad.max_halvings,
                sum_at);
}

double lq_norm_q(const DiscretizedMeasure& dm, double eps, double q,
                 const QuadratureSpec& quad) {
  return lq_norm_q_detailed(dm, eps, q, quad).value;
}

EnvelopeConstants envelope_constants(double q, int radius) {
  check_q(q);
  if (radius < kMinEnvelopeRadius)
    throw DomainError("envelope radius must be at least 8");

  EnvelopeConstants e;
  e.q = q;
  e.radius = radius;
  for (int n = -radius; n <= radius; ++n) {
    int m = std::abs(n);
    e.gamma.push_back(GaussianKernel::value(m + 1.0));
    e.Gamma.push_back(GaussianKernel::value(std::max(m - 1, 0)));
  }

  // Terms beyond the radius: sum_{|n| > r} Gamma_n^p <= 2 g(r-1)^p / (1 - rho^p)
  // with rho = g(r) / g(r-1) bounding every later ratio. The gamma norm is
  // only ever truncated, which shrinks it and so makes C larger.
  auto tail = [&](double p) {
    double g0 = GaussianKernel::value(radius - 1.0);
    double rho = GaussianKernel::value(static_cast<double>(radius)) / g0;
    return 2.0 * std::pow(g0, p) / (1.0 - std::pow(rho, p));
  };
  auto sum_pow = [](const std::vector<double>& v, double p) {
    double s = 0.0;
    for (double x : v) s += std::pow(x, p);
    return s;
  };

  if (q > 1.0) {
    e.tail_bound = tail(1.0);
    e.upper_norm = sum_pow(e.Gamma, 1.0) + e.tail_bound;
    e.lower_norm = sum_pow(e.gamma, q);
    e.C = std::max(std::pow(e.upper_norm, q), 1.0 / e.lower_norm);
  } else {
    e.tail_bound = tail(q);
    e.upper_norm = sum_pow(e.Gamma, q) + e.tail_bound;
    e.lower_norm = sum_pow(e.gamma, 1.0);
    e.C = std::max(e.upper_norm, std::pow(e.lower_norm, -q));
  }
  return e;
}

bool RatioReport::all_within() const {
  return std::all_of(rows.begin(), rows.end(), [](const RatioRow& r) { return r.within; });
}

RatioReport check_ratio_bound(const CascadeMeasure& m, double q,
                              std::span<const double> eps_list, std::size_t depth,
                              const QuadratureSpec& quad, int radius) {
  check_q(q);
  if (depth < 1 || depth > m.depth()) throw DomainError("depth outside 1..build depth");
  RatioReport report;
  report.q = q;
  report.depth = depth;
  report.C = envelope_constants(q, radius).C;
  const double ln_C = std::log(report.C);

  DiscretizedMeasure dm = discretize(m, depth);
  for (double eps : eps_list) {
    RatioRow row;
    row.eps = eps;
    row.ln_eps = std::log(eps);
    row.ln_I = std::log(lq_norm_q(dm, eps, q, quad));

    // Exact path when eps is a dyadic scale the cascade resolves.
    double level = -std::log2(eps);
    double n = std::round(level);
    bool dyadic = std::abs(level - n) < 1e-12 && n >= 0 &&
                  n <= static_cast<double>(depth) && std::ldexp(1.0, -static_cast<int>(n)) == eps;
    if (dyadic && q == m.build_q())
      row.ln_S = partition_exact_dyadic(m, static_cast<std::size_t>(n));
    else
      row.ln_S = partition_bucket(dm, eps, q);

    row.ln_ratio = (q - 1.0) * row.ln_eps + row.ln_I - row.ln_S;
    row.within = std::abs(row.ln_ratio) <= ln_C;
    report.rows.push_back(row);
  }
  return report;
}

MonotonicityReport check_monotonicity(const DiscretizedMeasure& dm, double q,
                                      std::span<const double> eps_grid,
                                      double rel_tolerance, const QuadratureSpec& quad) {
  check_q(q);
  for (std::size_t i = 1; i < eps_grid.size(); ++i)
    if (!(eps_grid[i] > eps_grid[i - 1])) throw DomainError("eps grid must be increasing");

  MonotonicityReport report;
  report.q = q;
  report.tolerance = rel_tolerance;
  for (double eps : eps_grid)
    report.rows.push_back({eps, std::pow(lq_norm_q(dm, eps, q, quad), 1.0 / q)});

  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    double prev = report.rows[i - 1].norm;
    double cur = report.rows[i].norm;
    // q > 1: the norm may not grow with eps; q < 1: it may not shrink.
    double excess = (q > 1.0 ? cur - prev : prev - cur) / prev;
    if (excess > rel_tolerance) {
      ++report.violations;
      report.max_violation = std::max(report.max_violation, excess);
    }
  }
  return report;
}

double kernel_mass(double eps, double rel_tol) {
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  auto f = [eps](double x) { return GaussianKernel::scaled(eps, x); };
  return simpson_integrate(f, -12.0 * eps, 12.0 * eps, eps / 8.0, rel_tol, 20).value;
}

double kernel_convolution(double eps, double eta, double x, double rel_tol) {
  if (!(eps > 0.0) || !(eta > 0.0)) throw DomainError("kernel widths must be positive");
  auto f = [&](double y) {
    return GaussianKernel::scaled(eps, x - y) * GaussianKernel::scaled(eta, y);
  };
  double w = 12.0 * std::max(eps, eta);
  double a = std::min(0.0, x) - w;
  double b = std::max(0.0, x) + w;
  return simpson_integrate(f, a, b, std::min(eps, eta) / 8.0, rel_tol, 20).value;
}

}  // namespace renyi
