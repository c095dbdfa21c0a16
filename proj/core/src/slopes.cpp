#include "renyi/slopes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "renyi/errors.hpp"
#include "renyi/gaussfilter.hpp"

namespace renyi {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// rho_k = ln S(v^-k) for k = 0..n-1. Tables built on the same grid store
// them at index k, which is checked first; otherwise each row is looked up.
std::vector<double> gather_grid(const PartitionTable& t, std::size_t n, double v) {
  const double ln_v = std::log(v);
  std::vector<double> rho(n);
  bool direct = t.size() >= n;
  for (std::size_t k = 0; direct && k < n; ++k) {
    double want = -static_cast<double>(k) * ln_v;
    if (std::abs(t.row(k).ln_eps - want) > 1e-9 * std::max(1.0, std::abs(want)))
      direct = false;
    else
      rho[k] = t.row(k).ln_S;
  }
  if (direct) return rho;
  for (std::size_t k = 0; k < n; ++k) {
    auto i = t.find_row(-static_cast<double>(k) * ln_v);
    if (!i) {
      std::ostringstream msg;
      msg << "table has no row at eps = " << v << "^-" << k;
      throw DomainError(msg.str());
    }
    rho[k] = t.row(*i).ln_S;
  }
  return rho;
}

double row_u(const PartitionTable& t, std::size_t i) { return -t.row(i).ln_eps; }

struct Point {
  double u;
  double y;
};

double slope(const Point& a, const Point& b) { return (b.y - a.y) / (b.u - a.u); }

// Max over pairs i < j with u_j - u_i >= L of the secant slope. Points are
// sorted by u. For a fixed right end j the best left end lies on the lower
// convex hull of the eligible points, and along that hull the slope to j is
// unimodal, so a binary search finds it.
double max_long_secant(const std::vector<Point>& pts, double L) {
  std::vector<Point> hull;
  std::size_t next = 0;
  double best = -kInf;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const double reach = pts[j].u - L + 1e-12 * std::max(1.0, std::abs(pts[j].u));
    while (next < j && pts[next].u <= reach) {
      const Point& p = pts[next++];
      while (hull.size() >= 2) {
        const Point& o = hull[hull.size() - 2];
        const Point& a = hull.back();
        double cross = (a.u - o.u) * (p.y - o.y) - (a.y - o.y) * (p.u - o.u);
        if (cross > 0.0) break;
        hull.pop_back();
      }
      hull.push_back(p);
    }
    if (hull.empty()) continue;
    std::size_t lo = 0;
    std::size_t hi = hull.size() - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (slope(hull[mid], pts[j]) < slope(hull[mid + 1], pts[j]))
        lo = mid + 1;
      else
        hi = mid;
    }
    best = std::max(best, slope(hull[lo], pts[j]));
  }
  return best;
}

void require_tail_fraction(double f) {
  if (!(f > 0.0 && f <= 1.0)) throw DomainError("tail_fraction must lie in (0, 1]");
}

}  // namespace

std::string to_string(SlopeMethod method) {
  switch (method) {
    case SlopeMethod::secant: return "secant";
    case SlopeMethod::sequence: return "sequence";
    case SlopeMethod::lsq_continuous: return "lsq_continuous";
    case SlopeMethod::lsq_discrete_v1: return "lsq_discrete_v1";
    case SlopeMethod::lsq_discrete_v2: return "lsq_discrete_v2";
    case SlopeMethod::lsq_discrete_v3: return "lsq_discrete_v3";
    case SlopeMethod::lsq_discrete_v4: return "lsq_discrete_v4";
    case SlopeMethod::matuszewska_upper: return "matuszewska_upper";
    case SlopeMethod::matuszewska_lower: return "matuszewska_lower";
  }
  return "unknown";
}

double secant_at_row(const PartitionTable& t, std::size_t row) {
  const PartitionRow& r = t.row(row);
  if (r.ln_eps == 0.0) throw DomainError("secant through eps = 1 is undefined");
  return r.ln_S / ((t.q() - 1.0) * r.ln_eps);
}

double secant_estimate(const PartitionTable& t, std::size_t n, double v) {
  if (n == 0) throw DomainError("secant at n = 0 divides by ln 1 = 0");
  if (!(v > 1.0)) throw DomainError("grid base must exceed 1");
  auto i = t.find_row(-static_cast<double>(n) * std::log(v));
  if (!i) throw DomainError("table has no row at level " + std::to_string(n));
  return secant_at_row(t, *i);
}

SequenceEstimate sequence_estimate(const PartitionTable& t,
                                   std::span<const double> ln_eps_seq, std::size_t tail,
                                   double ratio_warn_threshold) {
  if (t.size() < 2) throw DomainError("sequence estimate needs a table with rows");
  const double first = t.row(0).ln_eps;
  const double last = t.rows().back().ln_eps;
  const double half_step = 0.5 * std::abs(t.row(1).ln_eps - first);

  SequenceEstimate out;
  std::vector<double> used;
  for (double le : ln_eps_seq) {
    if (le >= 0.0 || le > first + half_step || le < last - half_step) continue;
    std::size_t i = t.nearest_row(le);
    if (t.row(i).ln_eps == 0.0) continue;
    out.rows.push_back(i);
    out.values.push_back(secant_at_row(t, i));
    used.push_back(le);
  }
  if (out.values.size() < 3)
    throw DomainError("sequence estimate needs at least 3 terms inside the table");

  out.tail_terms = std::min(std::max<std::size_t>(tail, 1), out.values.size());
  std::size_t start = out.values.size() - out.tail_terms;
  out.liminf = *std::min_element(out.values.begin() + start, out.values.end());
  out.limsup = *std::max_element(out.values.begin() + start, out.values.end());
  for (std::size_t i = std::max<std::size_t>(start, 1); i < used.size(); ++i)
    out.ratio_deviation = std::max(out.ratio_deviation, std::abs(used[i] / used[i - 1] - 1.0));
  if (out.ratio_deviation > ratio_warn_threshold) {
    std::ostringstream msg;
    msg << "ln eps_{n+1} / ln eps_n departs from 1 by " << out.ratio_deviation
        << "; accumulation points may differ from the full net";
    out.warning = msg.str();
  }
  return out;
}

SlopeFit lsq_continuous(const PartitionTable& t, double x) {
  if (!(x > 0.0)) throw DomainError("continuous window x must be positive");
  if (t.size() < 2) throw DomainError("continuous fit needs at least 2 rows");
  const double t0 = t.row(0).ln_eps;
  const double t_end = t0 - t.rows().back().ln_eps;
  if (x > t_end * (1.0 + 1e-12)) throw DomainError("window x exceeds the table range");

  // Both integrands are polynomials of degree <= 2 on each segment, so
  // Simpson's rule is exact there.
  long double moment = 0.0L;  // int (2t - x) rho
  long double mass = 0.0L;    // int rho
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    double a = t0 - t.row(i).ln_eps;
    if (a >= x) break;
    double b = t0 - t.row(i + 1).ln_eps;
    double ra = t.row(i).ln_S;
    double rb = t.row(i + 1).ln_S;
    if (b > x) {
      rb = ra + (rb - ra) * (x - a) / (b - a);
      b = x;
    }
    double m = 0.5 * (a + b);
    double rm = 0.5 * (ra + rb);
    double h = b - a;
    moment += h / 6.0 * ((2 * a - x) * ra + 4 * (2 * m - x) * rm + (2 * b - x) * rb);
    mass += h * 0.5 * (ra + rb);
  }
  double beta = static_cast<double>(6.0L * moment / (static_cast<long double>(x) * x * x));

  SlopeFit fit;
  fit.method = SlopeMethod::lsq_continuous;
  fit.window = x;
  fit.q = t.q();
  fit.slope = -beta;  // t runs against ln eps
  fit.intercept = static_cast<double>(mass / x) - beta * x / 2.0;
  fit.has_intercept = true;
  return fit;
}

double lsq_discrete_values(std::span<const double> rho, double v, int variant) {
  const std::size_t n = rho.size();
  if (n < 2) throw DomainError("discrete fit needs n >= 2");
  if (!(v > 1.0)) throw DomainError("grid base must exceed 1");
  const long double ln_v = std::log(static_cast<long double>(v));
  const long double nn = static_cast<long double>(n);
  const long double norm = nn * nn * nn - nn;

  long double num = 0.0L;
  long double den = 0.0L;
  switch (variant) {
    case 1:
      for (std::size_t k = 0; k < n; ++k) num += (2.0L * k + 1.0L - nn) * rho[k];
      return static_cast<double>(-6.0L / (norm * ln_v) * num);
    case 2:
      for (std::size_t k = 0; k < n; ++k) {
        long double c = 2.0L * k + 1.0L - nn;
        num += c * rho[k];
        den += c * (-static_cast<long double>(k) * ln_v);
      }
      return static_cast<double>(num / den);
    case 3:
      for (std::size_t k = 1; k < n; ++k)
        num += static_cast<long double>(k) * (nn - k) * (static_cast<long double>(rho[k - 1]) - rho[k]);
      return static_cast<double>(6.0L / (norm * ln_v) * num);
    case 4:
      for (std::size_t k = 1; k < n; ++k) {
        long double w = static_cast<long double>(k) * (nn - k);
        num += w * (static_cast<long double>(rho[k]) - rho[k - 1]);
        den += w * (-ln_v);
      }
      return static_cast<double>(num / den);
    default:
      throw DomainError("lsq_discrete variant must be 1, 2, 3 or 4");
  }
}

SlopeFit lsq_discrete(const PartitionTable& t, std::size_t n, double v, int variant) {
  if (n < 2) throw DomainError("discrete fit needs n >= 2");
  if (variant < 1 || variant > 4) throw DomainError("lsq_discrete variant must be 1..4");
  std::vector<double> rho = gather_grid(t, n, v);
  SlopeFit fit;
  fit.method = static_cast<SlopeMethod>(static_cast<int>(SlopeMethod::lsq_discrete_v1) +
                                        variant - 1);
  fit.window = static_cast<double>(n);
  fit.grid_base = v;
  fit.q = t.q();
  fit.slope = lsq_discrete_values(rho, v, variant);
  return fit;
}

GapReport lsq_gap_check(const PartitionTable& t, double v,
                        std::span<const std::size_t> n_list) {
  GapReport report;
  report.v = v;
  const double ln_v = std::log(v);
  std::vector<double> scaled;
  for (std::size_t n : n_list) {
    GapRow row;
    row.n = n;
    row.x = static_cast<double>(n) * ln_v;
    row.m_x = lsq_continuous(t, row.x).slope;
    row.m_tilde = lsq_discrete(t, n, v, 1).slope;
    row.gap = std::abs(row.m_x - row.m_tilde);
    row.scaled_gap = row.gap * static_cast<double>(n);
    scaled.push_back(row.scaled_gap);
    report.rows.push_back(row);
  }
  if (scaled.empty()) return report;

  report.max_scaled = *std::max_element(scaled.begin(), scaled.end());
  std::vector<double> sorted = scaled;
  std::sort(sorted.begin(), sorted.end());
  std::size_t mid = sorted.size() / 2;
  report.median_scaled =
      sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  if (report.max_scaled <= 1e-9) {
    report.ratio = 1.0;
    report.bounded = true;
  } else {
    report.ratio = report.median_scaled > 0.0 ? report.max_scaled / report.median_scaled : kInf;
    report.bounded = report.ratio < 10.0;
  }
  return report;
}

NearlyLipschitz nearly_lipschitz_constants(const PartitionTable& t) {
  if (t.size() < 2) throw DomainError("nearly-Lipschitz constants need at least 2 rows");
  NearlyLipschitz out;
  out.B = std::abs(t.q() - 1.0);
  // With u increasing along the rows, the pair bound splits into
  //   (rho_j - B u_j) - (rho_i - B u_i)  and  (-rho_j - B u_j) - (-rho_i - B u_i),
  // so running minima of the bracketed terms give the max in one pass.
  double min_up = kInf;
  double min_down = kInf;
  double A = 0.0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    double u = row_u(t, j);
    double rho = t.row(j).ln_S;
    double up = rho - out.B * u;
    double down = -rho - out.B * u;
    if (j > 0) A = std::max({A, up - min_up, down - min_down});
    min_up = std::min(min_up, up);
    min_down = std::min(min_down, down);
  }
  out.A_hat = std::max(A, 0.0);
  return out;
}

MatuszewskaFit matuszewska_estimate(const PartitionTable& t, double L, double tail_fraction) {
  require_tail_fraction(tail_fraction);
  if (!(L > 0.0)) throw DomainError("Matuszewska window L must be positive");
  if (t.size() < 2) throw DomainError("Matuszewska estimate needs at least 2 rows");

  const double u_first = row_u(t, 0);
  const double u_last = row_u(t, t.size() - 1);
  MatuszewskaFit fit;
  fit.L = L;
  fit.tail_fraction = tail_fraction;
  fit.u_hi = u_last;
  fit.u_lo = u_last - tail_fraction * (u_last - u_first);
  if (fit.u_hi - fit.u_lo < 3.0 * L * (1.0 - 1e-12)) {
    std::ostringstream msg;
    msg << "tail window spans " << fit.u_hi - fit.u_lo << " on the ln scale, needs 3L = "
        << 3.0 * L;
    throw DomainError(msg.str());
  }

  // ln f(x) = ln S(1/x) / (1 - q) against ln x = u.
  const double inv = 1.0 / (1.0 - t.q());
  const double slack = 1e-12 * std::max(1.0, std::abs(fit.u_lo));
  std::vector<Point> pts;
  std::vector<Point> flipped;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double u = row_u(t, i);
    if (u < fit.u_lo - slack) continue;
    double y = t.row(i).ln_S * inv;
    pts.push_back({u, y});
    flipped.push_back({u, -y});
  }
  fit.alpha = max_long_secant(pts, L);
  fit.beta = 0.0 - max_long_secant(flipped, L);  // avoids printing -0
  if (!std::isfinite(fit.alpha) || !std::isfinite(fit.beta))
    throw DomainError("no row pair at the requested separation");
  return fit;
}

std::vector<MatuszewskaFit> matuszewska_sweep(const PartitionTable& t,
                                              std::span<const double> windows,
                                              double tail_fraction) {
  std::vector<MatuszewskaFit> out;
  out.reserve(windows.size());
  for (double L : windows) out.push_back(matuszewska_estimate(t, L, tail_fraction));
  return out;
}

std::vector<double> default_matuszewska_windows(const PartitionTable& t,
                                                double tail_fraction) {
  require_tail_fraction(tail_fraction);
  if (t.size() < 2) throw DomainError("Matuszewska sweep needs at least 2 rows");
  double span = tail_fraction * (row_u(t, t.size() - 1) - row_u(t, 0));
  return {span / 64.0, span / 32.0, span / 16.0, span / 8.0};
}

DimensionReport dimension_report(const CascadeMeasure& m, double q, std::size_t depth,
                                 const DimensionConfig& config) {
  require_tail_fraction(config.tail_fraction);
  if (depth < 2 || depth > m.depth()) throw DomainError("depth outside 2..build depth");

  PartitionTable table = q == m.build_q() ? build_table(m, depth, q)
                                          : build_table_enumerated(m, depth, q);
  DimensionReport rep;
  rep.q = q;
  rep.depth = depth;
  rep.source = table.source();
  rep.config = config;

  const double tail_begin = static_cast<double>(depth) * (1.0 - config.tail_fraction);
  rep.tail_start = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(tail_begin - 1e-9)));

  // Secant and best-fit values per level from prefix sums of rho_k and k rho_k.
  const double ln2 = std::numbers::ln2;
  long double sum_rho = 0.0L;
  long double sum_k_rho = 0.0L;
  rep.D_minus = rep.bestfit_liminf = kInf;
  rep.D_plus = rep.bestfit_limsup = -kInf;
  for (std::size_t n = 1; n <= depth; ++n) {
    // Fold in rho_{n-1}; the fit at n uses k = 0..n-1.
    double prev = table.row(n - 1).ln_S;
    sum_rho += prev;
    sum_k_rho += static_cast<long double>(n - 1) * prev;
    rep.E = std::max(rep.E, std::abs(table.row(n).ln_S - prev));
    if (n < rep.tail_start) continue;

    double secant = secant_at_row(table, n);
    rep.D_minus = std::min(rep.D_minus, secant);
    rep.D_plus = std::max(rep.D_plus, secant);

    long double nn = static_cast<long double>(n);
    long double moment = 2.0L * sum_k_rho + (1.0L - nn) * sum_rho;
    double fit = static_cast<double>(-6.0L / ((nn * nn * nn - nn) * ln2) * moment);
    double dim = fit / (q - 1.0);
    rep.bestfit_liminf = std::min(rep.bestfit_liminf, dim);
    rep.bestfit_limsup = std::max(rep.bestfit_limsup, dim);
  }

  std::vector<double> windows = config.matuszewska_windows.empty()
                                    ? default_matuszewska_windows(table, config.tail_fraction)
                                    : config.matuszewska_windows;
  rep.sweep = matuszewska_sweep(table, windows, config.tail_fraction);
  auto widest = std::max_element(rep.sweep.begin(), rep.sweep.end(),
                                 [](const auto& a, const auto& b) { return a.L < b.L; });
  rep.D_mm = widest->beta;
  rep.D_pp = widest->alpha;

  NearlyLipschitz nl = nearly_lipschitz_constants(table);
  rep.A_hat = nl.A_hat;
  rep.B = nl.B;
  rep.C = envelope_constants(q).C;

  const double tol = config.ordering_tolerance;
  rep.ordering_ok = -tol <= rep.D_mm && rep.D_mm <= rep.D_minus + tol &&
                    rep.D_minus <= rep.D_plus + tol && rep.D_plus <= rep.D_pp + tol &&
                    rep.D_pp <= 1.0 + tol;
  if (!rep.ordering_ok) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "dimension ordering 0 <= D-- <= D- <= D+ <= D++ <= 1 fails: D--=" << rep.D_mm
        << " D-=" << rep.D_minus << " D+=" << rep.D_plus << " D++=" << rep.D_pp;
    throw InvariantError(msg.str());
  }
  return rep;
}

ConvolutionReport convolution_bound_check(const CascadeMeasure& m1,
                                          const CascadeMeasure& m2, double q, double r,
                                          double s, std::size_t depth, double tolerance) {
  for (double p : {q, r, s})
    if (!(p > 0.0) || p == 1.0 || !std::isfinite(p))
      throw DomainError("exponents must be positive, finite and != 1");
  if (std::abs(1.0 / q + 1.0 - 1.0 / r - 1.0 / s) > 1e-12)
    throw DomainError("exponents must satisfy 1/q + 1 = 1/r + 1/s");
  if ((q > 1.0) != (r > 1.0) || (q > 1.0) != (s > 1.0))
    throw DomainError("r and s must lie on the same side of 1 as q");
  if (depth < 6 || depth > 12) throw DomainError("convolution check needs depth in 6..12");
  if (depth > m1.depth() || depth > m2.depth())
    throw DomainError("depth exceeds a cascade's build depth");

  ConvolutionReport rep;
  rep.q = q;
  rep.r = r;
  rep.s = s;
  rep.depth = depth;
  rep.tolerance = tolerance;
  // The convolution has resolution 2^(1-depth); the bucket guard then allows
  // scales down to 2^(3-depth).
  rep.n_lo = 2;
  rep.n_hi = depth - 3;
  const double span = -static_cast<double>(rep.n_hi - rep.n_lo) * std::numbers::ln2;

  DiscretizedMeasure conv = convolve(discretize(m1, depth), discretize(m2, depth));
  auto eps = [](std::size_t n) { return std::ldexp(1.0, -static_cast<int>(n)); };
  rep.D_conv = (partition_bucket(conv, eps(rep.n_hi), q) -
                partition_bucket(conv, eps(rep.n_lo), q)) /
               ((q - 1.0) * span);
  rep.D_r_mu = (partition_enumerate(m1, rep.n_hi, r) - partition_enumerate(m1, rep.n_lo, r)) /
               ((r - 1.0) * span);
  rep.D_s_nu = (partition_enumerate(m2, rep.n_hi, s) - partition_enumerate(m2, rep.n_lo, s)) /
               ((s - 1.0) * span);

  rep.weight_r = q * (r - 1.0) / (r * (q - 1.0));
  rep.weight_s = q * (s - 1.0) / (s * (q - 1.0));
  rep.rhs = rep.weight_r * rep.D_r_mu + rep.weight_s * rep.D_s_nu;
  // Same direction on both sides of q = 1. For q < 1 the reverse Young
  // inequality keeps the lower bound; an upper bound fails for delta * uniform.
  rep.holds = rep.D_conv >= rep.rhs - tolerance;
  return rep;
}

}  // namespace renyi
