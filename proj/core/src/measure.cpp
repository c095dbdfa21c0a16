#include "renyi/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "renyi/errors.hpp"
#include "renyi/profiles.hpp"

namespace renyi {

// ---------------------------------------------------------------------------
// WeightProfile

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::constant: return "constant";
    case ProfileKind::block48: return "block48";
    case ProfileKind::geometric_blocks: return "geometric-blocks";
    case ProfileKind::explicit_list: return "explicit-list";
  }
  return "unknown";
}

ProfileKind profile_kind_from_string(const std::string& name) {
  if (name == "constant") return ProfileKind::constant;
  if (name == "block48" || name == "block-48") return ProfileKind::block48;
  if (name == "geometric-blocks" || name == "geometric_blocks")
    return ProfileKind::geometric_blocks;
  if (name == "explicit-list" || name == "explicit_list" || name == "explicit")
    return ProfileKind::explicit_list;
  throw DomainError("unknown profile kind '" + name + "'");
}

namespace {

void require_unit_interval(double a, const char* what) {
  if (!(a >= 0.0 && a <= 1.0)) {
    std::ostringstream os;
    os << what << " must lie in [0, 1], got " << a;
    throw DomainError(os.str());
  }
}

// Smallest k <= 40 with a * 2^k integral; nullopt if none.
std::optional<int> dyadic_exponent(double a) {
  for (int k = 0; k <= 40; ++k) {
    double scaled = std::ldexp(a, k);
    if (scaled == std::floor(scaled)) return k;
  }
  return std::nullopt;
}

ScaledProfile scale_dyadic(const std::vector<double>& values) {
  int max_exp = 0;
  for (double v : values) {
    auto e = dyadic_exponent(v);
    if (!e) {
      std::ostringstream os;
      os << "profile value " << v
         << " has no exact dyadic form with denominator <= 2^40; "
            "use floating-point mode";
      throw RationalOverflowError(os.str());
    }
    max_exp = std::max(max_exp, *e);
  }
  ScaledProfile out;
  out.denominator = std::int64_t{1} << max_exp;
  out.numerators.reserve(values.size());
  for (double v : values)
    out.numerators.push_back(static_cast<std::int64_t>(std::ldexp(v, max_exp)));
  return out;
}

}  // namespace

WeightProfile WeightProfile::constant(double a) {
  require_unit_interval(a, "constant profile value");
  WeightProfile p;
  p.kind_ = ProfileKind::constant;
  p.constant_ = a;
  return p;
}

WeightProfile WeightProfile::block48() {
  WeightProfile p;
  p.kind_ = ProfileKind::block48;
  return p;
}

WeightProfile WeightProfile::geometric_blocks(double ratio, std::int64_t k_seed) {
  if (!(ratio > 1.0) || !std::isfinite(ratio))
    throw DomainError("geometric-blocks ratio must be > 1");
  if (k_seed < 1) throw DomainError("geometric-blocks k_seed must be >= 1");
  WeightProfile p;
  p.kind_ = ProfileKind::geometric_blocks;
  p.ratio_ = ratio;
  p.k_seed_ = k_seed;
  return p;
}

WeightProfile WeightProfile::explicit_list(std::vector<double> values) {
  for (double v : values) require_unit_interval(v, "explicit profile value");
  WeightProfile p;
  p.kind_ = ProfileKind::explicit_list;
  p.values_ = std::move(values);
  return p;
}

std::optional<std::size_t> WeightProfile::length() const noexcept {
  if (kind_ == ProfileKind::explicit_list) return values_.size();
  return std::nullopt;
}

std::vector<double> WeightProfile::generate(std::size_t n) const {
  switch (kind_) {
    case ProfileKind::constant:
      return std::vector<double>(n, constant_);
    case ProfileKind::block48:
      return profile_block48(n);
    case ProfileKind::geometric_blocks:
      return profile_geometric_blocks(ratio_, n, k_seed_);
    case ProfileKind::explicit_list:
      if (n > values_.size()) {
        throw DomainError("explicit profile has " + std::to_string(values_.size()) +
                          " terms, " + std::to_string(n) + " requested");
      }
      return {values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(n)};
  }
  return {};
}

ScaledProfile WeightProfile::generate_scaled(std::size_t n) const {
  switch (kind_) {
    case ProfileKind::block48:
      return profile_block48_scaled(n);
    case ProfileKind::geometric_blocks:
      return profile_geometric_blocks_scaled(ratio_, n, k_seed_);
    case ProfileKind::constant:
    case ProfileKind::explicit_list:
      break;
  }
  return scale_dyadic(generate(n));
}

std::string WeightProfile::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << to_string(kind_);
  switch (kind_) {
    case ProfileKind::constant: os << "(a=" << constant_ << ")"; break;
    case ProfileKind::geometric_blocks:
      os << "(ratio=" << ratio_ << ",k_seed=" << k_seed_ << ")";
      break;
    case ProfileKind::explicit_list: os << "(n=" << values_.size() << ")"; break;
    case ProfileKind::block48: break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// solve_omega

namespace {

constexpr int kBisectionMaxIterations = 200;
constexpr double kBisectionWidth = 1e-14;
constexpr double kOmegaResidualTolerance = 1e-12;

void require_q(double q) {
  if (!(q > 0.0) || q == 1.0 || !std::isfinite(q)) {
    std::ostringstream os;
    os << "q must be positive, finite and != 1, got " << q;
    throw DomainError(os.str());
  }
}

}  // namespace

double omega_residual(double q, double a, double omega) {
  // ln(w^q + (1-w)^q) = log1p(w^q + expm1(q log1p(-w)))
  double left = std::pow(omega, q) + std::expm1(q * std::log1p(-omega));
  return std::log1p(left) - (1.0 - q) * std::log(2.0) * a;
}

double solve_omega(double q, double a) {
  require_q(q);
  require_unit_interval(a, "a");
  if (a == 0.0) return 0.0;
  if (a == 1.0) return 0.5;

  // h(w) = residual is decreasing on [0, 1/2] for q > 1, increasing for q < 1.
  const double sign = q > 1.0 ? -1.0 : 1.0;
  double lo = 0.0;
  double hi = 0.5;
  double mid = 0.25;
  for (int it = 0; it < kBisectionMaxIterations; ++it) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double h = sign * omega_residual(q, a, mid);
    if (h == 0.0) break;
    if (h < 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= kBisectionWidth &&
        std::abs(omega_residual(q, a, 0.5 * (lo + hi))) <= 0.1 * kOmegaResidualTolerance)
      break;
  }
  double omega = 0.5 * (lo + hi);
  if (std::abs(omega_residual(q, a, omega)) > kOmegaResidualTolerance) {
    // Endpoints of the final bracket can be better than the midpoint when
    // the bracket has collapsed to adjacent doubles.
    for (double cand : {lo, hi})
      if (std::abs(omega_residual(q, a, cand)) < std::abs(omega_residual(q, a, omega)))
        omega = cand;
  }
  if (std::abs(omega_residual(q, a, omega)) > kOmegaResidualTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "solve_omega did not reach tolerance for q=" << q << " a=" << a;
    throw InvariantError(os.str());
  }
  return omega;
}

// ---------------------------------------------------------------------------
// CascadeMeasure

CascadeMeasure::CascadeMeasure(WeightProfile profile, double build_q,
                               std::vector<double> weights,
                               std::vector<double> omegas)
    : profile_(std::move(profile)),
      build_q_(build_q),
      weights_(std::move(weights)),
      omegas_(std::move(omegas)) {
  if (weights_.size() != omegas_.size())
    throw DomainError("cascade weights and omegas differ in length");
  if (omegas_.empty()) throw DomainError("cascade depth must be >= 1");
  for (double w : omegas_)
    if (!(w >= 0.0 && w <= 0.5)) throw DomainError("omega outside [0, 1/2]");
}

CascadeMeasure build_cascade(const WeightProfile& profile, double q,
                             std::size_t depth) {
  require_q(q);
  if (depth < 1) throw DomainError("cascade depth must be >= 1");
  std::vector<double> weights = profile.generate(depth);
  std::vector<double> omegas;
  omegas.reserve(depth);
  // Profiles of interest take only a handful of distinct values.
  std::map<double, double> solved;
  for (double a : weights) {
    auto it = solved.find(a);
    if (it == solved.end()) it = solved.emplace(a, solve_omega(q, a)).first;
    omegas.push_back(it->second);
  }
  return CascadeMeasure(profile, q, std::move(weights), std::move(omegas));
}

// ---------------------------------------------------------------------------
// cdf / interval_mass

namespace {

// Level of a dyadic rational in (0, 1): smallest k with x 2^k integral.
std::optional<std::size_t> dyadic_level(double x) {
  if (!(x > 0.0 && x < 1.0)) return std::nullopt;
  int e = 0;
  double mant = std::frexp(x, &e);  // x = mant 2^e, mant in [1/2, 1)
  auto bits = static_cast<std::uint64_t>(std::ldexp(mant, 53));
  int tz = __builtin_ctzll(bits);
  return static_cast<std::size_t>(53 - tz - e);
}

}  // namespace

CdfValue cdf_with_bound(const CascadeMeasure& m, double x, double tol) {
  if (!(tol > 0.0)) throw DomainError("cdf tolerance must be positive");
  if (std::isnan(x)) throw DomainError("cdf of NaN");
  if (x <= 0.0) return {0.0, 0.0};
  if (x >= 1.0) return {1.0, 0.0};

  auto level = dyadic_level(x);
  const bool force_exact = level && *level <= m.depth();
  const auto& omegas = m.omegas();

  double below = 0.0;  // mass of cells entirely left of x
  double mass = 1.0;   // mass of the node containing x
  double lo = 0.0;
  double width = 1.0;
  for (std::size_t n = 1; n <= m.depth(); ++n) {
    if (x == lo || mass == 0.0) return {below, 0.0};
    if (mass < tol && !force_exact) break;
    double half = 0.5 * width;
    double mid = lo + half;
    if (mid <= lo || half == 0.0) break;
    double w = omegas[n - 1];
    double left = (1.0 - w) * mass;
    if (x >= mid) {
      below += left;
      mass = w * mass;
      lo = mid;
    } else {
      mass = left;
    }
    width = half;
  }
  if (x == lo || mass == 0.0) return {below, 0.0};
  double value = below + mass * ((x - lo) / width);
  return {std::clamp(value, 0.0, 1.0), mass};
}

double cdf(const CascadeMeasure& m, double x, double tol) {
  return cdf_with_bound(m, x, tol).value;
}

double interval_mass(const CascadeMeasure& m, double a, double b, double tol) {
  if (!(a <= b)) throw DomainError("interval_mass requires a <= b");
  if (a == b) return 0.0;
  double fb = cdf(m, b, tol);
  double fa = cdf(m, a, tol);
  return std::max(0.0, fb - fa);
}

// ---------------------------------------------------------------------------
// DiscretizedMeasure

namespace {

double compensated_sum(std::span<const Atom> atoms) {
  // Neumaier summation.
  double sum = 0.0;
  double comp = 0.0;
  for (const Atom& a : atoms) {
    double t = sum + a.weight;
    if (std::abs(sum) >= std::abs(a.weight))
      comp += (sum - t) + a.weight;
    else
      comp += (a.weight - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace

DiscretizedMeasure::DiscretizedMeasure(std::vector<Atom> atoms, double resolution)
    : atoms_(std::move(atoms)), resolution_(resolution), total_mass_(0.0) {
  if (!(resolution >= 0.0)) throw DomainError("resolution must be >= 0");
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!(atoms_[i].weight >= 0.0) || !std::isfinite(atoms_[i].weight))
      throw DomainError("atom weights must be finite and nonnegative");
    if (!std::isfinite(atoms_[i].position))
      throw DomainError("atom positions must be finite");
    if (i > 0 && !(atoms_[i].position > atoms_[i - 1].position))
      throw DomainError("atom positions must be strictly increasing");
  }
  total_mass_ = compensated_sum(atoms_);
}

DiscretizedMeasure DiscretizedMeasure::point_mass(double position, double weight) {
  return DiscretizedMeasure({Atom{position, weight}}, 0.0);
}

DiscretizedMeasure discretize(const CascadeMeasure& m, std::size_t depth) {
  if (depth < 1) throw DomainError("discretize depth must be >= 1");
  if (depth > m.depth()) {
    throw DomainError("discretize depth " + std::to_string(depth) +
                      " exceeds build depth " + std::to_string(m.depth()) +
                      "; masses below the build depth are undefined");
  }
  if (depth > kMaxDiscretizeDepth) {
    throw ResourceError("discretize depth " + std::to_string(depth) +
                        " exceeds cap " + std::to_string(kMaxDiscretizeDepth));
  }
  std::vector<double> masses{1.0};
  for (std::size_t n = 1; n <= depth; ++n) {
    double w = m.omega(n);
    std::vector<double> next(masses.size() * 2);
    for (std::size_t k = 0; k < masses.size(); ++k) {
      next[2 * k] = (1.0 - w) * masses[k];
      next[2 * k + 1] = w * masses[k];
    }
    masses = std::move(next);
  }
  const double cell = std::ldexp(1.0, -static_cast<int>(depth));
  std::vector<Atom> atoms(masses.size());
  for (std::size_t k = 0; k < masses.size(); ++k)
    atoms[k] = Atom{static_cast<double>(k) * cell, masses[k]};
  return DiscretizedMeasure(std::move(atoms), cell);
}

// ---------------------------------------------------------------------------
// convolve

DiscretizedMeasure convolve(const DiscretizedMeasure& m1,
                            const DiscretizedMeasure& m2, std::size_t max_atoms) {
  if (m1.empty() || m2.empty()) throw DomainError("convolve requires nonempty measures");
  std::vector<Atom> result;
  std::vector<Atom> merged;
  auto push = [&merged](const Atom& a) {
    if (!merged.empty() &&
        std::abs(a.position - merged.back().position) <= kConvolutionMergeTolerance)
      merged.back().weight += a.weight;
    else
      merged.push_back(a);
  };
  for (const Atom& a : m1.atoms()) {
    // Merge the running result with m2 shifted by a.position.
    merged.clear();
    merged.reserve(result.size() + m2.size());
    std::size_t i = 0;
    auto shifted = m2.atoms();
    std::size_t j = 0;
    while (i < result.size() || j < shifted.size()) {
      bool take_result =
          j == shifted.size() ||
          (i < result.size() && result[i].position <= shifted[j].position + a.position);
      if (take_result) {
        push(result[i++]);
      } else {
        push(Atom{shifted[j].position + a.position, shifted[j].weight * a.weight});
        ++j;
      }
    }
    if (merged.size() > max_atoms) {
      throw ResourceError("convolution exceeds " + std::to_string(max_atoms) +
                          " atoms; discretize at a coarser depth");
    }
    result.swap(merged);
  }
  return DiscretizedMeasure(std::move(result), m1.resolution() + m2.resolution());
}

}  // namespace renyi
