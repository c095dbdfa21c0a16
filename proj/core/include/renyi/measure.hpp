#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "renyi/weight_profile.hpp"

namespace renyi {

/// Solves ln(w^q + (1-w)^q) = (1-q) ln(2) a for w in [0, 1/2].
///
/// The left side is strictly monotone on [0, 1/2] for every q != 1, so the
/// root is unique and bisection always converges. a = 0 gives w = 0 and
/// a = 1 gives w = 1/2 exactly.
double solve_omega(double q, double a);

/// Residual ln(w^q + (1-w)^q) - (1-q) ln(2) a, evaluated without cancellation.
double omega_residual(double q, double a, double omega);

/// Dyadic multiplicative cascade on [0, 1] truncated at a finite depth.
///
/// A level-(n-1) cell of mass w splits into a left half of mass (1 - w_n) w
/// and a right half of mass w_n w. Level-n cell masses of the truncated
/// measure coincide with those of the infinite construction for n <= depth.
class CascadeMeasure {
 public:
  CascadeMeasure(WeightProfile profile, double build_q,
                 std::vector<double> weights, std::vector<double> omegas);

  double build_q() const noexcept { return build_q_; }
  std::size_t depth() const noexcept { return omegas_.size(); }
  const WeightProfile& profile() const noexcept { return profile_; }

  /// a_1..a_N, index 0 holds a_1.
  const std::vector<double>& weights() const noexcept { return weights_; }
  /// w_1..w_N, index 0 holds w_1.
  const std::vector<double>& omegas() const noexcept { return omegas_; }

  double omega(std::size_t level) const { return omegas_.at(level - 1); }
  double weight(std::size_t level) const { return weights_.at(level - 1); }

 private:
  WeightProfile profile_;
  double build_q_;
  std::vector<double> weights_;
  std::vector<double> omegas_;
};

CascadeMeasure build_cascade(const WeightProfile& profile, double q,
                             std::size_t depth);

struct CdfValue {
  double value = 0.0;
  /// Upper bound on |value - F(x)|; zero when the descent ended exactly.
  double error_bound = 0.0;
};

/// F(x) = mu([0, x)), left continuous. Descends the dyadic tree until the
/// node holding x has mass below tol or the build depth is reached. Inside
/// an undivided leaf the mass is spread uniformly. Exact for dyadic x of
/// level <= depth regardless of tol.
CdfValue cdf_with_bound(const CascadeMeasure& m, double x, double tol = 1e-12);
double cdf(const CascadeMeasure& m, double x, double tol = 1e-12);

/// mu([a, b)) = F(b) - F(a).
double interval_mass(const CascadeMeasure& m, double a, double b,
                     double tol = 1e-12);

struct Atom {
  double position = 0.0;
  double weight = 0.0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite list of point masses with strictly increasing positions.
class DiscretizedMeasure {
 public:
  /// Throws DomainError on unsorted positions or negative weights.
  DiscretizedMeasure(std::vector<Atom> atoms, double resolution);

  static DiscretizedMeasure point_mass(double position, double weight = 1.0);

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  /// Width of the cells whose mass each atom carries (0 for exact atoms).
  double resolution() const noexcept { return resolution_; }
  double total_mass() const noexcept { return total_mass_; }

  double min_position() const { return atoms_.front().position; }
  double max_position() const { return atoms_.back().position; }

 private:
  std::vector<Atom> atoms_;
  double resolution_;
  double total_mass_;
};

/// Largest depth discretize() accepts.
inline constexpr std::size_t kMaxDiscretizeDepth = 24;

/// 2^depth atoms at the left endpoints k 2^-depth carrying the masses of the
/// level-depth cells.
DiscretizedMeasure discretize(const CascadeMeasure& m, std::size_t depth);

inline constexpr std::size_t kDefaultConvolutionAtomCap = std::size_t{1} << 22;
inline constexpr double kConvolutionMergeTolerance = 1e-12;

/// Atoms at all pairwise position sums with product weights; positions
/// closer than 1e-12 are merged.
DiscretizedMeasure convolve(const DiscretizedMeasure& m1,
                            const DiscretizedMeasure& m2,
                            std::size_t max_atoms = kDefaultConvolutionAtomCap);

}  // namespace renyi
