#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "renyi/measure.hpp"

namespace renyi {

struct PartitionRow {
  double ln_eps = 0.0;
  double ln_S = 0.0;

  friend bool operator==(const PartitionRow&, const PartitionRow&) = default;
};

/// Rows (ln eps, ln S^q(eps)) with ln eps strictly decreasing.
class PartitionTable {
 public:
  PartitionTable(double q, std::vector<PartitionRow> rows, std::string source);

  double q() const noexcept { return q_; }
  const std::vector<PartitionRow>& rows() const noexcept { return rows_; }
  const PartitionRow& row(std::size_t i) const { return rows_.at(i); }
  std::size_t size() const noexcept { return rows_.size(); }
  const std::string& source() const noexcept { return source_; }

  /// Index of the row whose ln_eps matches within tol (absolute, scaled by
  /// max(1, |ln_eps|)).
  std::optional<std::size_t> find_row(double ln_eps, double tol = 1e-9) const;
  /// Index of the row closest to ln_eps.
  std::size_t nearest_row(double ln_eps) const;

 private:
  double q_;
  std::vector<PartitionRow> rows_;
  std::string source_;
};

/// (1 - q) ln 2 sum_{j<=n} a_j; valid at the build q only.
double partition_exact_dyadic(const CascadeMeasure& m, std::size_t n);

inline constexpr std::size_t kMaxEnumerationLevel = 24;

/// ln sum over nonzero level-n cells of mass^q_eval, by walking the tree.
/// Independent of partition_exact_dyadic; q_eval may differ from build q.
double partition_enumerate(const CascadeMeasure& m, std::size_t n, double q_eval);

/// Buckets atoms into cells [k eps, (k+1) eps) and returns ln sum mass^q.
/// Requires eps >= 4 * resolution.
inline constexpr double kBucketGuardFactor = 4.0;
double partition_bucket(const DiscretizedMeasure& dm, double eps, double q);

/// Rows (-n ln 2, partition_exact_dyadic(m, n)) for n = 0..n_max. q must be
/// the build q; the invariants of the jump bounds are checked before return.
PartitionTable build_table(const CascadeMeasure& m, std::size_t n_max, double q);

/// Same rows computed by enumeration at an arbitrary q_eval (n_max <= 24).
PartitionTable build_table_enumerated(const CascadeMeasure& m, std::size_t n_max,
                                      double q_eval);

/// Rows at eps_k = 2^-k for k in [n_min, n_max], by bucketing.
PartitionTable build_table_bucketed(const DiscretizedMeasure& dm, std::size_t n_min,
                                    std::size_t n_max, double q);

struct JumpDiagnostics {
  double q = 0.0;
  double B = 0.0;  // d (q - 1)
  std::size_t pairs_checked = 0;
  std::size_t violations = 0;
  double max_violation = 0.0;
  /// Largest rise of ln S as eps decreases (q > 1) or fall (q < 1).
  double observed_A = 0.0;
  double min_jump = 0.0;
  double max_jump = 0.0;
  bool ok() const noexcept { return violations == 0; }
};

/// For consecutive rows eps, 2^-n eps checks
///   0 <= ln S(eps) - ln S(2^-n eps) <= n d (q-1) ln 2        (q > 1)
/// and the mirrored bounds for q < 1. Bounds over longer spans follow by
/// summing consecutive ones. tolerance is absolute.
JumpDiagnostics check_jump_bounds(const PartitionTable& t, int d = 1,
                                  double tolerance = 1e-9);

}  // namespace renyi
