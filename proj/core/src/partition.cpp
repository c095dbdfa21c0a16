#include "renyi/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "renyi/errors.hpp"

namespace renyi {

namespace {

void require_q(double q) {
  if (!(q > 0.0) || q == 1.0 || !std::isfinite(q)) {
    std::ostringstream os;
    os << "q must be positive, finite and != 1, got " << q;
    throw DomainError(os.str());
  }
}

}  // namespace

PartitionTable::PartitionTable(double q, std::vector<PartitionRow> rows,
                               std::string source)
    : q_(q), rows_(std::move(rows)), source_(std::move(source)) {
  require_q(q);
  for (std::size_t i = 1; i < rows_.size(); ++i) {
    if (!(rows_[i].ln_eps < rows_[i - 1].ln_eps))
      throw DomainError("partition table ln_eps must be strictly decreasing");
  }
}

std::optional<std::size_t> PartitionTable::find_row(double ln_eps, double tol) const {
  if (rows_.empty()) return std::nullopt;
  std::size_t i = nearest_row(ln_eps);
  double scale = std::max(1.0, std::abs(ln_eps));
  if (std::abs(rows_[i].ln_eps - ln_eps) <= tol * scale) return i;
  return std::nullopt;
}

std::size_t PartitionTable::nearest_row(double ln_eps) const {
  if (rows_.empty()) throw DomainError("empty partition table");
  // rows_ sorted by decreasing ln_eps
  auto it = std::lower_bound(rows_.begin(), rows_.end(), ln_eps,
                             [](const PartitionRow& r, double v) { return r.ln_eps > v; });
  if (it == rows_.begin()) return 0;
  if (it == rows_.end()) return rows_.size() - 1;
  auto i = static_cast<std::size_t>(it - rows_.begin());
  return std::abs(rows_[i].ln_eps - ln_eps) < std::abs(rows_[i - 1].ln_eps - ln_eps) ? i
                                                                                      : i - 1;
}

double partition_exact_dyadic(const CascadeMeasure& m, std::size_t n) {
  if (n > m.depth()) {
    throw DomainError("level " + std::to_string(n) + " exceeds cascade depth " +
                      std::to_string(m.depth()));
  }
  double sum = 0.0;
  const auto& a = m.weights();
  for (std::size_t j = 0; j < n; ++j) sum += a[j];
  return (1.0 - m.build_q()) * std::numbers::ln2 * sum;
}

namespace {

// Sum of mass^q over the leaves at depth `remaining` below a node of mass w.
// Pairwise by construction; zero-mass subtrees contribute nothing.
double enumerate_subtree(const std::vector<double>& omegas, std::size_t level,
                         std::size_t target, double mass, double q) {
  if (mass == 0.0) return 0.0;
  if (level == target) return std::pow(mass, q);
  double w = omegas[level];  // splits level -> level + 1
  return enumerate_subtree(omegas, level + 1, target, (1.0 - w) * mass, q) +
         enumerate_subtree(omegas, level + 1, target, w * mass, q);
}

}  // namespace

double partition_enumerate(const CascadeMeasure& m, std::size_t n, double q_eval) {
  require_q(q_eval);
  if (n > m.depth()) {
    throw DomainError("level " + std::to_string(n) + " exceeds cascade depth " +
                      std::to_string(m.depth()));
  }
  if (n > kMaxEnumerationLevel) {
    throw ResourceError("enumeration at level " + std::to_string(n) +
                        " would visit 2^" + std::to_string(n) + " cells; cap is 2^" +
                        std::to_string(kMaxEnumerationLevel));
  }
  return std::log(enumerate_subtree(m.omegas(), 0, n, 1.0, q_eval));
}

double partition_bucket(const DiscretizedMeasure& dm, double eps, double q) {
  require_q(q);
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  if (eps < kBucketGuardFactor * dm.resolution()) {
    std::ostringstream os;
    os.precision(17);
    os << "eps=" << eps << " is below " << kBucketGuardFactor
       << " x resolution (" << dm.resolution()
       << "); cell assignment error would not be subdominant";
    throw PrecisionError(os.str());
  }
  double total = 0.0;
  bool have_cell = false;
  long long cell = 0;
  double cell_mass = 0.0;
  auto flush = [&] {
    if (have_cell && cell_mass > 0.0) total += std::pow(cell_mass, q);
  };
  for (const Atom& a : dm.atoms()) {
    auto k = static_cast<long long>(std::floor(a.position / eps));
    // Half-open cells: a boundary point belongs to the right cell.
    if (static_cast<double>(k + 1) * eps <= a.position) ++k;
    if (static_cast<double>(k) * eps > a.position) --k;
    if (!have_cell || k != cell) {
      flush();
      cell = k;
      cell_mass = 0.0;
      have_cell = true;
    }
    cell_mass += a.weight;
  }
  flush();
  return std::log(total);
}

PartitionTable build_table(const CascadeMeasure& m, std::size_t n_max, double q) {
  require_q(q);
  if (q != m.build_q()) {
    throw DomainError("exact dyadic table requires q equal to the build q; "
                      "use build_table_enumerated for other q");
  }
  if (n_max > m.depth()) {
    throw DomainError("n_max " + std::to_string(n_max) + " exceeds cascade depth " +
                      std::to_string(m.depth()));
  }
  const double scale = (1.0 - q) * std::numbers::ln2;
  std::vector<PartitionRow> rows;
  rows.reserve(n_max + 1);
  double running = 0.0;
  rows.push_back({0.0, 0.0});
  const auto& a = m.weights();
  for (std::size_t n = 1; n <= n_max; ++n) {
    running += a[n - 1];
    rows.push_back({-static_cast<double>(n) * std::numbers::ln2, scale * running});
  }
  PartitionTable table(q, std::move(rows), "cascade:" + m.profile().describe());
  auto diag = check_jump_bounds(table);
  if (!diag.ok()) {
    std::ostringstream os;
    os.precision(17);
    os << "jump bound violated " << diag.violations << " times (max "
       << diag.max_violation << ") in exact dyadic table";
    throw InvariantError(os.str());
  }
  return table;
}

PartitionTable build_table_enumerated(const CascadeMeasure& m, std::size_t n_max,
                                      double q_eval) {
  std::vector<PartitionRow> rows;
  rows.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    rows.push_back({-static_cast<double>(n) * std::numbers::ln2,
                    partition_enumerate(m, n, q_eval)});
  }
  return PartitionTable(q_eval, std::move(rows),
                        "cascade-enumerated:" + m.profile().describe());
}

PartitionTable build_table_bucketed(const DiscretizedMeasure& dm, std::size_t n_min,
                                    std::size_t n_max, double q) {
  if (n_min > n_max) throw DomainError("n_min must not exceed n_max");
  std::vector<PartitionRow> rows;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    double eps = std::ldexp(1.0, -static_cast<int>(n));
    rows.push_back({-static_cast<double>(n) * std::numbers::ln2,
                    partition_bucket(dm, eps, q)});
  }
  return PartitionTable(q, std::move(rows), "bucketed");
}

JumpDiagnostics check_jump_bounds(const PartitionTable& t, int d, double tolerance) {
  if (t.size() < 2) throw DomainError("jump check needs at least two rows");
  const double q = t.q();
  JumpDiagnostics diag;
  diag.q = q;
  diag.B = d * (q - 1.0);
  const auto& rows = t.rows();
  diag.min_jump = std::numeric_limits<double>::infinity();
  diag.max_jump = -std::numeric_limits<double>::infinity();

  // Bound per unit of ln eps; the dyadic statement scales with n ln 2.
  const double B = diag.B;
  double extreme_prefix = rows[0].ln_S;  // running min (q>1) / max (q<1)
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double span = rows[i - 1].ln_eps - rows[i].ln_eps;  // > 0
    double levels = span / std::numbers::ln2;
    if (std::abs(levels - std::round(levels)) > 1e-9 * std::max(1.0, levels))
      throw DomainError("jump check needs rows at dyadic spacing");
    double jump = rows[i - 1].ln_S - rows[i].ln_S;
    diag.min_jump = std::min(diag.min_jump, jump);
    diag.max_jump = std::max(diag.max_jump, jump);
    double lower = q > 1.0 ? 0.0 : B * span;
    double upper = q > 1.0 ? B * span : 0.0;
    double violation = std::max(lower - jump, jump - upper);
    ++diag.pairs_checked;
    if (violation > tolerance) {
      ++diag.violations;
      diag.max_violation = std::max(diag.max_violation, violation);
    }
    // Deviation from monotone: ln S rising (q>1) above an earlier minimum.
    if (q > 1.0) {
      diag.observed_A = std::max(diag.observed_A, rows[i].ln_S - extreme_prefix);
      extreme_prefix = std::min(extreme_prefix, rows[i].ln_S);
    } else {
      diag.observed_A = std::max(diag.observed_A, extreme_prefix - rows[i].ln_S);
      extreme_prefix = std::max(extreme_prefix, rows[i].ln_S);
    }
  }
  return diag;
}

}  // namespace renyi
