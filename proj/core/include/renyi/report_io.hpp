#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "renyi/gaussfilter.hpp"
#include "renyi/measure.hpp"
#include "renyi/partition.hpp"
#include "renyi/profiles.hpp"
#include "renyi/slopes.hpp"

namespace renyi {

// CSV writers. Every floating value is printed with 17 significant digits so
// that reading a file back reproduces the doubles bit for bit.

void write_measure_csv(std::ostream& out, const DiscretizedMeasure& dm);

/// Columns ln_eps, ln_S.
void write_table_csv(std::ostream& out, const PartitionTable& t);
/// Inverse of write_table_csv. Throws ParseError on malformed lines.
PartitionTable read_table_csv(std::istream& in, double q, std::string source = "csv");

/// Columns ln_eps, ln_ratio, lower_bound, upper_bound (bounds as ln 1/C, ln C).
void write_ratio_csv(std::ostream& out, const RatioReport& report);
void write_monotonicity_csv(std::ostream& out, const MonotonicityReport& report);

/// Columns k, a_k.
void write_profile_csv(std::ostream& out, std::span<const double> a);
void write_stats_csv(std::ostream& out, std::span<const ProfileStats> stats);

void write_matuszewska_csv(std::ostream& out, std::span<const MatuszewskaFit> sweep);
void write_gap_csv(std::ostream& out, const GapReport& report);

/// Flat `key = value` block, including the config that produced it.
void write_report_kv(std::ostream& out, const DimensionReport& report);
/// The same fields as two-column CSV (key, value).
void write_report_csv(std::ostream& out, const DimensionReport& report);

}  // namespace renyi
