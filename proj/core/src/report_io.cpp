#include "renyi/report_io.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "renyi/config.hpp"
#include "renyi/errors.hpp"

namespace renyi {
namespace {

using Field = std::pair<std::string, std::string>;

std::vector<Field> report_fields(const DimensionReport& r) {
  auto f = format_double;
  std::vector<Field> out{
      {"source", r.source},
      {"q", f(r.q)},
      {"depth", std::to_string(r.depth)},
      {"tail_fraction", f(r.config.tail_fraction)},
      {"tail_start", std::to_string(r.tail_start)},
      {"ordering_tolerance", f(r.config.ordering_tolerance)},
      {"D_minus", f(r.D_minus)},
      {"D_plus", f(r.D_plus)},
      {"D_mm", f(r.D_mm)},
      {"D_pp", f(r.D_pp)},
      {"bestfit_liminf", f(r.bestfit_liminf)},
      {"bestfit_limsup", f(r.bestfit_limsup)},
      {"A_hat", f(r.A_hat)},
      {"B", f(r.B)},
      {"C", f(r.C)},
      {"E", f(r.E)},
      {"ordering_ok", r.ordering_ok ? "true" : "false"},
  };
  for (std::size_t i = 0; i < r.sweep.size(); ++i) {
    std::string p = "window" + std::to_string(i) + ".";
    out.emplace_back(p + "L", f(r.sweep[i].L));
    out.emplace_back(p + "alpha", f(r.sweep[i].alpha));
    out.emplace_back(p + "beta", f(r.sweep[i].beta));
  }
  return out;
}

}  // namespace

void write_measure_csv(std::ostream& out, const DiscretizedMeasure& dm) {
  out << "position,weight\n";
  for (const Atom& a : dm.atoms())
    out << format_double(a.position) << ',' << format_double(a.weight) << '\n';
}

void write_table_csv(std::ostream& out, const PartitionTable& t) {
  out << "ln_eps,ln_S\n";
  for (const PartitionRow& r : t.rows())
    out << format_double(r.ln_eps) << ',' << format_double(r.ln_S) << '\n';
}

PartitionTable read_table_csv(std::istream& in, double q, std::string source) {
  std::string line;
  int n = 0;
  std::vector<PartitionRow> rows;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (n == 1 && line.rfind("ln_eps", 0) == 0) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("expected two columns", n, "ln_eps");
    try {
      double e = std::stod(line.substr(0, comma));
      double s = std::stod(line.substr(comma + 1));
      rows.push_back({e, s});
    } catch (const std::logic_error&) {
      throw ParseError("not a number in '" + line + "'", n, "ln_S");
    }
  }
  return PartitionTable(q, std::move(rows), std::move(source));
}

void write_ratio_csv(std::ostream& out, const RatioReport& report) {
  out << "ln_eps,ln_ratio,lower_bound,upper_bound\n";
  double ln_C = std::log(report.C);
  for (const RatioRow& r : report.rows)
    out << format_double(r.ln_eps) << ',' << format_double(r.ln_ratio) << ','
        << format_double(-ln_C) << ',' << format_double(ln_C) << '\n';
}

void write_monotonicity_csv(std::ostream& out, const MonotonicityReport& report) {
  out << "eps,norm\n";
  for (const MonotonicityRow& r : report.rows)
    out << format_double(r.eps) << ',' << format_double(r.norm) << '\n';
}

void write_profile_csv(std::ostream& out, std::span<const double> a) {
  out << "k,a_k\n";
  for (std::size_t k = 0; k < a.size(); ++k) out << k + 1 << ',' << format_double(a[k]) << '\n';
}

void write_stats_csv(std::ostream& out, std::span<const ProfileStats> stats) {
  out << "n,running_sum,average,weighted_sum,normalized_weighted,average_exact\n";
  for (const ProfileStats& s : stats) {
    out << s.n << ',' << format_double(s.running_sum) << ',' << format_double(s.average())
        << ',' << format_double(s.weighted_sum) << ',' << format_double(s.normalized_weighted())
        << ',' << (s.exact ? s.average_exact().to_string() : std::string{}) << '\n';
  }
}

void write_matuszewska_csv(std::ostream& out, std::span<const MatuszewskaFit> sweep) {
  out << "L,alpha,beta,u_lo,u_hi\n";
  for (const MatuszewskaFit& m : sweep)
    out << format_double(m.L) << ',' << format_double(m.alpha) << ',' << format_double(m.beta)
        << ',' << format_double(m.u_lo) << ',' << format_double(m.u_hi) << '\n';
}

void write_gap_csv(std::ostream& out, const GapReport& report) {
  out << "n,x,m_x,m_tilde,gap,scaled_gap\n";
  for (const GapRow& r : report.rows)
    out << r.n << ',' << format_double(r.x) << ',' << format_double(r.m_x) << ','
        << format_double(r.m_tilde) << ',' << format_double(r.gap) << ','
        << format_double(r.scaled_gap) << '\n';
}

void write_report_kv(std::ostream& out, const DimensionReport& report) {
  for (const auto& [k, v] : report_fields(report)) out << k << " = " << v << '\n';
}

void write_report_csv(std::ostream& out, const DimensionReport& report) {
  out << "key,value\n";
  for (const auto& [k, v] : report_fields(report)) {
    bool quote = v.find_first_of(",\"") != std::string::npos;
    out << k << ',';
    if (!quote) {
      out << v << '\n';
      continue;
    }
    out << '"';
    for (char c : v) out << (c == '"' ? "\"\"" : std::string(1, c));
    out << "\"\n";
  }
}

}  // namespace renyi
