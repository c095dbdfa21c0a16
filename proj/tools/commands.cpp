#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "cli.hpp"
#include "renyi/errors.hpp"
#include "renyi/gaussfilter.hpp"
#include "renyi/measure.hpp"
#include "renyi/partition.hpp"
#include "renyi/report_io.hpp"
#include "renyi/slopes.hpp"

namespace renyi::cli {
namespace {

// Levels written to omegas.csv by `build`; the descriptor alone rebuilds
// the full measure.
constexpr std::size_t kOmegaDumpLevels = 4096;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path.string());
  return f;
}

template <class Fn>
void save(const std::filesystem::path& path, Fn&& fn) {
  std::ofstream f = open_out(path);
  fn(f);
}

PartitionTable make_table(const CascadeMeasure& m, double q, std::size_t n_max) {
  if (n_max > m.depth()) throw UsageError("n_max exceeds the measure depth");
  return q == m.build_q() ? build_table(m, n_max, q) : build_table_enumerated(m, n_max, q);
}

std::pair<std::size_t, std::size_t> parse_levels(const std::string& text) {
  auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      std::size_t n = std::stoul(text);
      return {n, n};
    }
    std::size_t lo = std::stoul(text.substr(0, colon));
    std::size_t hi = std::stoul(text.substr(colon + 1));
    if (lo > hi) throw UsageError("levels must be lo:hi with lo <= hi");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("levels must look like 3:10");
  }
}

}  // namespace

MeasureSpec MeasureOptions::resolve() const {
  KeyValueConfig cfg;
  if (!config_path.empty()) {
    if (!std::filesystem::exists(config_path))
      throw UsageError("measure file not found: " + config_path);
    cfg = KeyValueConfig::load(config_path);
  } else if (!kind) {
    throw UsageError("no measure given: pass --config FILE or --kind");
  }
  auto put = [&](const char* key, const std::optional<std::string>& v) {
    if (v) cfg.set(key, *v);
  };
  put("kind", kind);
  put("q", q);
  put("depth", depth);
  put("a", a);
  put("ratio", ratio);
  put("k_seed", k_seed);
  put("values", values);
  return measure_spec_from_config(cfg);
}

std::filesystem::path OutputOptions::file(const std::string& name) const {
  std::filesystem::create_directories(out_dir);
  return std::filesystem::path(out_dir) / name;
}

int cmd_build(const MeasureOptions& opts, const OutputOptions& out) {
  MeasureSpec spec = opts.resolve();
  CascadeMeasure m = build_cascade(spec.profile, spec.q, spec.depth);

  std::size_t check_depth = std::min<std::size_t>(spec.depth, 16);
  double mass = discretize(m, check_depth).total_mass();
  std::cout << "measure " << spec.profile.describe() << '\n'
            << "q = " << format_double(spec.q) << '\n'
            << "depth = " << spec.depth << '\n'
            << "mass at level " << check_depth << " = " << format_double(mass)
            << "  |1 - mass| = " << format_double(std::abs(1.0 - mass)) << '\n'
            << "omega[1.." << std::min<std::size_t>(8, m.depth()) << "] =";
  for (std::size_t i = 1; i <= std::min<std::size_t>(8, m.depth()); ++i)
    std::cout << ' ' << format_double(m.omega(i));
  std::cout << '\n';

  if (out.enabled()) {
    open_out(out.file("measure.cfg")) << to_config_text(spec);
    auto f = open_out(out.file("omegas.csv"));
    f << "level,a,omega\n";
    for (std::size_t i = 1; i <= std::min(m.depth(), kOmegaDumpLevels); ++i)
      f << i << ',' << format_double(m.weight(i)) << ',' << format_double(m.omega(i)) << '\n';
    std::cout << "wrote " << out.file("measure.cfg").string() << '\n';
  }
  return kOk;
}

int cmd_table(const MeasureOptions& opts, const TableOptions& t, const OutputOptions& out) {
  MeasureSpec spec = opts.resolve();
  CascadeMeasure m = build_cascade(spec.profile, spec.q, spec.depth);
  double q = t.q_eval.value_or(spec.q);
  PartitionTable table = make_table(m, q, t.n_max.value_or(spec.depth));

  if (!out.enabled()) {
    write_table_csv(std::cout, table);
    return kOk;
  }
  save(out.file("table.csv"), [&](std::ostream& o) { write_table_csv(o, table); });
  JumpDiagnostics jd = check_jump_bounds(table);
  std::cout << "rows = " << table.size() << '\n'
            << "q = " << format_double(q) << '\n'
            << "B = " << format_double(jd.B) << '\n'
            << "jump violations = " << jd.violations << '\n'
            << "wrote " << out.file("table.csv").string() << '\n';
  if (out.plot)
    write_plot_script(out.file("table.gp"), "partition function", "-ln eps", "ln S",
                      {{"table.csv", "(-$1)", "2", "ln S"}});
  return jd.ok() ? kOk : kInvariantFailure;
}

int cmd_filter(const MeasureOptions& opts, const FilterOptions& f, const OutputOptions& out) {
  MeasureSpec spec = opts.resolve();
  CascadeMeasure m = build_cascade(spec.profile, spec.q, spec.depth);
  double q = f.q.value_or(spec.q);
  std::size_t depth = f.depth.value_or(std::min<std::size_t>(spec.depth, 16));
  auto [lo, hi] = parse_levels(f.levels);

  std::vector<double> eps;  // coarse to fine
  for (std::size_t n = lo; n <= hi; ++n) eps.push_back(std::ldexp(1.0, -static_cast<int>(n)));
  RatioReport ratio = check_ratio_bound(m, q, eps, depth);

  std::vector<double> grid(eps.rbegin(), eps.rend());
  MonotonicityReport mono = check_monotonicity(discretize(m, depth), q, grid);

  std::cout << "C = " << format_double(ratio.C) << "  bounds [" << format_double(1.0 / ratio.C)
            << ", " << format_double(ratio.C) << "]\n";
  std::cout << "eps,ratio,within\n";
  for (const RatioRow& r : ratio.rows)
    std::cout << format_double(r.eps) << ',' << format_double(std::exp(r.ln_ratio)) << ','
              << (r.within ? "yes" : "NO") << '\n';
  std::cout << "monotone = " << (mono.ok() ? "yes" : "NO") << "  violations = "
            << mono.violations << '\n';

  if (out.enabled()) {
    save(out.file("ratio.csv"), [&](std::ostream& o) { write_ratio_csv(o, ratio); });
    save(out.file("monotonicity.csv"), [&](std::ostream& o) { write_monotonicity_csv(o, mono); });
    if (out.plot)
      write_plot_script(out.file("ratio.gp"), "Gaussian ratio bound", "ln eps",
                        "ln ratio",
                        {{"ratio.csv", "1", "2", "ln ratio"},
                         {"ratio.csv", "1", "3", "ln 1/C"},
                         {"ratio.csv", "1", "4", "ln C"}});
  }
  return ratio.all_within() && mono.ok() ? kOk : kInvariantFailure;
}

namespace {

void write_sweep_plot(const OutputOptions& out) {
  write_plot_script(out.file("matuszewska.gp"), "Matuszewska window sweep", "L", "index",
                    {{"matuszewska.csv", "1", "2", "alpha"}, {"matuszewska.csv", "1", "3", "beta"}});
}

}  // namespace

int cmd_fit(const MeasureOptions& opts, const FitOptions& f, const OutputOptions& out) {
  MeasureSpec spec = opts.resolve();
  CascadeMeasure m = build_cascade(spec.profile, spec.q, spec.depth);
  DimensionConfig cfg;
  cfg.tail_fraction = f.tail_fraction;
  for (double w : f.windows) cfg.matuszewska_windows.push_back(w * std::numbers::ln2);
  double q = f.q.value_or(spec.q);
  DimensionReport rep = dimension_report(m, q, f.n_max.value_or(spec.depth), cfg);

  write_report_kv(std::cout, rep);
  if (out.enabled()) {
    save(out.file("report.txt"), [&](std::ostream& o) { write_report_kv(o, rep); });
    save(out.file("report.csv"), [&](std::ostream& o) { write_report_csv(o, rep); });
    save(out.file("matuszewska.csv"), [&](std::ostream& o) { write_matuszewska_csv(o, rep.sweep); });
    if (out.plot) write_sweep_plot(out);
  }
  return kOk;
}

int cmd_matuszewska(const MeasureOptions& opts, const FitOptions& f, const OutputOptions& out) {
  MeasureSpec spec = opts.resolve();
  CascadeMeasure m = build_cascade(spec.profile, spec.q, spec.depth);
  double q = f.q.value_or(spec.q);
  PartitionTable table = make_table(m, q, f.n_max.value_or(spec.depth));

  std::vector<double> windows;
  for (double w : f.windows) windows.push_back(w * std::numbers::ln2);
  if (windows.empty()) windows = default_matuszewska_windows(table, f.tail_fraction);
  auto sweep = matuszewska_sweep(table, windows, f.tail_fraction);

  write_matuszewska_csv(std::cout, sweep);
  if (out.enabled()) {
    save(out.file("matuszewska.csv"), [&](std::ostream& o) { write_matuszewska_csv(o, sweep); });
    if (out.plot) write_sweep_plot(out);
  }
  return kOk;
}

}  // namespace renyi::cli
