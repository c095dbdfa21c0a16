// Recipes behind `renyi reproduce NAME`. Each prints one PASS/FAIL line per
// check with the measured value beside its target value.
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>

#include "cli.hpp"
#include "renyi/errors.hpp"
#include "renyi/gaussfilter.hpp"
#include "renyi/measure.hpp"
#include "renyi/partition.hpp"
#include "renyi/profiles.hpp"
#include "renyi/report_io.hpp"
#include "renyi/slopes.hpp"

namespace renyi::cli {
namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr std::size_t kBlock48Depth = 48 * 48 * 48 * 48;

struct Check {
  std::string name;
  std::string measured;
  std::string target;
  bool pass;
};

class Recipe {
 public:
  explicit Recipe(std::string name) : name_(std::move(name)) {}

  void check(std::string what, const std::string& measured, const std::string& target,
             bool pass) {
    std::cout << (pass ? "PASS  " : "FAIL  ") << what << ": " << measured << "  (target "
              << target << ")\n";
    checks_.push_back({std::move(what), measured, target, pass});
  }

  bool passed() const {
    for (const Check& c : checks_)
      if (!c.pass) return false;
    return true;
  }

  void save(const OutputOptions& out) const {
    if (!out.enabled()) return;
    std::ofstream f(out.file("reproduce_" + name_ + ".csv"));
    f << "check,measured,target,status\n";
    for (const Check& c : checks_)
      f << '"' << c.name << "\"," << c.measured << ",\"" << c.target << "\","
        << (c.pass ? "PASS" : "FAIL") << '\n';
  }

 private:
  std::string name_;
  std::vector<Check> checks_;
};

std::string num(double v) { return format_double(v); }

bool two_accumulation_points(Recipe& r, const OutputOptions& out) {
  const double R = 2.0;
  const std::size_t depth = std::size_t{1} << 22;
  CascadeMeasure m = build_cascade(WeightProfile::geometric_blocks(R, 1), 2.0, depth);
  PartitionTable table = build_table(m, depth, 2.0);
  auto k = geometric_block_bases(R, depth, 1);

  std::vector<double> ln_eps, ln_eta;
  std::vector<double> eta_target;
  for (std::size_t l = 0; l < k.size(); ++l) {
    if (2 * static_cast<std::size_t>(k[l]) <= depth) ln_eps.push_back(-2.0 * k[l] * kLn2);
    if (l + 1 < k.size() && static_cast<std::size_t>(k[l] + k[l + 1]) <= depth) {
      ln_eta.push_back(-static_cast<double>(k[l] + k[l + 1]) * kLn2);
      eta_target.push_back(1.0 / (1.0 + static_cast<double>(k[l + 1]) / k[l]));
    }
  }
  SequenceEstimate along_eps = sequence_estimate(table, ln_eps, 5);
  SequenceEstimate along_eta = sequence_estimate(table, ln_eta, 5);

  r.check("secant liminf along 4^-k_n", num(along_eps.liminf), "1/2 +- 0.01",
          std::abs(along_eps.liminf - 0.5) <= 0.01);
  r.check("secant limsup along 4^-k_n", num(along_eps.limsup), "1/2 +- 0.01",
          std::abs(along_eps.limsup - 0.5) <= 0.01);
  double worst = 0.0;
  std::size_t first = along_eta.values.size() - along_eta.tail_terms;
  for (std::size_t i = first; i < along_eta.values.size(); ++i)
    worst = std::max(worst, std::abs(along_eta.values[i] - eta_target[i]));
  r.check("secant along 2^-(k_n + k_n+1) vs 1/(1 + k_n+1/k_n)", "max deviation " + num(worst),
          "<= 0.01", worst <= 0.01);
  r.check("distinct accumulation points", num(along_eps.liminf - along_eta.limsup), "> 0.1",
          along_eps.liminf - along_eta.limsup > 0.1);
  if (!along_eps.warning.empty()) std::cout << "note: " << along_eps.warning << '\n';

  if (out.enabled()) {
    std::ofstream f(out.file("thm5.2_sequences.csv"));
    f << "sequence,minus_ln_eps,secant\n";
    for (std::size_t i = 0; i < along_eps.values.size(); ++i)
      f << "eps," << num(-table.row(along_eps.rows[i]).ln_eps) << ','
        << num(along_eps.values[i]) << '\n';
    for (std::size_t i = 0; i < along_eta.values.size(); ++i)
      f << "eta," << num(-table.row(along_eta.rows[i]).ln_eps) << ','
        << num(along_eta.values[i]) << '\n';
  }
  return r.passed();
}

bool block48_averages(Recipe& r, const OutputOptions& out) {
  const WeightProfile profile = WeightProfile::block48();
  std::vector<std::size_t> cps;
  for (std::size_t p = 1; p <= 48 * 48 * 48; p *= 48)
    for (std::size_t c : {p, 12 * p, 36 * p}) cps.push_back(c);
  auto stats = running_stats(profile, cps, true);
  const Rational targets[] = {Rational(30, 47), Rational(5, 94), Rational(193, 282)};
  for (std::size_t i = 0; i < stats.size(); ++i) {
    Rational avg = stats[i].average_exact();
    r.check("average at n = " + std::to_string(stats[i].n), avg.to_string(),
            targets[i % 3].to_string(), avg == targets[i % 3]);
  }
  Rational fixed = (Rational(30, 47) + Rational(30)) / Rational(48);
  r.check("fixed point (30/47 + 30) / 48", fixed.to_string(), "30/47", fixed == Rational(30, 47));

  std::size_t n = kBlock48Depth;
  std::size_t cp[] = {n};
  double fit = running_stats(profile, cp, false)[0].normalized_weighted();
  r.check("(6/n^3) sum k(n-k) a_k at n = 48^4", num(fit), "> 0.70 (asymptote 49/64)",
          fit > 0.70);

  CascadeMeasure m = build_cascade(profile, 2.0, n);
  PartitionTable table = build_table(m, n, 2.0);
  double sup = 0.0;
  for (std::size_t i = n / 2; i <= n; ++i) sup = std::max(sup, secant_at_row(table, i));
  r.check("secant tail sup", num(sup), "<= 193/282 + 0.005 = " + num(193.0 / 282 + 0.005),
          sup <= 193.0 / 282 + 0.005);
  r.check("best fit minus secant limsup", num(fit - sup), "> 0.01", fit - sup > 0.01);

  std::size_t levels[] = {48, 48 * 48, 48 * 48 * 48};
  GapReport gap = lsq_gap_check(table, 2.0, levels);
  r.check("|m_x - m~_n| n bounded over n = 48, 48^2, 48^3",
          "max/median " + num(gap.ratio), "< 10", gap.bounded);

  if (out.enabled()) {
    std::ofstream f(out.file("sec8_stats.csv"));
    write_stats_csv(f, stats);
    std::ofstream g(out.file("sec8_gap.csv"));
    write_gap_csv(g, gap);
  }
  return r.passed();
}

bool ratio_bound(Recipe& r, const OutputOptions& out) {
  const std::size_t depth = 16;
  std::vector<double> eps;
  for (int n = 3; n <= 10; ++n) eps.push_back(std::ldexp(1.0, -n));
  std::vector<std::pair<std::string, WeightProfile>> measures{
      {"lebesgue", WeightProfile::constant(1.0)},
      {"half", WeightProfile::constant(0.5)},
      {"block48", WeightProfile::block48()},
  };
  std::ofstream csv;
  if (out.enabled()) {
    csv.open(out.file("lemma2.3_ratio.csv"));
    csv << "measure,q,ln_eps,ln_ratio,lower_bound,upper_bound\n";
  }
  for (double q : {0.5, 2.0}) {
    for (const auto& [name, profile] : measures) {
      CascadeMeasure m = build_cascade(profile, q, depth);
      RatioReport rep = check_ratio_bound(m, q, eps, depth);
      double lo = 1e300, hi = -1e300;
      for (const RatioRow& row : rep.rows) {
        lo = std::min(lo, std::exp(row.ln_ratio));
        hi = std::max(hi, std::exp(row.ln_ratio));
        if (csv)
          csv << name << ',' << num(q) << ',' << num(row.ln_eps) << ',' << num(row.ln_ratio)
              << ',' << num(-std::log(rep.C)) << ',' << num(std::log(rep.C)) << '\n';
      }
      r.check(name + " q=" + num(q) + " ratio range",
              "[" + num(lo) + ", " + num(hi) + "]",
              "[1/C, C] with C = " + num(rep.C), rep.all_within());
    }
  }
  return r.passed();
}

bool block48_indices(Recipe& r, const OutputOptions& out) {
  CascadeMeasure m = build_cascade(WeightProfile::block48(), 2.0, kBlock48Depth);
  DimensionConfig cfg;
  // Tail from 48^3 to 48^4: wide enough to hold a full 0-block and 1-block.
  cfg.tail_fraction = 47.0 / 48.0;
  for (double L : {48.0, 48.0 * 48, 48.0 * 48 * 48}) cfg.matuszewska_windows.push_back(L * kLn2);
  DimensionReport rep = dimension_report(m, 2.0, kBlock48Depth, cfg);

  for (const MatuszewskaFit& w : rep.sweep) {
    std::string at = " at L = " + num(w.L / kLn2) + " ln 2";
    r.check("beta" + at, num(w.beta), "<= 0.06 (D-- = 0)", w.beta <= 0.06);
    r.check("alpha" + at, num(w.alpha), ">= 0.94 (D++ = 1)", w.alpha >= 0.94);
  }
  r.check("D- (tail inf of secants)", num(rep.D_minus), "5/94 = " + num(5.0 / 94),
          std::abs(rep.D_minus - 5.0 / 94) <= 0.06);
  r.check("D+ (tail sup of secants)", num(rep.D_plus), "193/282 = " + num(193.0 / 282),
          std::abs(rep.D_plus - 193.0 / 282) <= 0.06);
  r.check("ordering D-- <= D- <= D+ <= D++",
          num(rep.D_mm) + " <= " + num(rep.D_minus) + " <= " + num(rep.D_plus) + " <= " +
              num(rep.D_pp),
          "holds", rep.ordering_ok);
  if (out.enabled()) {
    std::ofstream f(out.file("sec9_report.txt"));
    write_report_kv(f, rep);
    std::ofstream g(out.file("sec9_matuszewska.csv"));
    write_matuszewska_csv(g, rep.sweep);
    if (out.plot)
      write_plot_script(out.file("sec9.gp"), "Matuszewska sweep, block-48", "L", "index",
                        {{"sec9_matuszewska.csv", "1", "2", "alpha"},
                         {"sec9_matuszewska.csv", "1", "3", "beta"}});
  }
  return r.passed();
}

const std::map<std::string, std::function<bool(Recipe&, const OutputOptions&)>>& recipes() {
  static const std::map<std::string, std::function<bool(Recipe&, const OutputOptions&)>> all{
      {"thm5.2", two_accumulation_points},
      {"sec8", block48_averages},
      {"lemma2.3", ratio_bound},
      {"sec9", block48_indices},
  };
  return all;
}

}  // namespace

std::vector<std::string> reproduce_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : recipes()) names.push_back(name);
  return names;
}

int cmd_reproduce(const std::string& name, const OutputOptions& out) {
  auto it = recipes().find(name);
  if (it == recipes().end()) throw UsageError("unknown recipe '" + name + "'");
  Recipe recipe(name);
  bool ok = it->second(recipe, out);
  recipe.save(out);
  std::cout << name << ": " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kAcceptanceFailure;
}

}  // namespace renyi::cli
