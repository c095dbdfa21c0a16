#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"
#include "renyi/errors.hpp"

namespace {

using namespace renyi::cli;

void add_measure_options(CLI::App* cmd, MeasureOptions& m) {
  cmd->add_option("-c,--config,--measure", m.config_path,
                  "measure config / descriptor file (key = value)");
  cmd->add_option("--kind", m.kind, "constant | block48 | geometric-blocks | explicit-list");
  cmd->add_option("--q", m.q, "build exponent q (> 0, != 1)");
  cmd->add_option("--depth", m.depth, "cascade depth N");
  cmd->add_option("--a", m.a, "constant profile value");
  cmd->add_option("--ratio", m.ratio, "geometric-blocks ratio R");
  cmd->add_option("--k-seed", m.k_seed, "geometric-blocks first base");
  cmd->add_option("--values", m.values, "explicit-list values, comma separated");
}

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("-o,--out", out.out_dir, "directory for CSV output");
  cmd->add_flag("--plot", out.plot, "also write a gnuplot script (needs --out)");
}

void add_fit_options(CLI::App* cmd, FitOptions& f) {
  cmd->add_option("--q-eval", f.q, "evaluation q (defaults to the build q)");
  cmd->add_option("--n-max", f.n_max, "deepest level used");
  cmd->add_option("--tail-fraction", f.tail_fraction, "fraction of scales forming the tail")
      ->check(CLI::Range(1e-9, 1.0));
  cmd->add_option("--windows", f.windows, "Matuszewska windows L in units of ln 2")
      ->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Renyi dimensions of cascade measures: partition functions, Gaussian "
               "filters and slope estimators"};
  app.require_subcommand(1);

  MeasureOptions measure;
  OutputOptions out;
  TableOptions table_opts;
  FilterOptions filter_opts;
  FitOptions fit_opts;
  std::string recipe;

  auto* build = app.add_subcommand("build", "build a cascade and write its descriptor");
  add_measure_options(build, measure);
  add_output_options(build, out);

  auto* table = app.add_subcommand("table", "partition table (ln_eps, ln_S) as CSV");
  add_measure_options(table, measure);
  add_output_options(table, out);
  table->add_option("--n-max", table_opts.n_max, "deepest level (defaults to depth)");
  table->add_option("--q-eval", table_opts.q_eval, "evaluate at another q (enumeration)");

  auto* filter = app.add_subcommand("filter", "Gaussian-filter ratio and monotonicity checks");
  add_measure_options(filter, measure);
  add_output_options(filter, out);
  filter->add_option("--q-eval", filter_opts.q, "evaluation q (defaults to the build q)");
  filter->add_option("--disc-depth", filter_opts.depth, "discretization depth (default 16)");
  filter->add_option("--levels", filter_opts.levels, "eps = 2^-n for n in lo:hi");

  auto* fit = app.add_subcommand("fit", "dimension report from every estimator");
  add_measure_options(fit, measure);
  add_output_options(fit, out);
  add_fit_options(fit, fit_opts);

  auto* matus = app.add_subcommand("matuszewska", "long-secant Matuszewska window sweep");
  add_measure_options(matus, measure);
  add_output_options(matus, out);
  add_fit_options(matus, fit_opts);

  auto* reproduce = app.add_subcommand("reproduce", "run a reproduction recipe");
  reproduce->add_option("name", recipe, "thm5.2 | sec8 | lemma2.3 | sec9")
      ->required()
      ->check(CLI::IsMember(reproduce_names()));
  add_output_options(reproduce, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*build) return cmd_build(measure, out);
    if (*table) return cmd_table(measure, table_opts, out);
    if (*filter) return cmd_filter(measure, filter_opts, out);
    if (*fit) return cmd_fit(measure, fit_opts, out);
    if (*matus) return cmd_matuszewska(measure, fit_opts, out);
    if (*reproduce) return cmd_reproduce(recipe, out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const renyi::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const renyi::InvariantError& e) {
    std::cerr << "invariant failure: " << e.what() << '\n';
    return kInvariantFailure;
  } catch (const renyi::QuadratureError& e) {
    std::cerr << "quadrature failure: " << e.what() << '\n';
    return kInvariantFailure;
  } catch (const renyi::Error& e) {
    // Domain, precision, resource and overflow errors all trace back to the
    // parameters the user chose.
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvariantFailure;
  }
  return kUsage;
}
