#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "renyi/config.hpp"

namespace renyi::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kAcceptanceFailure = 3,
  kInvariantFailure = 4,
};

/// Thrown for missing inputs and bad flag combinations; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Measure description gathered from --config plus per-key flag overrides.
struct MeasureOptions {
  std::string config_path;
  std::optional<std::string> kind;
  std::optional<std::string> q;
  std::optional<std::string> depth;
  std::optional<std::string> a;
  std::optional<std::string> ratio;
  std::optional<std::string> k_seed;
  std::optional<std::string> values;

  MeasureSpec resolve() const;
};

struct OutputOptions {
  std::string out_dir;
  bool plot = false;

  bool enabled() const { return !out_dir.empty(); }
  /// Creates the directory on first use and returns dir / name.
  std::filesystem::path file(const std::string& name) const;
};

struct TableOptions {
  std::optional<std::size_t> n_max;
  std::optional<double> q_eval;
};

struct FilterOptions {
  std::optional<double> q;
  std::optional<std::size_t> depth;
  std::string levels = "3:10";
};

struct FitOptions {
  std::optional<double> q;
  std::optional<std::size_t> n_max;
  double tail_fraction = 0.5;
  std::vector<double> windows;  // in units of ln 2
};

int cmd_build(const MeasureOptions& m, const OutputOptions& out);
int cmd_table(const MeasureOptions& m, const TableOptions& t, const OutputOptions& out);
int cmd_filter(const MeasureOptions& m, const FilterOptions& f, const OutputOptions& out);
int cmd_fit(const MeasureOptions& m, const FitOptions& f, const OutputOptions& out);
int cmd_matuszewska(const MeasureOptions& m, const FitOptions& f, const OutputOptions& out);
int cmd_reproduce(const std::string& name, const OutputOptions& out);

std::vector<std::string> reproduce_names();

/// gnuplot script plotting columns of a CSV file on a log-log style view.
struct PlotSeries {
  std::string csv;
  std::string x_expr;  // gnuplot using-expression, e.g. "(-$1)"
  std::string y_expr;
  std::string title;
};
void write_plot_script(const std::filesystem::path& path, const std::string& title,
                       const std::string& xlabel, const std::string& ylabel,
                       const std::vector<PlotSeries>& series);

}  // namespace renyi::cli
