#include <fstream>

#include "cli.hpp"

namespace renyi::cli {

void write_plot_script(const std::filesystem::path& path, const std::string& title,
                       const std::string& xlabel, const std::string& ylabel,
                       const std::vector<PlotSeries>& series) {
  std::ofstream gp(path);
  if (!gp) throw UsageError("cannot write " + path.string());
  gp << "# gnuplot " << path.filename().string() << '\n'
     << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set title '" << title << "'\n"
     << "set xlabel '" << xlabel << "'\n"
     << "set ylabel '" << ylabel << "'\n"
     << "set grid\n"
     << "plot ";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const PlotSeries& s = series[i];
    gp << (i ? ", \\\n     " : "") << "'" << s.csv << "' using " << s.x_expr << ':' << s.y_expr
       << " with lines title '" << s.title << "'";
  }
  gp << '\n';
}

}  // namespace renyi::cli
