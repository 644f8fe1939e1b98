#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vpt/dispersion.hpp"

namespace vpt {

/// Settings shared by the command-line subcommands.
struct RunConfig {
  int order = 1;
  double omega = 1.0;
  // Grid in the dimensionless coupling g/omega^3; unset fields take per-command defaults.
  std::optional<double> g_min;
  std::optional<double> g_max;
  std::optional<int> points;
  std::optional<bool> log_grid;
  double root_tol = 1e-12;
  double cutoff_tol = 1e-10;
  double quad_tol = 1e-12;
  /// Rate-correction terms in the cut model used for subtraction and add-back.
  int corrections = 0;
  /// Rate-correction terms in the negative-g reference curve of the figures.
  int reference_corrections = 1;
  int basis_size = 16;

  /// Throws DomainError on inconsistent settings.
  void validate() const;
};

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> notes;  // emitted as '#' lines in CSV, "notes" in JSON
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// 17 significant digits, '.' decimal point.
std::string format_number(double v);

void write_csv(const Table& table, std::ostream& os);
void write_json(const Table& table, std::ostream& os);

/// n, exact rational, decimal.
Table coefficients_table(int order);

/// One row per cutoff iterate with the modified coefficients it produces.
Table iteration_table(const IterationTrace& trace);

/// W_N and the cut-corrected energy over the configured grid.
Table resummation_table(const RunConfig& config);

/// Datasets behind figures 1-5. Throws DomainError for other ids.
Table figure_table(int id, const RunConfig& config);

}  // namespace vpt
