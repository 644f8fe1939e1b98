#include "vpt/datasets.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <ostream>

#include "vpt/error.hpp"
#include "vpt/sweep.hpp"

namespace vpt {

void RunConfig::validate() const {
  if (order < 1) throw DomainError("order must be at least 1");
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  if (g_min && g_max && !(*g_min < *g_max)) throw DomainError("gmin must be below gmax");
  if (points && *points < 2) throw DomainError("points must be at least 2");
  if (!(cutoff_tol > 0.0) || !(root_tol > 0.0) || !(quad_tol > 0.0)) {
    throw DomainError("tolerances must be positive");
  }
  const int max_corr = static_cast<int>(oscillator_rate_corrections().size());
  if (corrections < 0 || corrections > max_corr || reference_corrections < 0 ||
      reference_corrections > max_corr) {
    throw DomainError("correction truncation must be in [0, " + std::to_string(max_corr) + "]");
  }
  if (basis_size < 1) throw DomainError("basis size must be positive");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

nlohmann::json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return *d;
  }
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

// Couplings here are in units of omega^3.
struct Grid {
  std::vector<double> reduced;
  std::vector<double> physical;
};

Grid build_grid(const RunConfig& cfg, double lo, double hi, int points, bool log, bool open_upper) {
  Grid grid;
  const bool use_log = cfg.log_grid.value_or(log && cfg.g_min.value_or(lo) > 0.0);
  const bool explicit_range = cfg.g_min.has_value() || cfg.g_max.has_value();
  grid.reduced = make_grid(cfg.g_min.value_or(lo), cfg.g_max.value_or(hi), cfg.points.value_or(points),
                           use_log ? GridKind::logarithmic : GridKind::linear,
                           open_upper && !explicit_range && !use_log);
  const double w3 = std::pow(cfg.omega, 3);
  for (double g : grid.reduced) grid.physical.push_back(g * w3);
  return grid;
}

PerturbationSeries working_series(const RunConfig& cfg, int order) {
  return PerturbationSeries::anharmonic_oscillator(std::max(order, 4), cfg.omega);
}

QuadratureOptions quadrature(const RunConfig& cfg) {
  QuadratureOptions q;
  q.rel_tol = cfg.quad_tol;
  return q;
}

struct Corrected {
  IterationTrace trace;
  CorrectedApproximant converged;
  CorrectedApproximant initial;
};

Corrected corrected_pair(const RunConfig& cfg, int order) {
  const auto series = working_series(cfg, order);
  const auto model = DiscontinuityModel::anharmonic_oscillator(cfg.omega, cfg.corrections);
  FixedPointOptions fp;
  fp.tolerance = cfg.cutoff_tol * std::pow(cfg.omega, 3);
  auto trace = fixed_point_cutoff(order, series, model, fp);
  CorrectedApproximant conv(series, model, order, trace.cutoff(), quadrature(cfg));
  CorrectedApproximant init(series, model, order, trace.cutoffs.front(), quadrature(cfg));
  return {std::move(trace), std::move(conv), std::move(init)};
}

std::string cutoff_note(const char* label, const IterationTrace& t, double omega) {
  return std::string(label) + " cut-off: initial " + format_number(t.cutoffs.front() / std::pow(omega, 3)) +
         ", converged " + format_number(t.cutoff() / std::pow(omega, 3)) + " (units of omega^3) after " +
         std::to_string(t.cutoffs.size() - 1) + " iterations";
}

}  // namespace

void write_csv(const Table& table, std::ostream& os) {
  for (const auto& n : table.notes) os << "# " << n << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
}

void write_json(const Table& table, std::ostream& os) {
  nlohmann::ordered_json j;
  j["notes"] = table.notes;
  j["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r;
    for (std::size_t i = 0; i < row.size(); ++i) r[table.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  os << j.dump(2) << '\n';
}

Table coefficients_table(int order) {
  const auto exact = bender_wu_coefficients(order);
  Table t;
  t.notes.push_back("ground-state series of H = p^2/2 + omega^2 x^2/2 + g x^4, E = omega sum_n E_n (g/omega^3)^n");
  t.columns = {"n", "rational", "decimal"};
  for (int n = 0; n <= order; ++n) {
    t.rows.push_back({static_cast<long long>(n), to_rational_string(exact[n]), to_double(exact[n])});
  }
  return t;
}

Table iteration_table(const IterationTrace& trace) {
  Table t;
  t.notes.push_back("order N = " + std::to_string(trace.order));
  t.notes.push_back(std::string("converged: ") + (trace.converged ? "true" : "false") +
                    ", tolerance " + format_number(trace.tolerance));
  t.notes.push_back("final cut-off " + format_number(trace.cutoff()));
  const std::size_t ncoef = trace.coefficient_snapshots.front().size();
  t.columns = {"iteration", "cutoff", "step"};
  for (std::size_t k = 0; k < ncoef; ++k) t.columns.push_back("E" + std::to_string(k));
  for (std::size_t i = 0; i < trace.cutoffs.size(); ++i) {
    std::vector<Cell> row{static_cast<long long>(i), trace.cutoffs[i],
                          i ? trace.cutoffs[i] - trace.cutoffs[i - 1] : 0.0};
    for (double c : trace.coefficient_snapshots[i]) row.emplace_back(c);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table resummation_table(const RunConfig& cfg) {
  cfg.validate();
  const auto grid = build_grid(cfg, 0.01, 1000.0, 121, true, false);
  const auto series = working_series(cfg, cfg.order);
  const auto appr = build_reexpansion(series, cfg.order);
  const auto corr = corrected_pair(cfg, cfg.order);
  const auto plain = parallel::variational_sweep(appr, grid.physical);

  std::vector<double> safe = grid.physical;
  std::vector<bool> singular(safe.size(), false);
  for (std::size_t i = 0; i < safe.size(); ++i) singular[i] = (safe[i] == -corr.converged.cutoff());
  for (std::size_t i = 0; i < safe.size(); ++i) if (singular[i]) safe[i] = 0.0;
  const auto bar = parallel::corrected_sweep(corr.converged, safe);

  Table t;
  t.notes.push_back("order N = " + std::to_string(cfg.order) + ", omega = " + format_number(cfg.omega));
  t.notes.push_back(cutoff_note("subtraction", corr.trace, cfg.omega));
  t.notes.push_back("W = plain variational energy; Wbar = cut-corrected energy; imaginary parts on the lower edge");
  t.columns = {"g", "omega_re", "omega_im", "W_re", "W_im", "branch", "stationary", "Wbar_re", "Wbar_im"};
  const double nan = std::nan("");
  for (std::size_t i = 0; i < grid.physical.size(); ++i) {
    const auto& e = plain[i];
    t.rows.push_back({grid.physical[i], e.omega_used.value.real(), e.omega_used.value.imag(),
                      e.value.real(), e.value.imag(),
                      std::string(e.branch == BranchTag::real ? "real" : "complex"),
                      static_cast<long long>(e.omega_used.residual <= cfg.root_tol),
                      singular[i] ? nan : bar[i].value.real(), singular[i] ? nan : bar[i].value.imag()});
  }
  return t;
}

namespace {

// Leading rate times the reciprocal-series form of the correction factor. The
// plain truncated factor 1 - (95/72) x changes sign at x ~ 0.76, inside the
// plotted range; the reciprocal form agrees with it to the same order and
// stays positive.
double reference_disc(double lambda, double omega, int terms) {
  const auto& c = oscillator_rate_corrections();
  // Taylor coefficients of 1 / C, from C * (1/C) = 1 order by order.
  std::vector<double> inv(terms + 1, 0.0);
  inv[0] = 1.0;
  for (int n = 1; n <= terms; ++n) {
    double acc = 0.0;
    for (int i = 1; i <= n; ++i) acc += c[i - 1] * inv[n - i];
    inv[n] = -acc;
  }
  const double x = 3.0 * lambda / (omega * omega * omega);
  double denom = 0.0;
  for (int n = terms; n >= 0; --n) denom = denom * x + inv[n];
  return semiclassical_disc(lambda, DiscontinuityModel::anharmonic_oscillator(omega, 0)) / denom;
}

Table positive_figure(int id, const RunConfig& cfg) {
  const auto grid = build_grid(cfg, 0.01, 1000.0, 121, true, false);
  for (double g : grid.physical) {
    if (g < 0.0) throw DomainError("figure " + std::to_string(id) + " needs a nonnegative grid");
  }
  OracleConfig oc;
  oc.basis_size = cfg.basis_size;
  const auto exact = parallel::oracle_sweep(grid.physical, cfg.omega, oc);
  Table t;
  t.notes.push_back("ratio of resummed ground-state energies to basis diagonalization, omega = " +
                    format_number(cfg.omega));
  if (id == 1) {
    const auto s = working_series(cfg, 3);
    const auto w1 = parallel::variational_sweep(build_reexpansion(s, 1), grid.physical);
    const auto w3 = parallel::variational_sweep(build_reexpansion(s, 3), grid.physical);
    const auto c1 = corrected_pair(cfg, 1);
    const auto b1 = parallel::corrected_sweep(c1.converged, grid.physical);
    t.notes.push_back(cutoff_note("N=1", c1.trace, cfg.omega));
    t.columns = {"g_reduced", "exact", "Wbar1_ratio", "W1_ratio", "W3_ratio"};
    for (std::size_t i = 0; i < grid.physical.size(); ++i) {
      t.rows.push_back({grid.reduced[i], exact[i], b1[i].value.real() / exact[i],
                        w1[i].value.real() / exact[i], w3[i].value.real() / exact[i]});
    }
  } else {
    const auto s = working_series(cfg, 3);
    const auto w3 = parallel::variational_sweep(build_reexpansion(s, 3), grid.physical);
    const auto c3 = corrected_pair(cfg, 3);
    const auto b3 = parallel::corrected_sweep(c3.converged, grid.physical);
    const auto b3i = parallel::corrected_sweep(c3.initial, grid.physical);
    t.notes.push_back(cutoff_note("N=3", c3.trace, cfg.omega));
    t.columns = {"g_reduced", "exact", "Wbar3_ratio", "W3_ratio", "Wbar3_initial_cutoff_ratio"};
    for (std::size_t i = 0; i < grid.physical.size(); ++i) {
      t.rows.push_back({grid.reduced[i], exact[i], b3[i].value.real() / exact[i],
                        w3[i].value.real() / exact[i], b3i[i].value.real() / exact[i]});
    }
  }
  return t;
}

Table negative_figure(int id, const RunConfig& cfg) {
  const auto grid = build_grid(cfg, -1.0, 0.0, 200, false, true);
  for (double g : grid.physical) {
    if (g >= 0.0) throw DomainError("figure " + std::to_string(id) + " needs a negative grid");
  }
  const auto leading = DiscontinuityModel::anharmonic_oscillator(cfg.omega, 0);
  std::vector<double> im_lead, im_ref;
  for (double g : grid.physical) {
    im_lead.push_back(semiclassical_disc(-g, leading));
    im_ref.push_back(reference_disc(-g, cfg.omega, cfg.reference_corrections));
  }

  Table t;
  t.notes.push_back("imaginary parts on the lower edge of the cut, omega = " + format_number(cfg.omega));
  t.notes.push_back("reference = leading semiclassical rate / (1 + sum_i d_i (3|g|/omega^3)^i), d = reciprocal of the "
                    "first " + std::to_string(cfg.reference_corrections) +
                    " rate-correction terms; stands in for an exact resonance width");

  const auto s = working_series(cfg, 3);
  const auto w1 = parallel::variational_sweep(build_reexpansion(s, 1), grid.physical);
  const auto w3 = parallel::variational_sweep(build_reexpansion(s, 3), grid.physical);
  if (id == 2) {
    const auto c1 = corrected_pair(cfg, 1);
    const auto b1 = parallel::corrected_sweep(c1.converged, grid.physical);
    t.notes.push_back(cutoff_note("N=1", c1.trace, cfg.omega));
    t.notes.push_back("reduced imaginary part r = Im / Im_leading_semiclassical");
    t.columns = {"g_reduced", "im_leading", "im_reference", "r_Wbar1", "r_W1", "r_W3", "r_reference"};
    for (std::size_t i = 0; i < grid.physical.size(); ++i) {
      const double d = im_lead[i];
      t.rows.push_back({grid.reduced[i], d, im_ref[i], b1[i].value.imag() / d, w1[i].value.imag() / d,
                        w3[i].value.imag() / d, im_ref[i] / d});
    }
    return t;
  }

  const auto c3 = corrected_pair(cfg, 3);
  const auto b3 = parallel::corrected_sweep(c3.converged, grid.physical);
  const auto b3i = parallel::corrected_sweep(c3.initial, grid.physical);
  t.notes.push_back(cutoff_note("N=3", c3.trace, cfg.omega));
  if (id == 4) {
    t.columns = {"g_reduced", "im_Wbar3", "im_Wbar3_initial_cutoff", "im_W3", "im_reference"};
    for (std::size_t i = 0; i < grid.physical.size(); ++i) {
      t.rows.push_back({grid.reduced[i], b3[i].value.imag(), b3i[i].value.imag(), w3[i].value.imag(),
                        im_ref[i]});
    }
  } else {
    t.notes.push_back("ratios of imaginary parts to the reference");
    t.columns = {"g_reduced", "Wbar3_ratio", "W3_ratio", "Wbar3_initial_cutoff_ratio"};
    for (std::size_t i = 0; i < grid.physical.size(); ++i) {
      const double r = im_ref[i];
      t.rows.push_back({grid.reduced[i], b3[i].value.imag() / r, w3[i].value.imag() / r,
                        b3i[i].value.imag() / r});
    }
  }
  return t;
}

}  // namespace

Table figure_table(int id, const RunConfig& cfg) {
  cfg.validate();
  switch (id) {
    case 1:
    case 3:
      return positive_figure(id, cfg);
    case 2:
    case 4:
    case 5:
      return negative_figure(id, cfg);
    default:
      throw DomainError("figure id must be 1..5, got " + std::to_string(id));
  }
}

}  // namespace vpt
