#include "vpt/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <sstream>

#include "vpt/dispersion.hpp"
#include "vpt/error.hpp"
#include "vpt/oracle.hpp"
#include "vpt/series.hpp"
#include "vpt/sweep.hpp"
#include "vpt/variational.hpp"

namespace vpt {
namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

CriterionResult make_result(int id, std::string name) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  return r;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

class Suite {
 public:
  explicit Suite(const AcceptanceConfig& cfg) : cfg_(cfg) {}

  PerturbationSeries series(int order, double omega = 1.0) const {
    if (!cfg_.fault) return PerturbationSeries::anharmonic_oscillator(order, omega);
    PerturbationSeries s;
    s.omega = omega;
    s.exact = detail::bender_wu_coefficients_with_override(order, cfg_.fault->index, cfg_.fault->value);
    for (const auto& q : s.exact) s.coefficients.push_back(to_double(q));
    return s;
  }

  const IterationTrace& trace(int order) {
    auto& slot = order == 1 ? trace1_ : trace3_;
    if (!slot) {
      FixedPointOptions fp;
      fp.tolerance = cfg_.cutoff_tol;
      slot = fixed_point_cutoff(order, series(4), DiscontinuityModel::anharmonic_oscillator(1.0, 0), fp);
    }
    return *slot;
  }

  CorrectedApproximant corrected(int order) {
    return CorrectedApproximant(series(4), DiscontinuityModel::anharmonic_oscillator(1.0, 0), order,
                                trace(order).cutoff());
  }

  const std::vector<double>& oracle(const std::vector<double>& grid) {
    auto it = std::find_if(oracle_cache_.begin(), oracle_cache_.end(),
                           [&](const auto& e) { return e.first == grid; });
    if (it != oracle_cache_.end()) return it->second;
    oracle_cache_.emplace_back(grid, parallel::oracle_sweep(grid, 1.0));
    return oracle_cache_.back().second;
  }

  double max_rel_error(const std::vector<ResummedEnergy>& w, const std::vector<double>& grid) {
    const auto& ex = oracle(grid);
    double m = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) m = std::max(m, rel_err(w[i].value.real(), ex[i]));
    return m;
  }

  CriterionResult c1() {
    auto r = make_result(1, "coefficient exactness");
    static const char* expected[] = {"1/2", "3/4", "-21/8", "333/16", "-30885/128", "916731/256"};
    const auto s = series(5);
    int mismatches = 0;
    std::ostringstream os;
    for (int n = 0; n <= 5; ++n) {
      if (s.exact[n] != mpq_class(expected[n])) {
        ++mismatches;
        os << "E" << n << "=" << to_rational_string(s.exact[n]) << " expected " << expected[n] << "; ";
      }
    }
    r.measured = mismatches;
    r.passed = mismatches == 0;
    r.detail = r.passed ? "E0..E5 match exactly" : os.str();
    return r;
  }

  CriterionResult c2() {
    auto r = make_result(2, "large-order behavior");
    const auto params = LargeOrderParams::anharmonic_oscillator(1.0);
    const auto s = series(25);
    double worst = 0.0;
    int worst_k = 0;
    for (const auto& row : large_order_ratio_check(s, params, 8, 25)) {
      const double scaled = std::abs(row.residual) * row.k * row.k;
      if (scaled > worst) worst = scaled, worst_k = row.k;
    }
    const double e25 = std::abs(s.coefficients[25] / asymptotic_coefficient(25, params, false) - 1.0);
    r.measured = worst;
    r.threshold = 5.0;
    r.passed = worst <= 5.0 && e25 <= 0.06;
    r.detail = "max k^2|residual| = " + fmt("%.4g", worst) + " at k=" + std::to_string(worst_k) +
               " (<= 5); |E25/leading - 1| = " + fmt("%.4g", e25) + " (<= 0.06)";
    return r;
  }

  CriterionResult c3() {
    auto r = make_result(3, "W1 accuracy");
    const auto grid = make_grid(0.1, 1000.0, 81, GridKind::logarithmic);
    const auto w = parallel::variational_sweep(build_reexpansion(series(1), 1), grid);
    const double m = max_rel_error(w, grid);
    const double last = rel_err(w.back().value.real(), oracle(grid).back());
    r.measured = m;
    r.threshold = 0.025;
    r.passed = m <= 0.025 && last >= 0.015 && last <= 0.025;
    r.detail = "max rel error " + fmt("%.4g", m) + " (<= 0.025); at g=1000 " + fmt("%.4g", last) +
               " (in [0.015, 0.025])";
    return r;
  }

  CriterionResult c4() {
    auto r = make_result(4, "W3 accuracy");
    const auto grid = make_grid(0.1, 1000.0, 81, GridKind::logarithmic);
    const auto w = parallel::variational_sweep(build_reexpansion(series(3), 3), grid);
    const double m = max_rel_error(w, grid);
    r.measured = m;
    r.threshold = 0.003;
    r.passed = m <= 0.003;
    r.detail = "max rel error " + fmt("%.4g", m) + " (<= 0.003)";
    return r;
  }

  CriterionResult c5() {
    auto r = make_result(5, "moment machinery");
    const double tol = cfg_.quad_match_tol;
    const auto params = LargeOrderParams::anharmonic_oscillator(1.0);
    double worst_quad = 0.0, worst_full = 0.0;
    bool quadrature_failed = false;
    QuadratureOptions q;
    q.rel_tol = std::max(tol * 1e-2, 1e-14);
    q.max_intervals = 20000;
    for (int trunc : {0, 3}) {
      const auto model = DiscontinuityModel::anharmonic_oscillator(1.0, trunc);
      for (double gc : make_grid(1e-3, 10.0, 9, GridKind::logarithmic)) {
        for (int k = 0; k <= 10; ++k) {
          const double a = moment_truncated(k, gc, model);
          try {
            worst_quad = std::max(worst_quad, rel_err(a, moment_truncated_quadrature(k, gc, model, q)));
          } catch (const ConvergenceError&) {
            quadrature_failed = true;
            worst_quad = std::numeric_limits<double>::infinity();
          }
        }
      }
    }
    const auto leading = DiscontinuityModel::anharmonic_oscillator(1.0, 0);
    for (int k = 0; k <= 10; ++k) {
      worst_full = std::max(worst_full,
                            rel_err(moment_full(k, leading), asymptotic_coefficient(k, params, false)));
    }
    r.measured = worst_quad;
    r.threshold = tol;
    r.passed = worst_quad <= tol && worst_full <= 1e-12;
    // Agreement below ~1e-14 is out of reach in double precision whatever the method.
    r.tolerance_bound = !r.passed && tol < 1e-10 && worst_full <= 1e-12 &&
                        (quadrature_failed || worst_quad <= 1e-10);
    r.detail = "closed form vs quadrature " + fmt("%.3g", worst_quad) + " (<= " + fmt("%.3g", tol) +
               "); full moment vs leading coefficient " + fmt("%.3g", worst_full) + " (<= 1e-12)";
    if (r.tolerance_bound) r.detail += "; tolerance below attainable double-precision agreement";
    return r;
  }

  CriterionResult fixed_point(int id, int order, const std::vector<double>& expected, double lo, double hi) {
    auto r = make_result(id, "fixed point N=" + std::to_string(order));
    const auto& t = trace(order);
    const auto& e = t.final_coefficients();
    double worst = 0.0;
    std::ostringstream os;
    os.precision(8);
    os << "E' =";
    for (std::size_t k = 0; k < expected.size(); ++k) {
      const double d = rel_err(e[k], expected[k]);
      worst = std::max(worst, d);
      os << ' ' << e[k] << " (" << fmt("%.2e", d) << ")";
    }
    const double cut = t.cutoff();
    r.measured = worst;
    r.threshold = 0.005;
    r.passed = t.converged && worst <= 0.005 && cut >= lo && cut <= hi;
    os << "; max rel dev " << fmt("%.4g", worst) << " (<= 0.005); cut-off " << fmt("%.10g", cut) << " in ["
       << lo << ", " << hi << "] after " << t.cutoffs.size() - 1 << " iterations";
    r.detail = os.str();
    return r;
  }

  CriterionResult c8() {
    auto r = make_result(8, "improvement claims");
    const auto grid = make_grid(1.0, 1000.0, 61, GridKind::logarithmic);
    double ratio[2];
    std::string detail;
    for (int i = 0; i < 2; ++i) {
      const int n = i == 0 ? 1 : 3;
      const double plain = max_rel_error(parallel::variational_sweep(build_reexpansion(series(n), n), grid), grid);
      const double corr = max_rel_error(parallel::corrected_sweep(corrected(n), grid), grid);
      ratio[i] = corr / plain;
      detail += "N=" + std::to_string(n) + ": " + fmt("%.4g", corr) + " vs " + fmt("%.4g", plain) +
                " ratio " + fmt("%.3f", ratio[i]) + (i == 0 ? " (<= 0.75); " : " (<= 0.33)");
    }
    r.measured = std::max(ratio[0] / 0.75, ratio[1] / 0.33);
    r.threshold = 1.0;
    r.passed = ratio[0] <= 0.75 && ratio[1] <= 0.33;
    r.detail = detail;
    return r;
  }

  CriterionResult c9() {
    auto r = make_result(9, "origin exactness");
    double worst = 0.0;
    for (int n : {1, 3}) worst = std::max(worst, std::abs(corrected(n)(0.0).value.real() - 0.5));
    r.measured = worst;
    r.threshold = 1e-10;
    r.passed = worst <= 1e-10;
    r.detail = "max |Wbar(0) - 1/2| = " + fmt("%.3g", worst);
    return r;
  }

  CriterionResult c10() {
    auto r = make_result(10, "imaginary-part structure");
    const auto w1 = build_reexpansion(series(1), 1);
    const double expected_bp = 1.0 / (9.0 * std::sqrt(3.0));
    const double bp = branch_point_numeric(w1).g_bp;
    const double bp_err = std::abs(bp - expected_bp) / expected_bp;
    auto window = make_grid(-expected_bp * (1 - 1e-9), 0.0, 201, GridKind::linear);
    double max_im_window = 0.0;
    for (const auto& e : evaluate_along(w1, window)) max_im_window = std::max(max_im_window, std::abs(e.value.imag()));

    // exp(-1/(3|g|)) underflows for |g| below ~5e-4, so the sign test starts at 1e-3.
    const auto neg = make_grid(-1.0, -1e-3, 400, GridKind::linear);
    double max_im = -1.0;
    double splice = 0.0;
    const auto leading = DiscontinuityModel::anharmonic_oscillator(1.0, 0);
    for (int n : {1, 3}) {
      const auto c = corrected(n);
      std::vector<double> grid;
      for (double g : neg) if (g != -c.cutoff()) grid.push_back(g);
      const auto vals = parallel::corrected_sweep(c, grid);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        max_im = std::max(max_im, vals[i].value.imag());
        if (grid[i] > -c.cutoff()) {
          const double sc = semiclassical_disc(-grid[i], leading);
          splice = std::max(splice, std::abs(vals[i].value.imag() - sc) / std::abs(sc));
        }
      }
    }
    r.measured = splice;
    r.threshold = 1e-8;
    r.passed = bp_err <= 1e-10 && max_im_window == 0.0 && max_im < 0.0 && splice <= 1e-8;
    r.detail = "g_bp rel err " + fmt("%.3g", bp_err) + "; max |Im W1| on window " + fmt("%.3g", max_im_window) +
               "; max Im Wbar on [-1,-1e-3] " + fmt("%.3g", max_im) + " (< 0); splice rel dev " +
               fmt("%.3g", splice) + " (<= 1e-8)";
    return r;
  }

  CriterionResult c11() {
    auto r = make_result(11, "scaling relation");
    const std::vector<double> gs{-0.03, 0.05, 0.5, 3.0, 40.0};
    double worst_w = 0.0, worst_e = 0.0;
    for (int n : {1, 3}) {
      const auto unit = build_reexpansion(series(n, 1.0), n);
      for (double omega : {0.5, 2.0}) {
        const auto scaled = build_reexpansion(series(n, omega), n);
        const double w3 = omega * omega * omega;
        for (double g : gs) {
          const auto a = evaluate(scaled, g * w3).value;
          const auto b = omega * evaluate(unit, g).value;
          worst_w = std::max(worst_w, std::abs(a - b) / std::abs(b));
        }
      }
    }
    for (double omega : {0.5, 2.0}) {
      const double w3 = omega * omega * omega;
      for (double g : {0.05, 0.5, 3.0, 40.0}) {
        worst_e = std::max(worst_e, rel_err(exact_energy(g * w3, omega), omega * exact_energy(g, 1.0)));
      }
    }
    r.measured = worst_w;
    r.threshold = 1e-12;
    r.passed = worst_w <= 1e-12 && worst_e <= 1e-10;
    r.detail = "W_N " + fmt("%.3g", worst_w) + " (<= 1e-12); exact " + fmt("%.3g", worst_e) + " (<= 1e-10)";
    return r;
  }

  CriterionResult c12() {
    auto r = make_result(12, "oracle self-consistency");
    double worst = 0.0;
    for (double g : {0.1, 1.0, 1000.0}) {
      OracleConfig a, b;
      b.basis_size = 2 * a.basis_size;
      const double ea = exact_energy(g, 1.0, a);
      worst = std::max(worst, rel_err(exact_energy(g, 1.0, b), ea));
    }
    const bool origin = exact_energy(0.0, 1.0) == 0.5 && exact_energy(0.0, 2.0) == 1.0;
    r.measured = worst;
    r.threshold = 1e-10;
    r.passed = worst <= 1e-10 && origin;
    r.detail = "basis doubling " + fmt("%.3g", worst) + " (<= 1e-10); g=0 gives omega/2 " +
               (origin ? "exactly" : "NOT exactly");
    return r;
  }

 private:
  AcceptanceConfig cfg_;
  std::optional<IterationTrace> trace1_, trace3_;
  std::vector<std::pair<std::vector<double>, std::vector<double>>> oracle_cache_;
};

CriterionResult guarded(int id, const char* name, const std::function<CriterionResult()>& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    auto r = make_result(id, name);
    r.detail = std::string("error: ") + e.what();
    return r;
  }
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config) {
  Suite s(config);
  std::vector<CriterionResult> out;
  out.push_back(guarded(1, "coefficient exactness", [&] { return s.c1(); }));
  out.push_back(guarded(2, "large-order behavior", [&] { return s.c2(); }));
  out.push_back(guarded(3, "W1 accuracy", [&] { return s.c3(); }));
  out.push_back(guarded(4, "W3 accuracy", [&] { return s.c4(); }));
  out.push_back(guarded(5, "moment machinery", [&] { return s.c5(); }));
  out.push_back(guarded(6, "fixed point N=1", [&] {
    return s.fixed_point(6, 1, {0.50117, 0.72905, -2.24059, 13.54295, -98.64571}, 0.060, 0.072);
  }));
  out.push_back(guarded(7, "fixed point N=3", [&] {
    return s.fixed_point(7, 3, {0.5000477, 0.74871, -2.58993, 19.84402, -214.12062}, 0.038, 0.046);
  }));
  out.push_back(guarded(8, "improvement claims", [&] { return s.c8(); }));
  out.push_back(guarded(9, "origin exactness", [&] { return s.c9(); }));
  out.push_back(guarded(10, "imaginary-part structure", [&] { return s.c10(); }));
  out.push_back(guarded(11, "scaling relation", [&] { return s.c11(); }));
  out.push_back(guarded(12, "oracle self-consistency", [&] { return s.c12(); }));
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof head, "%s %2d  ", r.passed ? "PASS" : "FAIL", r.id);
  std::string line = head + r.name + ": " + r.detail;
  if (r.tolerance_bound) line += " [tolerance-bound]";
  return line;
}

}  // namespace vpt
