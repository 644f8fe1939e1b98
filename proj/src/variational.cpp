#include "vpt/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "vpt/error.hpp"

namespace vpt {

namespace {

using cplx = std::complex<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();

// binom(a, j) for real a.
double general_binomial(double a, int j) {
  double r = 1.0;
  for (int i = 0; i < j; ++i) r *= (a - i) / (i + 1);
  return r;
}

double falling(int k, int m) {
  double r = 1.0;
  for (int t = 0; t < m; ++t) r *= (k - t);
  return r;
}

// Omega^(3N-1+m) d^m W / dOmega^m from Laurent coefficients, not normalized.
std::vector<double> raw_derivative_numerator(const std::vector<double>& laurent, int lowest, int order,
                                             int m) {
  std::vector<double> out(3 * order + 1, 0.0);
  for (std::size_t i = 0; i < laurent.size(); ++i) {
    const int k = lowest + static_cast<int>(i);
    out[k + 3 * order - 1] += laurent[i] * falling(k, m);
  }
  return out;
}

std::string describe(const Polynomial& p) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  const auto c = p.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i];
  os << "] (ascending powers of Omega)";
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// approximant

VariationalApproximant::VariationalApproximant(PerturbationSeries base, int order)
    : base_(std::move(base)), order_(order) {
  if (order < 1) throw DomainError("build_reexpansion: order must be at least 1");
  if (base_.order() < order) {
    throw DomainError("build_reexpansion: series of order " + std::to_string(base_.order()) +
                      " cannot support N = " + std::to_string(order));
  }
  if (!(base_.omega > 0.0)) throw DomainError("build_reexpansion: omega must be positive");

  const int N = order_;
  const double w2 = base_.omega * base_.omega;
  f_table_.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    const double a = (p - q * n) / 2.0;
    for (int j = 0; j <= N - n; ++j) {
      f_table_[n].push_back(general_binomial(a, j) * ((j % 2) ? -1.0 : 1.0));
    }
  }

  // Omega^(1-3n-2j) (Omega^2 - omega^2)^j = sum_i C(j,i) (-omega^2)^(j-i) Omega^(1-3n-2j+2i)
  terms_.assign(N + 1, std::vector<double>(3 * N + 1, 0.0));
  for (int n = 0; n <= N; ++n) {
    const double En = base_.coefficients[n];
    for (int j = 0; j <= N - n; ++j) {
      double choose = 1.0;
      for (int i = 0; i <= j; ++i) {
        if (i > 0) choose = choose * (j - i + 1) / i;
        const int k = 1 - 3 * n - 2 * j + 2 * i;
        terms_[n][k - lowest_power()] += En * f_table_[n][j] * choose * std::pow(-w2, j - i);
      }
    }
  }
}

cplx VariationalApproximant::f(int n, cplx Omega) const {
  const cplx x = 1.0 - base_.omega * base_.omega / (Omega * Omega);
  cplx s = 0.0;
  const auto& row = f_table_.at(n);
  for (auto it = row.rbegin(); it != row.rend(); ++it) s = s * x + *it;
  return s;
}

std::vector<double> VariationalApproximant::laurent(double g) const {
  std::vector<double> out(3 * order_ + 1, 0.0);
  double gn = 1.0;
  for (int n = 0; n <= order_; ++n) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += terms_[n][i] * gn;
    gn *= g;
  }
  return out;
}

std::vector<double> VariationalApproximant::laurent_dg(double g) const {
  std::vector<double> out(3 * order_ + 1, 0.0);
  double gn = 1.0;  // g^(n-1)
  for (int n = 1; n <= order_; ++n) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += n * terms_[n][i] * gn;
    gn *= g;
  }
  return out;
}

VariationalApproximant build_reexpansion(const PerturbationSeries& base, int order) {
  return VariationalApproximant(base, order);
}

cplx eval_W(const VariationalApproximant& appr, double g, cplx Omega) {
  if (Omega == 0.0) throw DomainError("eval_W: W has a pole at Omega = 0");
  const auto& E = appr.base().coefficients;
  const cplx x = g / (Omega * Omega * Omega);
  cplx sum = 0.0;
  for (int n = appr.order(); n >= 0; --n) sum = sum * x + E[n] * appr.f(n, Omega);
  return Omega * sum;
}

cplx eval_W_derivative(const VariationalApproximant& appr, double g, cplx Omega, int m) {
  if (m == 0) return eval_W(appr, g, Omega);
  if (m < 0 || m > 2) throw DomainError("eval_W_derivative: m must be 0, 1 or 2");
  if (Omega == 0.0) throw DomainError("eval_W_derivative: pole at Omega = 0");
  const auto c = appr.laurent(g);
  cplx s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const int k = appr.lowest_power() + static_cast<int>(i);
    if (c[i] == 0.0) continue;
    s += c[i] * falling(k, m) * std::pow(Omega, k - m);
  }
  return s;
}

Polynomial stationarity_polynomial(const VariationalApproximant& appr, double g, int derivative_order) {
  if (derivative_order != 1 && derivative_order != 2) {
    throw DomainError("stationarity_polynomial: derivative order must be 1 or 2");
  }
  return Polynomial(raw_derivative_numerator(appr.laurent(g), appr.lowest_power(), appr.order(),
                                             derivative_order))
      .monic();
}

// ---------------------------------------------------------------------------
// candidates and selection

namespace {

double relative_residual(const VariationalApproximant& appr, double g, cplx z, int m) {
  const cplx w = eval_W(appr, g, z);
  const cplx d = eval_W_derivative(appr, g, z, m);
  const double denom = std::max(std::abs(w), std::numeric_limits<double>::min());
  return std::abs(d) * std::pow(std::abs(z), m) / denom;
}

// Member of a conjugate pair whose W has negative imaginary part.
OmegaCandidate lower_edge_member(const VariationalApproximant& appr, double g, OmegaCandidate c) {
  if (c.value.imag() == 0.0) return c;
  const cplx a = c.value;
  if (eval_W(appr, g, a).imag() > 0.0) c.value = std::conj(a);
  return c;
}

struct Nearest {
  int index = -1;
  double d1 = kInf;
  double d2 = kInf;
};

// Conjugation-invariant nearest candidate among those of the given kind.
Nearest nearest_class(const std::vector<OmegaCandidate>& cands, cplx target,
                      std::optional<CandidateKind> kind) {
  Nearest best;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const auto& c = cands[i];
    if (kind && c.kind != *kind) continue;
    if (c.value.imag() < 0.0) continue;  // represented by its conjugate
    const double d = std::min(std::abs(c.value - target), std::abs(std::conj(c.value) - target));
    if (d < best.d1) {
      best.d2 = best.d1;
      best.d1 = d;
      best.index = static_cast<int>(i);
    } else if (d < best.d2) {
      best.d2 = d;
    }
  }
  return best;
}

bool has_kind(const std::vector<OmegaCandidate>& cands, CandidateKind kind) {
  return std::any_of(cands.begin(), cands.end(), [&](const auto& c) { return c.kind == kind; });
}

}  // namespace

std::vector<OmegaCandidate> omega_candidates(const VariationalApproximant& appr, double g) {
  std::vector<OmegaCandidate> out;
  for (int m = 1; m <= 2; ++m) {
    const Polynomial poly = stationarity_polynomial(appr, g, m);
    const auto roots = polynomial_roots(poly);
    for (const auto& z : roots) {
      if (z == 0.0) continue;
      const double scale = poly.magnitude(std::abs(z));
      if (std::abs(poly(z)) > 1e-8 * scale) {
        throw ConvergenceError("omega_candidates: root polishing failed for derivative order " +
                                   std::to_string(m),
                               "polynomial " + describe(poly));
      }
      const auto kind = (m == 1) ? CandidateKind::extremum : CandidateKind::turning_point;
      if (kind == CandidateKind::turning_point) {
        const bool duplicate = std::any_of(out.begin(), out.end(), [&](const auto& c) {
          return c.kind == CandidateKind::extremum && std::abs(c.value - z) <= 1e-10 * std::abs(z);
        });
        if (duplicate) continue;
      }
      out.push_back({z, kind, relative_residual(appr, g, z, m)});
    }
  }
  return out;
}

OmegaCandidate select_omega(const VariationalApproximant& appr, double g,
                            const std::vector<OmegaCandidate>& candidates,
                            const std::optional<OmegaCandidate>& hint) {
  if (candidates.empty()) throw DomainError("select_omega: empty candidate list");

  if (hint) {
    std::optional<CandidateKind> kind;
    if (has_kind(candidates, hint->kind)) kind = hint->kind;
    const auto nearest = nearest_class(candidates, hint->value, kind);
    return lower_edge_member(appr, g, candidates[nearest.index]);
  }

  // Positive real roots first (extrema before turning points), then complex pairs.
  for (auto kind : {CandidateKind::extremum, CandidateKind::turning_point}) {
    const OmegaCandidate* best = nullptr;
    for (const auto& c : candidates) {
      if (c.kind != kind || !c.is_real() || c.value.real() <= 0.0) continue;
      if (!best || c.value.real() < best->value.real()) best = &c;
    }
    if (best) return *best;
  }
  for (auto kind : {CandidateKind::extremum, CandidateKind::turning_point}) {
    const OmegaCandidate* best = nullptr;
    for (const auto& c : candidates) {
      if (c.kind != kind || c.is_real()) continue;
      if (!best || c.value.real() > best->value.real()) best = &c;
    }
    if (best) return lower_edge_member(appr, g, *best);
  }
  throw NumericalError("select_omega: no admissible candidate (only nonpositive real roots)");
}

// ---------------------------------------------------------------------------
// continuation along negative g

namespace {

class BranchTracker {
 public:
  explicit BranchTracker(const VariationalApproximant& appr)
      : appr_(&appr), scale_(std::pow(appr.omega(), 3)) {
    current_.value = appr.omega();
    current_.kind = CandidateKind::extremum;
    current_.residual = 0.0;
  }

  double g() const { return g_; }
  const OmegaCandidate& current() const { return current_; }

  // Moves to `target` (< g()). When stop_on_complex is set, stops at the
  // first accepted point where the optimum has left the real axis.
  void advance(double target, bool stop_on_complex = false) {
    if (target > g_) throw DomainError("BranchTracker: can only move toward negative g");
    if (!started_) start(target);
    double h = std::max(std::abs(g_), kFloor * scale_);
    while (g_ > target) {
      const double cap = std::max(std::abs(g_), kFloor * scale_);
      h = std::min(h, cap);
      const double gn = std::max(target, g_ - h);
      const double h_min = 1e-15 * cap;
      if (try_step(gn, h <= h_min)) {
        h *= 2.0;
        if (stop_on_complex && !current_.is_real()) return;
      } else {
        h *= 0.5;
      }
    }
  }

 private:
  static constexpr double kFloor = 1e-4;

  void start(double target) {
    const double g0 = std::max(target, -kFloor * scale_);
    const auto cands = omega_candidates(*appr_, g0);
    const double w = appr_->omega();
    const OmegaCandidate* best = nullptr;
    for (const auto& c : cands) {
      if (c.kind != CandidateKind::extremum || !c.is_real() || c.value.real() <= 0.0) continue;
      if (!best || std::abs(c.value - w) < std::abs(best->value - w)) best = &c;
    }
    OmegaCandidate hint;
    hint.value = w;
    current_ = best ? *best : select_omega(*appr_, g0, cands, hint);
    g_ = g0;
    started_ = true;
  }

  bool try_step(double gn, bool force) {
    const auto cands = omega_candidates(*appr_, gn);
    std::optional<CandidateKind> kind;
    if (has_kind(cands, current_.kind)) kind = current_.kind;
    const auto nearest = nearest_class(cands, current_.value, kind);
    if (nearest.index < 0) throw NumericalError("BranchTracker: no candidates");
    const double size = std::abs(current_.value);
    const bool clear = nearest.d1 <= 0.3 * nearest.d2 && nearest.d1 <= 0.2 * size;
    if (!clear && !force) return false;
    current_ = lower_edge_member(*appr_, gn, cands[nearest.index]);
    g_ = gn;
    return true;
  }

  const VariationalApproximant* appr_;
  double scale_;
  double g_ = 0.0;
  bool started_ = false;
  OmegaCandidate current_;
};

ResummedEnergy make_energy(const VariationalApproximant& appr, double g, const OmegaCandidate& c) {
  ResummedEnergy e;
  e.g = g;
  e.omega_used = c;
  if (c.is_real()) {
    e.value = cplx(eval_W(appr, g, c.value).real(), 0.0);
    e.branch = BranchTag::real;
  } else {
    e.value = eval_W(appr, g, c.value);
    e.branch = BranchTag::continued_complex;
  }
  return e;
}

ResummedEnergy evaluate_origin(const VariationalApproximant& appr) {
  OmegaCandidate c;
  c.value = appr.omega();
  c.kind = CandidateKind::extremum;
  c.residual = 0.0;
  return make_energy(appr, 0.0, c);
}

}  // namespace

ResummedEnergy evaluate(const VariationalApproximant& appr, double g) {
  if (g == 0.0) return evaluate_origin(appr);
  if (g > 0.0) return make_energy(appr, g, select_omega(appr, g, omega_candidates(appr, g)));
  BranchTracker tracker(appr);
  tracker.advance(g);
  return make_energy(appr, g, tracker.current());
}

std::vector<ResummedEnergy> evaluate_along(const VariationalApproximant& appr,
                                           const std::vector<double>& grid) {
  std::vector<ResummedEnergy> out(grid.size());
  std::vector<std::size_t> negative;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0) {
      negative.push_back(i);
    } else {
      out[i] = evaluate(appr, grid[i]);
    }
  }
  std::sort(negative.begin(), negative.end(),
            [&](std::size_t a, std::size_t b) { return grid[a] > grid[b]; });
  BranchTracker tracker(appr);
  for (auto i : negative) {
    tracker.advance(grid[i]);
    out[i] = make_energy(appr, grid[i], tracker.current());
  }
  return out;
}

// ---------------------------------------------------------------------------
// branch point

namespace {

// Newton on P(Omega, g) = dP/dOmega(Omega, g) = 0 with P the first-derivative numerator.
bool polish_double_root(const VariationalApproximant& appr, double& omega, double& g) {
  const int N = appr.order();
  const int low = appr.lowest_power();
  for (int it = 0; it < 60; ++it) {
    const Polynomial P(raw_derivative_numerator(appr.laurent(g), low, N, 1));
    const Polynomial Pg(raw_derivative_numerator(appr.laurent_dg(g), low, N, 1));
    const Polynomial PO = P.derivative();
    const Polynomial POO = PO.derivative();
    const Polynomial POg = Pg.derivative();
    const double f1 = P(omega), f2 = PO(omega);
    const double a = PO(omega), b = Pg(omega), c = POO(omega), d = POg(omega);
    const double det = a * d - b * c;
    if (det == 0.0 || !std::isfinite(det)) return false;
    const double dO = (d * f1 - b * f2) / det;
    const double dg = (a * f2 - c * f1) / det;
    omega -= dO;
    g -= dg;
    if (!std::isfinite(omega) || !std::isfinite(g)) return false;
    if (std::abs(dO) <= 1e-15 * std::abs(omega) && std::abs(dg) <= 1e-15 * std::abs(g)) return true;
  }
  return true;
}

}  // namespace

BranchPointInfo branch_point_numeric(const VariationalApproximant& appr, double window) {
  const double scale = std::pow(appr.omega(), 3);
  BranchTracker tracker(appr);
  const double limit = -window * scale;
  tracker.advance(limit, /*stop_on_complex=*/true);
  if (tracker.current().is_real()) {
    std::ostringstream os;
    os << "branch_point: optimum stays real on the search window [" << limit << ", 0]";
    throw NumericalError(os.str());
  }

  // The tracker stopped right after the transition; redo the last stretch by bisection.
  double hi = tracker.g();  // complex
  BranchTracker real_side(appr);
  double lo = hi * 0.5;
  // Find a real point close to the transition without walking past it.
  real_side.advance(lo);
  while (!real_side.current().is_real()) {
    lo *= 0.5;
    real_side = BranchTracker(appr);
    real_side.advance(lo);
  }
  while (std::abs(hi - lo) > 1e-10 * std::abs(lo)) {
    const double mid = 0.5 * (lo + hi);
    BranchTracker probe = real_side;
    probe.advance(mid);
    if (probe.current().is_real()) {
      lo = mid;
      real_side = probe;
    } else {
      hi = mid;
    }
  }

  BranchPointInfo info;
  double omega = real_side.current().value.real();
  double g = lo;
  const double width = std::abs(hi - lo);
  if (polish_double_root(appr, omega, g) && g <= lo + 1e3 * width && g >= hi - 1e3 * width && omega > 0.0) {
    info.g_bp = -g;
    info.omega_bp = omega;
  } else {
    info.g_bp = -lo;
    info.omega_bp = real_side.current().value.real();
  }
  return info;
}

BranchPointInfo branch_point_info(const VariationalApproximant& appr) {
  if (appr.order() == 1) {
    const auto& E = appr.base().coefficients;
    const double w = appr.omega();
    BranchPointInfo info;
    info.g_bp = w * w * w * E[0] / (6.0 * std::sqrt(3.0) * E[1]);
    info.omega_bp = w / std::sqrt(3.0);
    if (!(info.g_bp > 0.0)) throw NumericalError("branch_point: N = 1 cubic has no negative-g branch point");
    return info;
  }
  return branch_point_numeric(appr);
}

double branch_point(const VariationalApproximant& appr) { return branch_point_info(appr).g_bp; }

// ---------------------------------------------------------------------------
// N = 1 closed form

cplx closed_form_Omega1(const VariationalApproximant& appr, double g) {
  if (appr.order() != 1) throw DomainError("closed_form_W1: approximant must have N = 1");
  const Polynomial cubic = stationarity_polynomial(appr, g, 1);  // Omega^3 + p Omega + q
  const double p = cubic.coefficient(1);
  const double qc = cubic.coefficient(0);
  const double r = 2.0 * std::sqrt(-p / 3.0);
  const double x = (3.0 * qc / (2.0 * p)) * std::sqrt(-3.0 / p);
  if (x >= 1.0) return r * std::cosh(std::acosh(x) / 3.0);
  if (x >= -1.0) return r * std::cos(std::acos(x) / 3.0);
  const double a = std::acosh(-x) / 3.0;
  const cplx z(r * 0.5 * std::cosh(a), r * 0.5 * std::sqrt(3.0) * std::sinh(a));
  return eval_W(appr, g, z).imag() < 0.0 ? z : std::conj(z);
}

cplx closed_form_W1(const VariationalApproximant& appr, double g) {
  const cplx z = closed_form_Omega1(appr, g);
  if (z.imag() == 0.0) return {eval_W(appr, g, z).real(), 0.0};
  return eval_W(appr, g, z);
}

cplx closed_form_W1(double g, double omega) {
  static const auto base = PerturbationSeries::anharmonic_oscillator(1, 1.0);
  PerturbationSeries s = base;
  s.omega = omega;
  return closed_form_W1(VariationalApproximant(s, 1), g);
}

}  // namespace vpt
