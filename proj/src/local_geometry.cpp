#include "srt/local_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "srt/errors.hpp"
#include "srt/log.hpp"

namespace srt {

namespace {

std::string at(const char* what, double x) {
  std::ostringstream os;
  os.precision(10);
  os << what << " at x = " << x;
  return os.str();
}

MonotoneRootOptions root_options(const SolverLimits& lim, double guess) {
  MonotoneRootOptions o;
  o.initial = std::isfinite(guess) && guess > 0.0 ? guess : 1.0;
  o.max_radius = lim.max_radius;
  return o;
}

double f1(const WeightField& f, double x, double eta) {
  return f.R_off(x, -eta, 0.0) * f.Q_off(x, -eta, 0.0);
}

double f2(const WeightField& f, double x, double eta) {
  return f.R_off(x, 0.0, eta) * f.Q_off(x, 0.0, eta);
}

}  // namespace

double solve_d1(const WeightField& field, double x, const SolverLimits& lim) {
  auto F = [&](double eta) { return f1(field, x, eta); };
  const auto root = solve_monotone(F, 1.0, root_options(lim, 1.0));
  if (!root) fail(ErrorKind::no_finite_root, at("d1 has no root within the search radius", x));
  return *root;
}

double solve_d2(const WeightField& field, double x, const SolverLimits& lim) {
  auto F = [&](double eta) { return f2(field, x, eta); };
  const auto root = solve_monotone(F, 1.0, root_options(lim, 1.0));
  if (!root) fail(ErrorKind::no_finite_root, at("d2 has no root within the search radius", x));
  return *root;
}

PhiPsiH compute_phi_psi_h(const WeightField& field, double x, const SolverLimits& lim) {
  PhiPsiH o;
  o.d1 = solve_d1(field, x, lim);
  o.d2 = solve_d2(field, x, lim);
  o.phi = field.R_off(x, -o.d1, 0.0);
  o.psi = field.R_off(x, 0.0, o.d2);
  o.h = o.phi * o.psi / (o.phi + o.psi);
  o.identity_residual = std::abs(o.h * field.Q_off(x, -o.d1, o.d2) - 1.0);
  return o;
}

double residual_d1(const WeightField& f, double x, double d1) { return std::abs(f1(f, x, d1) - 1.0); }
double residual_d2(const WeightField& f, double x, double d2) { return std::abs(f2(f, x, d2) - 1.0); }

double equation_d1(const WeightField& f, double x, double d1) { return f1(f, x, d1); }
double equation_d2(const WeightField& f, double x, double d2) { return f2(f, x, d2); }
double equation_dtilde(const WeightField& f, double x, double dt) { return dt * f.Q_off(x, -dt, dt) / 2.0; }

double residual_dtilde(const WeightField& f, double x, double dt) {
  return std::abs(equation_dtilde(f, x, dt) - 1.0);
}

// ---------------------------------------------------------------------------

HFunction::HFunction(const WeightField& field, double lo, double hi, const SolverLimits& lim,
                     double tol)
    : field_(field), lim_(lim) {
  if (!(hi > lo)) fail(ErrorKind::invalid_argument, "h table needs a nonempty range");
  std::vector<double> seeds;
  const int M = 64;
  for (int i = 0; i <= M; ++i) seeds.push_back(lo + (hi - lo) * i / M);
  for (double b : field.breakpoints()) {
    if (b > lo && b < hi) seeds.push_back(b);
  }
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

  const double min_width = (hi - lo) * 1e-9;
  const std::size_t cap = 400000;
  std::vector<Sample> seed_vals;
  for (double s : seeds) seed_vals.push_back(direct(s));

  nodes_.push_back(seeds[0]);
  vals_.push_back(seed_vals[0]);
  // Depth-first refinement keeps nodes sorted as they are appended.
  struct Item {
    double a, b;
    Sample sa, sb;
  };
  for (std::size_t i = 0; i + 1 < seeds.size(); ++i) {
    std::vector<Item> stack{{seeds[i], seeds[i + 1], seed_vals[i], seed_vals[i + 1]}};
    while (!stack.empty()) {
      Item it = stack.back();
      stack.pop_back();
      const double m = 0.5 * (it.a + it.b);
      const double w = it.b - it.a;
      // Hermite value at the midpoint.
      const double est = 0.5 * (it.sa.logh + it.sb.logh) + 0.125 * w * (it.sa.slope - it.sb.slope);
      const Sample sm = direct(m);
      if (std::abs(est - sm.logh) > tol && w > min_width && nodes_.size() < cap) {
        stack.push_back({m, it.b, sm, it.sb});
        stack.push_back({it.a, m, it.sa, sm});
        continue;
      }
      nodes_.push_back(m);
      vals_.push_back(sm);
      nodes_.push_back(it.b);
      vals_.push_back(it.sb);
    }
  }
  if (nodes_.size() >= cap) log::warn("h table reached its node cap; accuracy may be reduced");
}

HFunction::Sample HFunction::direct(double x) const {
  const PhiPsiH p = compute_phi_psi_h(field_, x, lim_);
  const WeightField& f = field_;
  const double d1 = p.d1, d2 = p.d2, phi = p.phi, psi = p.psi;
  const double rx = f.r(x), rl = f.r(x - d1), rr = f.r(x + d2);
  const double qx = f.q(x), ql = f.q(x - d1), qr = f.q(x + d2);
  const double Q1 = 1.0 / phi, Q2 = 1.0 / psi;
  // Implicit differentiation of R*Q = 1 in x for both one-sided lengths.
  const double fx1 = (1.0 / rx - 1.0 / rl) * Q1 + phi * (qx - ql);
  const double fd1 = Q1 / rl + phi * ql;
  const double d1p = -fx1 / fd1;
  const double fx2 = (1.0 / rr - 1.0 / rx) * Q2 + psi * (qr - qx);
  const double fd2 = Q2 / rr + psi * qr;
  const double d2p = -fx2 / fd2;
  const double phip = 1.0 / rx - (1.0 - d1p) / rl;
  const double psip = (1.0 + d2p) / rr - 1.0 / rx;
  Sample s;
  s.logh = std::log(phi) + std::log(psi) - std::log(phi + psi);
  s.slope = phip / phi + psip / psi - (phip + psip) / (phi + psi);
  return s;
}

double HFunction::log_h(double x) const {
  if (x < nodes_.front() || x > nodes_.back()) return direct(x).logh;
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  std::size_t j = static_cast<std::size_t>(it - nodes_.begin());
  if (j >= nodes_.size()) j = nodes_.size() - 1;
  const std::size_t i = j - 1;
  const double w = nodes_[j] - nodes_[i];
  if (w <= 0.0) return vals_[i].logh;
  const double t = (x - nodes_[i]) / w;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * vals_[i].logh + (t3 - 2 * t2 + t) * w * vals_[i].slope +
         (-2 * t3 + 3 * t2) * vals_[j].logh + (t3 - t2) * w * vals_[j].slope;
}

double HFunction::operator()(double x) const { return std::exp(log_h(x)); }

// ---------------------------------------------------------------------------

namespace {

double symmetric_integral(const ScalarFn& w, const WeightField& field, double x, double eta,
                          const SolverLimits& lim) {
  std::vector<double> cuts;
  for (double b : field.breakpoints()) {
    const double c = b - x;
    if (c > -eta && c < eta) cuts.push_back(c);
  }
  auto g = [&](double tau) { return w(x + tau); };
  return adaptive_gauss(g, -eta, eta, lim.quad, cuts);
}

}  // namespace

double solve_unit_integral(const ScalarFn& w, const WeightField& field, double x, double guess,
                           const SolverLimits& lim, const char* what) {
  auto F = [&](double eta) { return symmetric_integral(w, field, x, eta, lim); };
  const auto root = solve_monotone(F, 1.0, root_options(lim, guess));
  if (!root) {
    fail(ErrorKind::window_exhausted,
         at((std::string(what) + " has no root within the search radius").c_str(), x));
  }
  return *root;
}

double residual_unit_integral(const ScalarFn& w, const WeightField& f, double x, double eta,
                              const SolverLimits& lim) {
  return std::abs(symmetric_integral(w, f, x, eta, lim) - 1.0);
}

double unit_integral(const ScalarFn& w, const WeightField& f, double x, double eta, const SolverLimits& lim) {
  return symmetric_integral(w, f, x, eta, lim);
}

double solve_d(const WeightField& field, const ScalarFn& h, double x, const SolverLimits& lim,
               double guess) {
  auto w = [&](double t) { return 1.0 / (field.r(t) * h(t)); };
  return solve_unit_integral(w, field, x, guess, lim, "d");
}

double solve_s(const WeightField& field, const ScalarFn& rho, double x, const SolverLimits& lim,
               double guess) {
  auto w = [&](double t) { return 1.0 / (field.r(t) * rho(t)); };
  return solve_unit_integral(w, field, x, guess, lim, "s");
}

double solve_mu(const WeightField& field, const ScalarFn& h, double x, const SolverLimits& lim,
                double guess) {
  auto w = [&](double t) { return field.q(t) * h(t); };
  return solve_unit_integral(w, field, x, guess, lim, "mu");
}

bool r_identically_one(const WeightField& field, const Window& window) {
  if (field.r_is_one()) return true;
  const auto& spec = field.spec();
  if (spec.kind == CoefficientKind::tabulated) {
    return std::all_of(spec.tr.begin(), spec.tr.end(), [](double v) { return std::abs(v - 1.0) <= 1e-12; });
  }
  if (spec.kind == CoefficientKind::constant || spec.kind == CoefficientKind::exponential) return false;
  for (double x : window.grid()) {
    if (std::abs(field.r(x) - 1.0) > 1e-12) return false;
  }
  return true;
}

double solve_dtilde(const WeightField& field, double x, const SolverLimits& lim) {
  if (!r_identically_one(field, Window(std::max(1.0, std::abs(x)), 3))) {
    fail(ErrorKind::r_not_one, "d-tilde is defined only for r = 1");
  }
  auto F = [&](double eta) { return eta * field.Q_off(x, -eta, eta); };
  const auto root = solve_monotone(F, 2.0, root_options(lim, 1.0));
  if (!root) fail(ErrorKind::window_exhausted, at("d-tilde has no root within the search radius", x));
  return *root;
}

// ---------------------------------------------------------------------------

AuxProfile compute_aux_profile(const WeightField& field, const Window& window,
                               const SolverLimits& lim, std::optional<HFunction>* h_out) {
  AuxProfile a;
  a.x = window.grid();
  const std::size_t n = a.x.size();

  try {
    double maxlen = 0.0;
    for (double x : a.x) {
      const PhiPsiH p = compute_phi_psi_h(field, x, lim);
      a.d1.push_back(p.d1);
      a.d2.push_back(p.d2);
      a.phi.push_back(p.phi);
      a.psi.push_back(p.psi);
      a.h.push_back(p.h);
      a.h_identity_residual = std::max(a.h_identity_residual, p.identity_residual);
      a.phi_psi_ratio = std::max(a.phi_psi_ratio, std::max(p.phi / p.psi, p.psi / p.phi));
      maxlen = std::max({maxlen, p.d1, p.d2});
    }
    a.has_h = true;
    std::optional<HFunction> table;
    // The table reaches past the window so that integrals centred at the edges stay on it.
    double pad = std::min(lim.max_radius, 2.0 * maxlen + 1e-3 * window.X);
    while (!table) {
      try {
        table.emplace(field, -window.X - pad, window.X + pad, lim);
      } catch (const Error& e) {
        if (pad == 0.0) throw;
        log::info("h table shrunk after: ", e.what());
        pad = pad < 1e-3 * window.X ? 0.0 : 0.5 * pad;
      }
    }
    a.h_table_nodes = table->size();
    const HFunction& H = *table;
    auto hf = [&H](double t) { return H(t); };

    try {
      double guess = std::min(a.d1[0], a.d2[0]);
      for (std::size_t i = 0; i < n; ++i) {
        a.d.push_back(solve_d(field, hf, a.x[i], lim, guess));
        guess = a.d.back();
      }
      a.has_d = true;
    } catch (const Error& e) {
      a.d.clear();
      a.d_error = e.what();
    }
    try {
      double guess = std::min(a.d1[0], a.d2[0]);
      for (std::size_t i = 0; i < n; ++i) {
        a.mu.push_back(solve_mu(field, hf, a.x[i], lim, guess));
        guess = a.mu.back();
      }
      a.has_mu = true;
    } catch (const Error& e) {
      a.mu.clear();
      a.mu_error = e.what();
    }
    if (h_out != nullptr) *h_out = std::move(table);
  } catch (const Error& e) {
    a.d1.clear();
    a.d2.clear();
    a.phi.clear();
    a.psi.clear();
    a.h.clear();
    a.has_h = false;
    a.h_error = e.what();
    a.d_error = a.mu_error = "h unavailable";
  }

  if (r_identically_one(field, window)) {
    try {
      for (double x : a.x) a.dtilde.push_back(solve_dtilde(field, x, lim));
      a.has_dtilde = true;
    } catch (const Error& e) {
      a.dtilde.clear();
      a.dtilde_error = e.what();
    }
  } else {
    a.dtilde_error = "r is not identically one";
  }
  return a;
}

void fill_s(AuxProfile& aux, const WeightField& field, const ScalarFn& rho, const SolverLimits& lim) {
  aux.s.clear();
  aux.has_s = false;
  try {
    double guess = 1.0;
    for (double x : aux.x) {
      aux.s.push_back(solve_s(field, rho, x, lim, guess));
      guess = aux.s.back();
    }
    aux.has_s = true;
    aux.s_error.clear();
  } catch (const Error& e) {
    aux.s.clear();
    aux.s_error = e.what();
  }
}

// ---------------------------------------------------------------------------

const char* to_string(CoveringKind k) { return k == CoveringKind::d ? "d" : "s"; }

double Covering::max_chain_gap() const {
  double g = 0.0;
  for (std::size_t i = 0; i + 1 < forward.size(); ++i) g = std::max(g, std::abs(forward[i].hi - forward[i + 1].lo));
  for (std::size_t i = 0; i + 1 < backward.size(); ++i) g = std::max(g, std::abs(backward[i].lo - backward[i + 1].hi));
  return g;
}

double Covering::max_center_residual() const {
  double g = 0.0;
  for (const auto* chain : {&forward, &backward}) {
    for (const Segment& s : *chain) {
      g = std::max({g, std::abs(s.lo - (s.center - s.kappa)), std::abs(s.hi - (s.center + s.kappa))});
    }
  }
  return g;
}

bool Covering::covers(double lo, double hi) const {
  const double right = forward.empty() ? origin : forward.back().hi;
  const double left = backward.empty() ? origin : backward.back().lo;
  return left <= lo && right >= hi;
}

Covering build_covering(const ScalarFn& kappa, double x, const Window& window, CoveringKind kind,
                        std::size_t max_segments) {
  Covering c;
  c.origin = x;
  c.kind = kind;
  const double reach = 8.0 * window.X + std::abs(x);

  double left = x;
  while (left < window.X) {
    auto g = [&](double t) { return t - kappa(t) - left; };
    const double k0 = kappa(left);
    if (!(k0 > 0.0) || !std::isfinite(k0)) fail(ErrorKind::covering_failure, at("kappa is not positive", left));
    double step = k0;
    double hi = left + step;
    while (g(hi) < 0.0) {
      step *= 2.0;
      hi = left + step;
      if (step > reach) fail(ErrorKind::covering_failure, at("forward centre cannot be bracketed", left));
    }
    const double center = bisect_increasing(g, left, hi, 1e-13 * k0, 400);
    const double kc = kappa(center);
    Segment s{left, center + kc, center, kc};
    if (!(s.hi > s.lo)) fail(ErrorKind::covering_failure, at("forward chain stalled", left));
    c.forward.push_back(s);
    if (c.forward.size() > max_segments) fail(ErrorKind::covering_failure, "too many forward segments");
    left = s.hi;
  }

  double right = x;
  while (right > -window.X) {
    auto g = [&](double t) { return t + kappa(t) - right; };
    const double k0 = kappa(right);
    if (!(k0 > 0.0) || !std::isfinite(k0)) fail(ErrorKind::covering_failure, at("kappa is not positive", right));
    double step = k0;
    double lo = right - step;
    while (g(lo) > 0.0) {
      step *= 2.0;
      lo = right - step;
      if (step > reach) fail(ErrorKind::covering_failure, at("backward centre cannot be bracketed", right));
    }
    const double center = bisect_increasing(g, lo, right, 1e-13 * k0, 400);
    const double kc = kappa(center);
    Segment s{center - kc, right, center, kc};
    if (!(s.hi > s.lo)) fail(ErrorKind::covering_failure, at("backward chain stalled", right));
    c.backward.push_back(s);
    if (c.backward.size() > max_segments) fail(ErrorKind::covering_failure, "too many backward segments");
    right = s.lo;
  }
  return c;
}

// ---------------------------------------------------------------------------

SmoothAsymptotics smooth_asymptotics(const WeightField& field, double x) {
  if (!field.has_derivatives()) {
    fail(ErrorKind::unsupported_preset, "smooth asymptotics need differentiable coefficients");
  }
  SmoothAsymptotics o;
  const double rx = field.r(x), qx = field.q(x);
  if (!(qx > 0.0)) fail(ErrorKind::invalid_coefficient, at("q must be positive", x));
  o.dhat = std::sqrt(rx / qx);
  const double T = 80.0 * o.dhat;
  // Both suprema are of integrals of r'/r^2 and q', which reduce to differences.
  auto k1 = [&](double t) { return std::abs(1.0 - rx / field.r(x + t)); };
  auto k2 = [&](double t) { return std::abs(field.q(x + t) - qx) / qx; };
  auto sup = [&](const ScalarFn& f) {
    const int M = 400;
    int best = 0;
    double bv = -1.0;
    for (int i = 0; i <= M; ++i) {
      const double v = f(-T + 2.0 * T * i / M);
      if (v > bv) {
        bv = v;
        best = i;
      }
    }
    const double a = -T + 2.0 * T * std::max(0, best - 1) / M;
    const double b = -T + 2.0 * T * std::min(M, best + 1) / M;
    const double t = golden_section_max(f, a, b);
    return std::max(bv, f(t));
  };
  o.kappa1 = sup(k1);
  o.kappa2 = sup(k2);
  return o;
}

}  // namespace srt
