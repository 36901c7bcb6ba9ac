#include "srt/principal_solutions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "srt/errors.hpp"
#include "srt/log.hpp"

namespace srt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Coef {
  std::function<double(double)> r, q;
};

struct Deriv {
  double dm, dL;
};

Deriv rhs(const Coef& c, double xi, double m) {
  const double r = c.r(xi);
  return {c.q(xi) - m * m / r, m / r};
}

RiccatiTrack sweep(const Coef& c, double start, double end, double R0, std::vector<double> stops,
                   const FssOptions& opt) {
  RiccatiTrack t;
  // Dirichlet data at `start`, entered at start + delta where y is R(start, .) to leading order.
  const double delta = 1e-6 * std::min(1.0, end - start);
  double xi = start + delta;
  double m = 1.0 / R0;
  double L = std::log(R0);
  auto push = [&](double x, double mm, double LL) {
    t.xi.push_back(x);
    t.m.push_back(mm);
    t.L.push_back(LL);
    t.r.push_back(c.r(x));
    t.q.push_back(c.q(x));
  };
  push(xi, m, L);
  stops.push_back(end);
  std::sort(stops.begin(), stops.end());
  const double hmax = (end - start) / 50.0;
  double h = 0.1 * delta;
  Deriv k1 = rhs(c, xi, m);
  std::size_t si = 0;
  while (si < stops.size() && stops[si] <= xi) ++si;
  while (xi < end) {
    if (t.steps + t.rejected > opt.max_steps) {
      std::ostringstream os;
      os << "ODE sweep exceeded " << opt.max_steps << " steps near xi = " << xi << " (coefficients too stiff)";
      fail(ErrorKind::fss_construction, os.str());
    }
    const double target = stops[si];
    bool hit = false;
    double hs = std::min(h, hmax);
    if (xi + hs >= target) {
      hs = target - xi;
      hit = true;
    }
    const double m2 = m + hs * a21 * k1.dm;
    const Deriv k2 = rhs(c, xi + c2 * hs, m2);
    const double m3 = m + hs * (a31 * k1.dm + a32 * k2.dm);
    const Deriv k3 = rhs(c, xi + c3 * hs, m3);
    const double m4 = m + hs * (a41 * k1.dm + a42 * k2.dm + a43 * k3.dm);
    const Deriv k4 = rhs(c, xi + c4 * hs, m4);
    const double m5 = m + hs * (a51 * k1.dm + a52 * k2.dm + a53 * k3.dm + a54 * k4.dm);
    const Deriv k5 = rhs(c, xi + c5 * hs, m5);
    const double m6 = m + hs * (a61 * k1.dm + a62 * k2.dm + a63 * k3.dm + a64 * k4.dm + a65 * k5.dm);
    const Deriv k6 = rhs(c, xi + hs, m6);
    const double mn = m + hs * (b1 * k1.dm + b3 * k3.dm + b4 * k4.dm + b5 * k5.dm + b6 * k6.dm);
    const double dL = hs * (b1 * k1.dL + b3 * k3.dL + b4 * k4.dL + b5 * k5.dL + b6 * k6.dL);
    const double xn = hit ? target : xi + hs;
    const Deriv k7 = rhs(c, xn, mn);
    const double em = hs * (e1 * k1.dm + e3 * k3.dm + e4 * k4.dm + e5 * k5.dm + e6 * k6.dm + e7 * k7.dm);
    const double eL = hs * (e1 * k1.dL + e3 * k3.dL + e4 * k4.dL + e5 * k5.dL + e6 * k6.dL + e7 * k7.dL);
    const double sm = opt.rtol * std::max(std::abs(m), std::abs(mn)) + 1e-300;
    const double sL = opt.rtol * (std::abs(dL) + 1e-3 * hs / (end - start));
    double err = std::max(std::abs(em) / sm, std::abs(eL) / sL);
    if (!std::isfinite(err) || !std::isfinite(mn)) err = 1e10;
    if (err <= 1.0) {
      xi = xn;
      m = mn;
      L += dL;
      k1 = k7;
      push(xi, m, L);
      ++t.steps;
      if (hit) {
        ++si;
        while (si < stops.size() && stops[si] <= xi) ++si;
      }
    } else {
      ++t.rejected;
    }
    const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h = hs * fac;
    if (h < 1e-14 * std::max(1.0, std::abs(xi))) {
      fail(ErrorKind::fss_construction, "ODE step size underflow (coefficients too stiff)");
    }
  }
  return t;
}

struct TrackEval {
  double L, m;
};

// Cubic Hermite on (L, L' = m/r) and (m, m' = q - m^2/r).
TrackEval eval_track(const RiccatiTrack& t, double xi) {
  const auto& X = t.xi;
  if (xi <= X.front()) return {t.L.front(), t.m.front()};
  if (xi >= X.back()) return {t.L.back(), t.m.back()};
  std::size_t j = static_cast<std::size_t>(std::upper_bound(X.begin(), X.end(), xi) - X.begin());
  const std::size_t i = j - 1;
  const double w = X[j] - X[i];
  const double s = (xi - X[i]) / w;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s, h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  const double dLi = t.m[i] / t.r[i], dLj = t.m[j] / t.r[j];
  const double dmi = t.q[i] - t.m[i] * t.m[i] / t.r[i];
  const double dmj = t.q[j] - t.m[j] * t.m[j] / t.r[j];
  return {h00 * t.L[i] + h10 * w * dLi + h01 * t.L[j] + h11 * w * dLj,
          h00 * t.m[i] + h10 * w * dmi + h01 * t.m[j] + h11 * w * dmj};
}

void check_range(const FssProfile& f, double x) {
  if (std::abs(x) > f.extended() * (1 + 1e-12)) {
    std::ostringstream os;
    os << "x = " << x << " is outside the computed range";
    fail(ErrorKind::invalid_argument, os.str());
  }
}

}  // namespace

double stiffness_steps(const WeightField& field, double a, double b) {
  auto g = [&](double t) { return 2.0 * std::sqrt(field.q(t) / field.r(t)); };
  const int panels = 400;
  double s = 0.0;
  for (int i = 0; i < panels; ++i) {
    s += gauss_legendre8(g, a + (b - a) * i / panels, a + (b - a) * (i + 1) / panels);
  }
  return s / 3.3;
}

double FssProfile::lv(double x) const {
  check_range(*this, x);
  return eval_track(v_track, x).L + v_shift;
}
double FssProfile::lu(double x) const {
  check_range(*this, x);
  return eval_track(u_track, -x).L + u_shift;
}
double FssProfile::mv(double x) const {
  check_range(*this, x);
  return eval_track(v_track, x).m;
}
double FssProfile::mu(double x) const {
  check_range(*this, x);
  return -eval_track(u_track, -x).m;
}
double FssProfile::rho_at(double x) const { return std::exp(log_rho(x)); }
double FssProfile::wronskian(double x) const {
  return std::exp(lv(x) + lu(x) + std::log(mv(x) - mu(x)));
}

ScalarFn FssProfile::rho_fn() const {
  return [this](double x) { return rho_at(x); };
}

std::vector<double> FssProfile::quadrature_nodes() const {
  const double T = trusted();
  std::vector<double> n{-T, T};
  for (double x : v_track.xi) {
    if (std::abs(x) < T) n.push_back(x);
  }
  for (double x : u_track.xi) {
    if (std::abs(x) < T) n.push_back(-x);
  }
  for (double x : grid) n.push_back(x);
  for (double b : field.breakpoints()) {
    if (std::abs(b) < T) n.push_back(b);
  }
  std::sort(n.begin(), n.end());
  n.erase(std::unique(n.begin(), n.end()), n.end());
  // Keep panels short enough for an 8-point rule on smooth exponentials.
  std::vector<double> out{n.front()};
  const double hmax = window.X / 200.0;
  for (std::size_t i = 1; i < n.size(); ++i) {
    const double a = out.back(), b = n[i];
    const int k = static_cast<int>(std::ceil((b - a) / hmax));
    for (int j = 1; j < k; ++j) out.push_back(a + (b - a) * j / k);
    out.push_back(b);
  }
  return out;
}

FssProfile compute_fss(const WeightField& field, const Window& window, const FssOptions& opt) {
  FssProfile f;
  f.window = window;
  f.field = field;
  f.options = opt;
  const double Xe = opt.extension * window.X;

  const double est = stiffness_steps(field, -Xe, Xe);
  if (est > static_cast<double>(opt.max_steps)) {
    std::ostringstream os;
    os << "coefficients too stiff on [" << -Xe << ", " << Xe << "]: about " << est
       << " explicit steps needed";
    fail(ErrorKind::fss_construction, os.str());
  }

  std::vector<double> stops_v, stops_u;
  for (double b : field.breakpoints()) {
    if (std::abs(b) < Xe) {
      stops_v.push_back(b);
      stops_u.push_back(-b);
    }
  }
  const double delta = 1e-6 * std::min(1.0, 2 * Xe);
  Coef cv{[&field](double x) { return field.r(x); }, [&field](double x) { return field.q(x); }};
  Coef cu{[&field](double x) { return field.r(-x); }, [&field](double x) { return field.q(-x); }};
  f.v_track = sweep(cv, -Xe, Xe, field.R_off(-Xe, 0.0, delta), stops_v, opt);
  f.u_track = sweep(cu, -Xe, Xe, field.R_off(Xe, -delta, 0.0), stops_u, opt);
  log::debug("fss sweeps: ", f.v_track.steps, " + ", f.u_track.steps, " steps");

  // Mutually inverse factors: log(v/u) antisymmetric over the window edges,
  // then the common factor that sets the Wronskian to one at the origin.
  const double X = window.X;
  const double ell_lo = eval_track(f.v_track, -X).L - eval_track(f.u_track, X).L;
  const double ell_hi = eval_track(f.v_track, X).L - eval_track(f.u_track, -X).L;
  const double c = -(ell_lo + ell_hi) / 4.0;
  const TrackEval v0 = eval_track(f.v_track, 0.0), u0 = eval_track(f.u_track, 0.0);
  const double gap0 = v0.m + u0.m;  // m_v - m_u at the origin
  if (!(gap0 > 0.0)) fail(ErrorKind::fss_construction, "degenerate Wronskian at the origin");
  const double s = -0.5 * (v0.L + u0.L + std::log(gap0));
  f.v_shift = c + s;
  f.u_shift = -c + s;

  f.grid = window.grid();
  for (double x : f.grid) {
    const double lv = f.lv(x), lu = f.lu(x), mv = f.mv(x), mu = f.mu(x);
    f.log_v.push_back(lv);
    f.log_u.push_back(lu);
    f.rho.push_back(std::exp(lv + lu));
    f.rv_prime.push_back(mv * std::exp(lv));
    f.ru_prime.push_back(mu * std::exp(lu));
    const double gap = mv - mu;
    const double res = gap > 0.0 ? std::abs(std::expm1(lv + lu + std::log(gap))) : kInf;
    f.max_wronskian_residual = std::max(f.max_wronskian_residual, res);
  }
  if (!(f.max_wronskian_residual <= opt.wronskian_tol)) {
    std::ostringstream os;
    os << "Wronskian residual " << f.max_wronskian_residual << " exceeds " << opt.wronskian_tol;
    fail(ErrorKind::fss_construction, os.str());
  }
  f.x0 = find_x0(f);
  return f;
}

double find_x0(const FssProfile& fss) {
  const auto& g = fss.grid;
  int changes = 0;
  std::size_t at = 0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double a = fss.log_v[i] - fss.log_u[i];
    const double b = fss.log_v[i + 1] - fss.log_u[i + 1];
    if (a == 0.0) {
      if (i == 0 || fss.log_v[i - 1] - fss.log_u[i - 1] < 0.0) {
        ++changes;
        at = i;
      }
      continue;
    }
    if (a < 0.0 && b > 0.0) {
      ++changes;
      at = i;
    } else if (a > 0.0 && b < 0.0) {
      changes += 2;  // a decreasing crossing contradicts monotone v/u
    }
  }
  if (fss.log_v.back() - fss.log_u.back() == 0.0 && changes == 0) return g.back();
  if (changes != 1) {
    fail(ErrorKind::fss_construction, "u = v has " + std::to_string(changes) + " crossings on the grid");
  }
  if (fss.log_v[at] - fss.log_u[at] == 0.0) return g[at];
  auto diff = [&](double x) { return fss.lv(x) - fss.lu(x); };
  return bisect_increasing(diff, g[at], g[at + 1], 1e-14 * std::max(1.0, std::abs(g[at])));
}

double green_log(const FssProfile& fss, double x, double t) {
  const double X = fss.window.X * (1 + 1e-12);
  if (std::abs(x) > X || std::abs(t) > X) {
    std::ostringstream os;
    os << "G(" << x << ", " << t << ") requested outside the window";
    fail(ErrorKind::invalid_argument, os.str());
  }
  return fss.lu(std::max(x, t)) + fss.lv(std::min(x, t));
}

double green_eval(const FssProfile& fss, double x, double t) { return std::exp(green_log(fss, x, t)); }

// ---------------------------------------------------------------------------

LogCumulative::LogCumulative(std::vector<double> nodes, std::function<double(double)> logf,
                             std::function<double(double)> logf_slope, bool tails)
    : nodes_(std::move(nodes)), f_(std::move(logf)) {
  const std::size_t n = nodes_.size();
  if (n < 2) fail(ErrorKind::invalid_argument, "cumulative integral needs two nodes");
  double lt = -kInf, rt = -kInf;
  if (tails) {
    const double sl = logf_slope(nodes_.front());
    const double sr = logf_slope(nodes_.back());
    if (sl > 0.0) {
      lt = f_(nodes_.front()) - std::log(sl);
    } else {
      left_tail_finite_ = false;
      lt = kInf;
    }
    if (sr < 0.0) {
      rt = f_(nodes_.back()) - std::log(-sr);
    } else {
      right_tail_finite_ = false;
      rt = kInf;
    }
  }
  cum_left_.assign(n, -kInf);
  cum_right_.assign(n, -kInf);
  cum_left_[0] = lt;
  for (std::size_t i = 1; i < n; ++i) cum_left_[i] = log_add(cum_left_[i - 1], panel(nodes_[i - 1], nodes_[i]));
  cum_right_[n - 1] = rt;
  for (std::size_t i = n - 1; i-- > 0;) cum_right_[i] = log_add(cum_right_[i + 1], panel(nodes_[i], nodes_[i + 1]));
}

double LogCumulative::panel(double a, double b) const {
  if (!(b > a)) return -kInf;
  const double base = std::max(f_(a), f_(b));
  auto g = [&](double t) { return std::exp(f_(t) - base); };
  return base + std::log(gauss_legendre8(g, a, b));
}

double LogCumulative::left(double x) const {
  if (x <= nodes_.front()) return cum_left_.front();
  if (x >= nodes_.back()) return cum_left_.back();
  const std::size_t j = static_cast<std::size_t>(std::upper_bound(nodes_.begin(), nodes_.end(), x) - nodes_.begin());
  return log_add(cum_left_[j - 1], panel(nodes_[j - 1], x));
}

double LogCumulative::right(double x) const {
  if (x <= nodes_.front()) return cum_right_.front();
  if (x >= nodes_.back()) return cum_right_.back();
  const std::size_t j = static_cast<std::size_t>(std::upper_bound(nodes_.begin(), nodes_.end(), x) - nodes_.begin());
  return log_add(cum_right_[j], panel(x, nodes_[j]));
}

// ---------------------------------------------------------------------------

DaviesHarrellReport check_davies_harrell(const FssProfile& fss, std::uint64_t seed, int probes) {
  DaviesHarrellReport rep;
  const WeightField& F = fss.field;
  // int 1/(r rho) from Gauss panels on the sweep nodes, independent of the stored logs of u, v.
  auto logw = [&](double t) { return -std::log(F.r(t)) - fss.log_rho(t); };
  const LogCumulative C(fss.quadrature_nodes(), logw, [](double) { return 0.0; }, false);
  auto D = [&](double a, double b) {
    const double la = C.left(a), lb = C.left(b);
    if (b >= a) return std::exp(lb) * -std::expm1(la - lb);
    return -std::exp(la) * -std::expm1(lb - la);
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-fss.window.X, fss.window.X);
  for (int i = 0; i < probes; ++i) {
    const double x = U(rng);
    const double Dx = D(fss.x0, x);
    const double half = 0.5 * fss.log_rho(x);
    const double rv = std::abs(std::expm1(half + 0.5 * Dx - fss.lv(x)));
    const double ru = std::abs(std::expm1(half - 0.5 * Dx - fss.lu(x)));
    rep.max_rel_residual = std::max({rep.max_rel_residual, rv, ru});
  }
  rep.probes = probes;
  const double X = fss.window.X;
  const std::array<double, 3> L = {X / 4, X / 2, X};
  for (std::size_t k = 0; k < 3; ++k) {
    rep.right_integral[k] = D(0.0, L[k]);
    rep.left_integral[k] = D(-L[k], 0.0);
  }
  rep.right_trend = classify_trend(rep.right_integral);
  rep.left_trend = classify_trend(rep.left_integral);
  return rep;
}

namespace {

template <typename Fn>
double central(Fn f, double x, double h) {
  // Fourth-order central difference.
  return (8.0 * (f(x + h) - f(x - h)) - (f(x + 2 * h) - f(x - 2 * h))) / (12.0 * h);
}

bool near_break(const WeightField& F, double x, double h) {
  for (double b : F.breakpoints()) {
    if (std::abs(b - x) <= 2.5 * h) return true;
  }
  return false;
}

}  // namespace

LogDerivativeReport check_log_derivative_identities(const FssProfile& fss) {
  LogDerivativeReport rep;
  const WeightField& F = fss.field;
  const double h = fss.window.step() * 1e-2;
  auto lv = [&](double x) { return fss.lv(x); };
  auto lu = [&](double x) { return fss.lu(x); };
  auto rho = [&](double x) { return fss.rho_at(x); };
  for (std::size_t i = 1; i + 1 < fss.grid.size(); ++i) {
    double x = fss.grid[i];
    if (near_break(F, x, h)) x = 0.5 * (x + fss.grid[i + 1]);  // tables put breaks on the nodes
    if (near_break(F, x, h)) continue;
    const double r = F.r(x), p = fss.rho_at(x);
    const double rp = r * central(rho, x, h);
    rep.max_v_residual = std::max(rep.max_v_residual, std::abs(2 * r * p * central(lv, x, h) - 1.0 - rp));
    rep.max_u_residual = std::max(rep.max_u_residual, std::abs(2 * r * p * central(lu, x, h) + 1.0 - rp));
    ++rep.nodes;
  }
  return rep;
}

double max_r_rho_prime(const FssProfile& fss) {
  const WeightField& F = fss.field;
  const double h = fss.window.step() * 1e-2;
  auto rho = [&](double x) { return fss.rho_at(x); };
  double m = 0.0;
  for (std::size_t i = 1; i + 1 < fss.grid.size(); ++i) {
    double x = fss.grid[i];
    if (near_break(F, x, h)) x = 0.5 * (x + fss.grid[i + 1]);
    if (near_break(F, x, h)) continue;
    m = std::max(m, F.r(x) * std::abs(central(rho, x, h)));
  }
  return m;
}

PrincipalTailReport principal_tails(const FssProfile& fss) {
  PrincipalTailReport rep;
  const WeightField& F = fss.field;
  const double X = fss.window.X;
  QuadratureTolerance tol{1e-300, 1e-10, 40};
  std::vector<double> cuts(F.breakpoints().begin(), F.breakpoints().end());
  auto iu = [&](double t) { return std::exp(-2 * fss.lu(t)) / F.r(t); };
  auto iv = [&](double t) { return std::exp(-2 * fss.lv(t)) / F.r(t); };
  const std::array<double, 3> L = {X / 4, X / 2, X};
  double prev = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double a = k == 0 ? L[0] / 2 : prev;
    rep.u_left[k] = adaptive_gauss(iu, -L[k], -a, tol, cuts);
    rep.v_left[k] = adaptive_gauss(iv, -L[k], -a, tol, cuts);
    rep.v_right[k] = adaptive_gauss(iv, a, L[k], tol, cuts);
    rep.u_right[k] = adaptive_gauss(iu, a, L[k], tol, cuts);
    prev = L[k];
  }
  rep.u_left_trend = classify_tail(rep.u_left);
  rep.v_left_trend = classify_tail(rep.v_left);
  rep.v_right_trend = classify_tail(rep.v_right);
  rep.u_right_trend = classify_tail(rep.u_right);
  rep.v_over_u_left = std::exp(fss.lv(-X) - fss.lu(-X));
  rep.u_over_v_right = std::exp(fss.lu(X) - fss.lv(X));
  return rep;
}

}  // namespace srt
