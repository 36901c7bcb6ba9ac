#include "srt/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srt/errors.hpp"
#include "srt/log.hpp"

namespace srt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) fail(ErrorKind::invalid_argument, "p must lie in (1, inf)");
}

double conjugate(double p) { return p / (p - 1.0); }

// Weight A is integrated from a to x, weight B from x to b; qa, qb are the outer exponents.
struct HardyCore {
  std::vector<double> nodes;
  LogFn la, dla, lb, dlb;
  double qa = 2.0, qb = 2.0;
  bool a_inf = false, b_inf = false;
};

HardyResult hardy_sup(const HardyCore& c) {
  HardyResult res;
  const auto zero = [](double) { return 0.0; };
  auto make = [&](const LogFn& f, const LogFn& df, bool tails) {
    return LogCumulative(c.nodes, f, tails ? df : LogFn(zero), tails);
  };
  LogCumulative A = make(c.la, c.dla, c.a_inf);
  if (c.a_inf && !A.left_tail_finite()) {
    res.truncated = true;
    A = make(c.la, c.dla, false);
  }
  LogCumulative B = make(c.lb, c.dlb, c.b_inf);
  if (c.b_inf && !B.right_tail_finite()) {
    res.truncated = true;
    B = make(c.lb, c.dlb, false);
  }
  if (res.truncated) log::warn("Hardy constant: divergent tail, supremum taken over the finite part");

  auto logH = [&](double x) { return A.left(x) / c.qa + B.right(x) / c.qb; };
  const auto& n = c.nodes;
  double best = -kInf;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double v = logH(n[i]);
    if (v > best) {
      best = v;
      k = i;
    }
  }
  double xm = n[k];
  if (n.size() >= 3) {
    const double lo = n[k == 0 ? 0 : k - 1], hi = n[std::min(k + 1, n.size() - 1)];
    const double xr = golden_section_max(logH, lo, hi);
    const double vr = logH(xr);
    if (vr > best) {
      best = vr;
      xm = xr;
    }
  }
  res.value = std::exp(best);
  res.argmax = xm;
  return res;
}

std::vector<double> uniform_nodes(double a, double b, int samples) {
  if (!(std::isfinite(a) && std::isfinite(b) && b > a)) {
    fail(ErrorKind::invalid_argument, "Hardy constant needs a finite interval a < b");
  }
  samples = std::max(samples, 2);
  std::vector<double> n(samples + 1);
  for (int i = 0; i <= samples; ++i) n[i] = a + (b - a) * i / samples;
  n.back() = b;
  return n;
}

LogFn numeric_slope(const LogFn& f) {
  return [f](double x) {
    const double h = 1e-5 * (1.0 + std::abs(x));
    return (f(x + h) - f(x - h)) / (2.0 * h);
  };
}

LogFn scaled(const LogFn& f, double s) {
  return [f, s](double x) { return s * f(x); };
}

std::vector<double> fss_nodes(const FssProfile& fss, double a, double b) {
  std::vector<double> out;
  for (double x : fss.quadrature_nodes()) {
    if (x > a && x < b) out.push_back(x);
  }
  if (std::isfinite(a)) out.insert(out.begin(), a);
  if (std::isfinite(b)) out.push_back(b);
  if (out.size() < 2) fail(ErrorKind::invalid_argument, "interval does not meet the trusted range");
  return out;
}

}  // namespace

double hardy_factor(double p) {
  check_p(p);
  const double q = conjugate(p);
  return std::pow(p, 1.0 / p) * std::pow(q, 1.0 / q);
}

HardyResult hardy_constant(const LogFn& log_mu, const LogFn& log_theta, double p, double a, double b,
                           int samples) {
  check_p(p);
  const double q = conjugate(p);
  HardyCore c;
  c.nodes = uniform_nodes(a, b, samples);
  c.la = scaled(log_mu, p);
  c.lb = scaled(log_theta, q);
  c.dla = numeric_slope(c.la);
  c.dlb = numeric_slope(c.lb);
  c.qa = p;
  c.qb = q;
  return hardy_sup(c);
}

HardyResult hardy_constant_tilde(const LogFn& log_mu, const LogFn& log_theta, double p, double a, double b,
                                 int samples) {
  check_p(p);
  const double q = conjugate(p);
  HardyCore c;
  c.nodes = uniform_nodes(a, b, samples);
  c.la = scaled(log_theta, q);
  c.lb = scaled(log_mu, p);
  c.dla = numeric_slope(c.la);
  c.dlb = numeric_slope(c.lb);
  c.qa = q;
  c.qb = p;
  return hardy_sup(c);
}

HardyResult hardy_upper(const FssProfile& fss, double p, double a, double b) {
  check_p(p);
  const double q = conjugate(p);
  const WeightField& F = fss.field;
  HardyCore c;
  c.nodes = fss_nodes(fss, a, b);
  c.la = [&fss, p](double x) { return p * fss.lv(x); };
  c.dla = [&fss, &F, p](double x) { return p * fss.mv(x) / F.r(x); };
  c.lb = [&fss, q](double x) { return q * fss.lu(x); };
  c.dlb = [&fss, &F, q](double x) { return q * fss.mu(x) / F.r(x); };
  c.qa = p;
  c.qb = q;
  c.a_inf = std::isinf(a);
  c.b_inf = std::isinf(b);
  return hardy_sup(c);
}

HardyResult hardy_lower(const FssProfile& fss, double p, double a, double b) {
  check_p(p);
  const double q = conjugate(p);
  const WeightField& F = fss.field;
  HardyCore c;
  c.nodes = fss_nodes(fss, a, b);
  c.la = [&fss, q](double x) { return q * fss.lv(x); };
  c.dla = [&fss, &F, q](double x) { return q * fss.mv(x) / F.r(x); };
  c.lb = [&fss, p](double x) { return p * fss.lu(x); };
  c.dlb = [&fss, &F, p](double x) { return p * fss.mu(x) / F.r(x); };
  c.qa = q;
  c.qb = p;
  c.a_inf = std::isinf(a);
  c.b_inf = std::isinf(b);
  return hardy_sup(c);
}

ThetaProfile theta_p_profile(const FssProfile& fss, double p, const std::vector<double>& hd) {
  check_p(p);
  const double q = conjugate(p);
  const WeightField& F = fss.field;
  const auto nodes = fss.quadrature_nodes();
  const LogCumulative V(
      nodes, [&](double x) { return p * fss.lv(x); }, [&](double x) { return p * fss.mv(x) / F.r(x); }, true);
  const LogCumulative U(
      nodes, [&](double x) { return q * fss.lu(x); }, [&](double x) { return q * fss.mu(x) / F.r(x); }, true);
  if (!V.left_tail_finite() || !U.right_tail_finite()) {
    log::warn("theta_p: tail integral of v^p or u^p' looks divergent");
  }

  ThetaProfile out;
  out.p = p;
  out.x = fss.grid;
  out.theta.resize(out.x.size());
  for (std::size_t i = 0; i < out.x.size(); ++i) {
    out.theta[i] = std::exp(V.left(out.x[i]) / p + U.right(out.x[i]) / q);
  }
  const double X = fss.window.X;
  out.levels = edge_band_levels(out.x, out.theta, X);
  out.trend = classify_trend(out.levels);

  if (hd.size() == out.x.size()) {
    out.ratio_min = kInf;
    out.ratio_max = 0.0;
    for (std::size_t i = 0; i < hd.size(); ++i) {
      const double r = out.theta[i] / hd[i];
      out.ratio_min = std::min(out.ratio_min, r);
      out.ratio_max = std::max(out.ratio_max, r);
    }
  }

  out.N = {X / 4.0, X / 2.0};
  for (int k = 0; k < 2; ++k) {
    const double N = out.N[k];
    const double VN = V.left(N), UN = U.right(-N);
    double sp = 0.0, sm = 0.0;
    for (double x : out.x) {
      if (x > N) {
        const double Lx = V.left(x);
        const double lv = Lx + std::log(-std::expm1(VN - Lx));
        sp = std::max(sp, std::exp(lv / p + U.right(x) / q));
      } else if (x < -N) {
        const double Rx = U.right(x);
        const double lu = Rx + std::log(-std::expm1(UN - Rx));
        sm = std::max(sm, std::exp(V.left(x) / p + lu / q));
      }
    }
    out.sup_plus[k] = sp;
    out.sup_minus[k] = sm;
  }
  return out;
}

DiscreteGreen discretize_green(const FssProfile& fss, int n, double half) {
  if (n < 1) fail(ErrorKind::invalid_argument, "discretization needs n >= 1");
  if (!(half > 0.0)) half = fss.window.X;
  if (half > fss.trusted()) fail(ErrorKind::invalid_argument, "discretization interval exceeds the trusted range");
  DiscreteGreen dg;
  dg.n = n;
  dg.half = half;
  dg.w = 2.0 * half / n;
  dg.t.resize(n);
  std::vector<double> edges(n + 1);
  for (int i = 0; i <= n; ++i) edges[i] = -half + i * dg.w;
  edges[n] = half;
  for (int i = 0; i < n; ++i) dg.t[i] = 0.5 * (edges[i] + edges[i + 1]);

  // nodes of both sweeps plus the cell edges
  std::vector<double> nodes;
  for (double x : fss.quadrature_nodes()) {
    if (x > -half && x < half) nodes.push_back(x);
  }
  nodes.insert(nodes.end(), edges.begin(), edges.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  const LogCumulative Cv(nodes, [&](double x) { return fss.lv(x); }, nullptr, false);
  const LogCumulative Cu(nodes, [&](double x) { return fss.lu(x); }, nullptr, false);
  auto log_cell = [](double la, double lb) { return lb + std::log(-std::expm1(la - lb)); };

  // log of int_cell v and int_cell u
  std::vector<double> lV(n), lU(n), diag(n);
  for (int i = 0; i < n; ++i) {
    lV[i] = log_cell(Cv.left(edges[i]), Cv.left(edges[i + 1]));
    lU[i] = log_cell(Cu.right(edges[i + 1]), Cu.right(edges[i]));
  }
  // diagonal cell: 2 int_a^b u(t) int_a^t v dt, on the node panels inside the cell
  for (int i = 0; i < n; ++i) {
    const double a = edges[i], b = edges[i + 1];
    const double la = Cv.left(a);
    auto g = [&](double t) {
      const double lt = Cv.left(t);
      return t > a ? std::exp(fss.lu(t) + log_cell(la, lt)) : 0.0;
    };
    auto lo = std::lower_bound(nodes.begin(), nodes.end(), a);
    double sum = 0.0, prev = a;
    for (auto it = lo + 1; it != nodes.end() && *it <= b; ++it) {
      sum += gauss_legendre8(g, prev, *it);
      prev = *it;
    }
    diag[i] = 2.0 * sum;
  }

  // cell-averaged kernel: M_ij = (1/w) int_cell_i int_cell_j G(x, t) dt dx
  dg.G1 = Eigen::MatrixXd::Zero(n, n);
  dg.G2 = Eigen::MatrixXd::Zero(n, n);
  const double lw = std::log(dg.w);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i < j) {
        dg.G2(i, j) = std::exp(lV[i] + lU[j] - lw);
      } else if (i > j) {
        dg.G1(i, j) = std::exp(lV[j] + lU[i] - lw);
      } else {
        const double d = 0.5 * diag[i] / dg.w;
        dg.G1(i, i) = d;
        dg.G2(i, i) = d;
      }
    }
  }
  dg.G = dg.G1 + dg.G2;
  return dg;
}

NormEstimate operator_norm(const Eigen::MatrixXd& M, double p, int max_iter, double tol) {
  check_p(p);
  NormEstimate est;
  const Eigen::Index n = M.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  const bool euclid = std::abs(p - 2.0) < 1e-14;
  if (!euclid) {
    max_iter = std::min(max_iter, 50);
    tol = std::max(tol, 1e-6);
  }
  const double q = conjugate(p);
  auto pnorm = [p](const Eigen::VectorXd& y) { return std::pow(y.array().abs().pow(p).sum(), 1.0 / p); };
  x /= euclid ? x.norm() : pnorm(x);
  double prev = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    const Eigen::VectorXd y = M * x;
    double value;
    if (euclid) {
      value = y.norm();
      x = M.transpose() * y;
      const double nx = x.norm();
      if (!(nx > 0.0)) break;
      x /= nx;
    } else {
      value = pnorm(y);
      const Eigen::VectorXd dual = y.array().sign() * y.array().abs().pow(p - 1.0);
      const Eigen::VectorXd z = M.transpose() * dual;
      x = z.array().sign() * z.array().abs().pow(q - 1.0);
      const double nx = pnorm(x);
      if (!(nx > 0.0)) break;
      x /= nx;
    }
    est.value = std::max(est.value, value);
    est.iterations = it;
    if (it > 1 && std::abs(value - prev) <= tol * value) {
      est.converged = true;
      break;
    }
    prev = value;
  }
  if (!est.converged && euclid) log::warn("operator norm iteration did not converge after ", est.iterations, " steps");
  return est;
}

SplitNorms split_operator_norms(const FssProfile& fss, const DiscreteGreen& dg, double p) {
  SplitNorms s;
  s.p = p;
  s.g1 = operator_norm(dg.G1, p);
  s.g2 = operator_norm(dg.G2, p);
  s.g = operator_norm(dg.G, p);
  s.H_upper = hardy_upper(fss, p, -dg.half, dg.half).value;
  s.H_lower = hardy_lower(fss, p, -dg.half, dg.half).value;
  s.factor = hardy_factor(p);
  constexpr double tiny = 1e-9;
  s.triangle_ok = 0.5 * (s.g1.value + s.g2.value) <= s.g.value * (1.0 + tiny) &&
                  s.g.value <= (s.g1.value + s.g2.value) * (1.0 + tiny);
  const auto sandwich = [&](double H, double norm) {
    return H <= norm * (1.0 + s.slack) && norm <= s.factor * H * (1.0 + s.slack);
  };
  s.sandwich_upper_ok = sandwich(s.H_upper, s.g2.value);
  s.sandwich_lower_ok = sandwich(s.H_lower, s.g1.value);
  return s;
}

SplitNorms split_operator_norms(const FssProfile& fss, double p, int n, double half) {
  return split_operator_norms(fss, discretize_green(fss, n, half), p);
}

}  // namespace srt
