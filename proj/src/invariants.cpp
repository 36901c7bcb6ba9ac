#include "srt/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "srt/errors.hpp"
#include "srt/hardy.hpp"
#include "srt/log.hpp"
#include "srt/spectral.hpp"

namespace srt {

bool InvariantReport::ok() const { return failures() == 0; }

int InvariantReport::failures() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(),
                                        [](const Check& c) { return c.asserted && !c.passed; }));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kE2 = std::exp(2.0);

struct Recorder {
  std::vector<Check>& out;
  std::string module;

  Check& add(std::string name, double worst, double limit, bool passed, int samples, std::string note = {}) {
    Check c;
    c.module = module;
    c.name = std::move(name);
    c.worst = worst;
    c.limit = limit;
    c.passed = passed;
    c.samples = samples;
    c.note = std::move(note);
    out.push_back(std::move(c));
    return out.back();
  }
  // upper bound check: worst <= limit
  Check& upper(std::string name, double worst, double limit, int samples, std::string note = {}) {
    return add(std::move(name), worst, limit, worst <= limit, samples, std::move(note));
  }
  Check& skip(std::string name, std::string why) {
    Check& c = add(std::move(name), 0.0, 0.0, true, 0, std::move(why));
    c.asserted = false;
    return c;
  }
  // runs body; an exception turns into a failed check carrying the message
  template <typename F>
  void guarded(const std::string& name, F&& body) {
    try {
      body();
    } catch (const Error& e) {
      add(name, kInf, 0.0, false, 0, e.what());
    }
  }
};

void coefficient_checks(Recorder rec, const Analysis& a, std::mt19937_64& rng) {
  const WeightField& F = a.field;
  const double X = a.window.X;
  std::uniform_real_distribution<double> U(-X, X);

  double worst_R = 0.0, worst_Q = 0.0;
  for (int i = 0; i < 200; ++i) {
    double p[3] = {U(rng), U(rng), U(rng)};
    std::sort(p, p + 3);
    const double Rac = F.R(p[0], p[2]), Qac = F.Q(p[0], p[2]);
    worst_R = std::max(worst_R, std::abs(F.R(p[0], p[1]) + F.R(p[1], p[2]) - Rac) / (1.0 + std::abs(Rac)));
    worst_Q = std::max(worst_Q, std::abs(F.Q(p[0], p[1]) + F.Q(p[1], p[2]) - Qac) / (1.0 + std::abs(Qac)));
  }
  rec.upper("additivity of R", worst_R, 1e-10, 200);
  rec.upper("additivity of Q", worst_Q, 1e-10, 200);

  if (a.spec.kind == CoefficientKind::tabulated) {
    rec.skip("closed form vs quadrature", "tabulated input has no closed form");
  } else {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      double lo = U(rng), hi = U(rng);
      if (lo > hi) std::swap(lo, hi);
      if (hi - lo < 1e-6) continue;
      const double r1 = F.R(lo, hi), r2 = F.R_quad(lo, hi);
      const double q1 = F.Q(lo, hi), q2 = F.Q_quad(lo, hi);
      worst = std::max(worst, std::abs(r1 - r2) / std::abs(r1));
      if (q1 > 0.0) worst = std::max(worst, std::abs(q1 - q2) / std::abs(q1));
    }
    rec.upper("closed form vs quadrature", worst, 1e-8, 100);
  }

  int bad = 0;
  const auto grid = a.window.grid();
  for (double x : grid) {
    if (!(F.r(x) > 0.0) || !(F.q(x) >= 0.0)) ++bad;
  }
  rec.upper("r > 0, q >= 0 on the grid", bad, 0, static_cast<int>(grid.size()));
}

}  // namespace

namespace {

// root residuals and the bracketing F(root/2) < 1 < F(2 root) for one length family
void root_family(Recorder& rec, const std::string& what, const std::vector<double>& x,
                 const std::vector<double>& root, const std::function<double(double, double)>& F) {
  double res = 0.0;
  int order_bad = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    res = std::max(res, std::abs(F(x[i], root[i]) - 1.0));
    if (!(F(x[i], 0.5 * root[i]) < 1.0) || !(F(x[i], 2.0 * root[i]) > 1.0)) ++order_bad;
  }
  const int n = static_cast<int>(x.size());
  rec.upper("root residual " + what, res, 1e-8, n);
  rec.upper("monotone bracket " + what, order_bad, 0, n);
}

double segment_estimate(const std::vector<double>& x, const std::vector<double>& kappa) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    s += 0.5 * (x[i] - x[i - 1]) * (0.5 / kappa[i] + 0.5 / kappa[i - 1]);
  }
  return s;
}

void covering_check(Recorder& rec, const std::string& name, const ScalarFn& kappa, const Window& w,
                    CoveringKind kind, const std::vector<double>& x, const std::vector<double>& k) {
  constexpr double budget = 20000.0;
  const double est = segment_estimate(x, k);
  if (est > budget) {
    rec.skip(name, "about " + std::to_string(static_cast<long long>(est)) + " segments, over the budget");
    return;
  }
  rec.guarded(name, [&] {
    const Covering c = build_covering(kappa, 0.0, w, kind);
    const double gap = c.max_chain_gap();
    const bool covers = c.covers(-w.X, w.X);
    Check& ch = rec.add(name, gap, 0.0, gap == 0.0 && covers,
                        static_cast<int>(c.forward.size() + c.backward.size()),
                        covers ? "" : "window not covered");
    ch.note += (ch.note.empty() ? "" : "; ") + std::string("centre residual ") +
               std::to_string(c.max_center_residual());
  });
}

void geometry_checks(Recorder rec, const Analysis& a, std::mt19937_64& rng, int pairs) {
  const WeightField& F = a.field;
  const AuxProfile& aux = a.aux;
  const Window& W = a.window;
  const SolverLimits lim = SolverLimits::for_window(W);
  const auto& x = aux.x;
  const int n = static_cast<int>(x.size());

  if (!aux.has_h) {
    rec.skip("h-route lengths", "h unavailable: " + aux.h_error);
  } else {
    root_family(rec, "d1", x, aux.d1, [&](double t, double d) { return equation_d1(F, t, d); });
    root_family(rec, "d2", x, aux.d2, [&](double t, double d) { return equation_d2(F, t, d); });
    double range_lo = kInf, range_hi = 0.0;
    for (int i = 0; i < n; ++i) {
      const double m = std::min(aux.phi[i], aux.psi[i]);
      range_lo = std::min(range_lo, aux.h[i] / m);
      range_hi = std::max(range_hi, aux.h[i] / m);
    }
    rec.upper("h = phi psi / (phi + psi) identity", aux.h_identity_residual, 1e-10, n);
    rec.add("min(phi,psi)/2 <= h <= min(phi,psi)", range_hi, 1.0,
            range_lo >= 0.5 * (1.0 - 1e-12) && range_hi <= 1.0 + 1e-12, n)
        .note = "h/min ratio in [" + std::to_string(range_lo) + ", " + std::to_string(range_hi) + "]";
  }

  if (aux.has_d && a.h) {
    const HFunction& H = *a.h;
    auto wd = [&](double t) { return 1.0 / (F.r(t) * H(t)); };
    root_family(rec, "d", x, aux.d, [&](double t, double e) { return unit_integral(wd, F, t, e, lim); });
    double d_guess = aux.d[aux.d.size() / 2];
    auto dfun = [&](double t) { return d_guess = solve_d(F, [&H](double s) { return H(s); }, t, lim, d_guess); };
    rec.guarded("Lipschitz d", [&] {
      std::uniform_real_distribution<double> U(-W.X, W.X), V(-1.0, 1.0);
      double worst = 0.0;
      for (int k = 0; k < pairs; ++k) {
        const double x0 = U(rng);
        const double d0 = dfun(x0);
        const double t = V(rng) * d0;
        if (t == 0.0) continue;
        worst = std::max(worst, (std::abs(dfun(x0 + t) - d0) - 1e-9 * d0) / std::abs(t));
      }
      rec.upper("Lipschitz d", worst, 1.0, pairs, "excess over |t| net of 1e-9 d(x) root noise");
    });
    covering_check(rec, "covering chain d", dfun, W, CoveringKind::d, x, aux.d);
    if (F.r_is_one()) {
      double lo = kInf, hi = 0.0;
      for (int i = 0; i < n; ++i) {
        lo = std::min(lo, aux.h[i] / aux.d[i]);
        hi = std::max(hi, aux.h[i] / aux.d[i]);
      }
      rec.add("r = 1: h/d in [1/(4e^2), 4e^2]", hi, 4.0 * kE2, lo >= 1.0 / (4.0 * kE2) && hi <= 4.0 * kE2, n);
    }
  } else {
    rec.skip("d equation", "d unavailable: " + aux.d_error);
  }
  if (aux.has_mu && a.h) {
    const HFunction& H = *a.h;
    auto wm = [&](double t) { return F.q(t) * H(t); };
    root_family(rec, "mu", x, aux.mu, [&](double t, double e) { return unit_integral(wm, F, t, e, lim); });
  }
  if (aux.has_dtilde) {
    root_family(rec, "dtilde", x, aux.dtilde, [&](double t, double e) { return equation_dtilde(F, t, e); });
  }

  if (aux.has_s && a.fss) {
    const ScalarFn rho = a.fss->rho_fn();
    auto ws = [&](double t) { return 1.0 / (F.r(t) * rho(t)); };
    rec.guarded("root residual s", [&] {
      root_family(rec, "s", x, aux.s, [&](double t, double e) { return unit_integral(ws, F, t, e, lim); });
    });
    double s_guess = aux.s[aux.s.size() / 2];
    auto sfun = [&](double t) { return s_guess = solve_s(F, rho, t, lim, s_guess); };
    rec.guarded("Lipschitz s", [&] {
      std::uniform_real_distribution<double> U(-W.X, W.X), V(-1.0, 1.0);
      double worst = 0.0;
      for (int k = 0; k < pairs; ++k) {
        const double x0 = U(rng);
        const double s0 = sfun(x0);
        const double t = V(rng) * s0;
        if (t == 0.0) continue;
        worst = std::max(worst, (std::abs(sfun(x0 + t) - s0) - 1e-9 * s0) / std::abs(t));
      }
      rec.upper("Lipschitz s", worst, 1.0, pairs, "excess over |t| net of 1e-9 s(x) root noise");
    });
    covering_check(rec, "covering chain s", sfun, W, CoveringKind::s, x, aux.s);
  } else {
    rec.skip("s equation", a.fss ? "s unavailable: " + aux.s_error : "fundamental system unavailable");
  }
}

}  // namespace

namespace {

void fss_checks(Recorder rec, const Analysis& a, std::uint64_t seed, std::mt19937_64& rng, int pairs) {
  if (!a.fss) {
    rec.skip("fundamental system", a.fss_error);
    return;
  }
  const FssProfile& fss = *a.fss;
  const WeightField& F = a.field;
  const AuxProfile& aux = a.aux;
  const auto& x = fss.grid;
  const int n = static_cast<int>(x.size());

  rec.upper("Wronskian r(v'u - u'v) = 1", fss.max_wronskian_residual, 1e-6, n);
  rec.guarded("Davies-Harrell reconstruction", [&] {
    const auto dh = check_davies_harrell(fss, seed, 100);
    rec.upper("Davies-Harrell reconstruction", dh.max_rel_residual, 1e-5, dh.probes);
  });
  rec.guarded("log-derivative identities", [&] {
    const auto ld = check_log_derivative_identities(fss);
    rec.upper("log-derivative identities", std::max(ld.max_v_residual, ld.max_u_residual), 1e-4, ld.nodes);
  });
  rec.guarded("r |rho'| < 1", [&] {
    rec.add("r |rho'| < 1", max_r_rho_prime(fss), 1.001, max_r_rho_prime(fss) < 1.001, n);
  });

  if (aux.has_h) {
    double lo = kInf, hi = 0.0, dlo = kInf, dhi = 0.0;
    for (int i = 0; i < n; ++i) {
      const double ratio = fss.rho[i] / aux.h[i];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      const double a1 = fss.mv(x[i]) * aux.phi[i];
      const double a2 = -fss.mu(x[i]) * aux.psi[i];
      dlo = std::min({dlo, a1, a2});
      dhi = std::max({dhi, a1, a2});
    }
    rec.add("h/2 <= rho <= 2h", hi, 2.0, lo >= 0.5 && hi <= 2.0, n).note =
        "rho/h in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
    rec.add("v/2 <= r v' phi <= 2v, same for u", dhi, 2.0, dlo >= 0.5 && dhi <= 2.0, n).note =
        "ratios in [" + std::to_string(dlo) + ", " + std::to_string(dhi) + "]";
  } else {
    rec.skip("h/2 <= rho <= 2h", "h unavailable");
  }
  if (aux.has_dtilde) {
    double lo = kInf, hi = 0.0;
    for (int i = 0; i < n; ++i) {
      lo = std::min(lo, fss.rho[i] / aux.dtilde[i]);
      hi = std::max(hi, fss.rho[i] / aux.dtilde[i]);
    }
    rec.add("dtilde/4 <= rho <= 3 dtilde/2", hi, 1.5, lo >= 0.25 && hi <= 1.5, n).note =
        "rho/dtilde in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
  }

  std::uniform_int_distribution<int> I(0, n - 1);
  std::uniform_real_distribution<double> V(-1.0, 1.0);
  if (aux.has_d && a.h) {
    const HFunction& H = *a.h;
    double worst_log = 0.0, worst_h = 0.0;
    for (int k = 0; k < pairs; ++k) {
      const int i = I(rng);
      const double t = x[i] + V(rng) * aux.d[i];
      worst_log = std::max({worst_log, std::abs(fss.lv(t) - fss.log_v[i]), std::abs(fss.lu(t) - fss.log_u[i]),
                            std::abs(fss.log_rho(t) - fss.log_rho(x[i]))});
      worst_h = std::max(worst_h, std::abs(std::log(H(t) / aux.h[i])));
    }
    rec.upper("local equivalence on d-intervals: |log v(t)/v(x)| etc <= 2", worst_log, 2.0, pairs);
    rec.upper("local equivalence of h: |log h(t)/h(x)| <= log(4e^2)", worst_h, std::log(4.0 * kE2), pairs);
  }
  if (aux.has_s) {
    double worst = 0.0;
    for (int k = 0; k < pairs; ++k) {
      const int i = I(rng);
      const double t = x[i] + V(rng) * aux.s[i];
      worst = std::max({worst, std::abs(fss.lv(t) - fss.log_v[i]), std::abs(fss.lu(t) - fss.log_u[i]),
                        std::abs(fss.log_rho(t) - fss.log_rho(x[i]))});
    }
    rec.upper("local equivalence on s-intervals: |log v(t)/v(x)| etc <= 1", worst, 1.0, pairs);
  }

  const double RL = F.R(-kInf, 0.0), RR = F.R(0.0, kInf);
  if (std::isfinite(RL) && std::isfinite(RR)) {
    const double tau = std::max(1.0 / RL, 1.0 / RR);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      worst = std::max(worst, fss.rho[i] / (tau * F.R(-kInf, x[i]) * F.R(x[i], kInf)));
    }
    rec.upper("rho <= tau R(-inf,x) R(x,inf)", worst, 1.0 + 1e-9, n);
  } else {
    rec.skip("rho <= tau R(-inf,x) R(x,inf)", "1/r not integrable");
  }
}

}  // namespace

namespace {

bool q_is_constant(const CoefficientSpec& s) {
  switch (s.kind) {
    case CoefficientKind::constant: return true;
    case CoefficientKind::exponential: return s.beta == 0.0;
    case CoefficientKind::tabulated:
      return std::adjacent_find(s.tq.begin(), s.tq.end(), std::not_equal_to<>()) == s.tq.end();
    case CoefficientKind::polynomial_q: return false;
  }
  return false;
}

bool determinate(Verdict v) { return v != Verdict::inconclusive; }

void criteria_checks(Recorder rec, const Analysis& a) {
  const CriteriaReport& c = a.criteria;
  const bool B_ok = !c.B.available || std::isfinite(c.B.extremum);
  const bool S_ok = !c.S.available || std::isfinite(c.S.extremum);
  rec.add("B and S finite when computed", 0.0, 0.0, B_ok && S_ok, 2);
  rec.add("compact implies solvable", 0.0, 0.0, c.compact != Verdict::yes || c.solvable == Verdict::yes, 1);

  if (c.b_over_s) {
    const double r = *c.b_over_s;
    Check& ch = rec.add("B/S in [1/16, 16]", r, 16.0, r >= 1.0 / 16.0 && r <= 16.0, 1);
    ch.asserted = a.spec.kind != CoefficientKind::tabulated;
  } else {
    rec.skip("B/S in [1/16, 16]", "B or S unavailable");
  }

  if (c.B.available && c.A.available) {
    rec.upper("h d A <= 16", c.hd_steklov_max, 16.0, static_cast<int>(c.B.values.size()));
    rec.add("A diverging implies h d vanishing", 0.0, 0.0,
            c.A.trend != Trend::diverging || c.B.trend == Trend::vanishing, 1)
        .note = std::string("A ") + to_string(c.A.trend) + ", h d " + to_string(c.B.trend);
  }

  if (determinate(c.b_solvable) && determinate(c.s_solvable)) {
    rec.add("verdicts from B and S agree", 0.0, 0.0,
            c.b_solvable == c.s_solvable && c.b_compact == c.s_compact, 1)
        .note = std::string("B: ") + to_string(c.b_solvable) + "/" + to_string(c.b_compact) +
                ", S: " + to_string(c.s_solvable) + "/" + to_string(c.s_compact);
  } else {
    rec.skip("verdicts from B and S agree", "one of the routes is not determinate");
  }

  if (c.r_is_one && c.dtilde_mass.available) {
    const bool lhs = c.dtilde_mass.trend == Trend::diverging;
    int bad = 0;
    std::string note = std::string("1/dtilde^2 ") + to_string(c.dtilde_mass.trend);
    for (std::size_t k = 0; k < c.molchanov.size(); ++k) {
      const bool rhs = c.molchanov[k].trend == Trend::diverging;
      if (lhs != rhs) ++bad;
      note += ", a=" + std::to_string(c.molchanov_a[k]) + ": " + to_string(c.molchanov[k].trend);
    }
    rec.upper("dtilde -> 0 iff local integrals of q -> infinity", bad, 0, 3, note);
  }

  if (q_is_constant(a.spec) && c.r_sup.finite_at_infinity()) {
    rec.add("constant q, bounded r: not compact", 0.0, 0.0, c.compact == Verdict::no, 1).note =
        std::string("compact = ") + to_string(c.compact);
  }
}

void operator_checks(Recorder rec_h, Recorder rec_s, const Analysis& a, const VerifyOptions& opt) {
  if (!a.fss) {
    rec_h.skip("Hardy bounds", "fundamental system unavailable");
    rec_s.skip("spectrum", "fundamental system unavailable");
    return;
  }
  const FssProfile& fss = *a.fss;
  const double X = a.window.X;
  std::vector<double> ps{2.0};
  if (opt.p != 2.0) ps.push_back(opt.p);
  for (double p : ps) {
    const std::string tag = " (p=" + std::to_string(p) + ")";
    rec_h.guarded("theta_p profile" + tag, [&] {
      const ThetaProfile th = theta_p_profile(fss, p, a.criteria.B.available ? a.criteria.B.values : std::vector<double>{});
      int bad = 0;
      for (double v : th.theta) {
        if (!(v >= 0.0) || !std::isfinite(v)) ++bad;
      }
      rec_h.upper("theta_p finite and nonnegative" + tag, bad, 0, static_cast<int>(th.theta.size()));
    });
    rec_h.guarded("split norms" + tag, [&] {
      const SplitNorms s = split_operator_norms(fss, p, opt.hardy_n);
      rec_h.add("triangle relation for G1, G2, G" + tag, s.g.value, s.g1.value + s.g2.value, s.triangle_ok,
                opt.hardy_n);
      rec_h.add("Hardy sandwich, upper half" + tag, s.g2.value, s.factor * s.H_upper, s.sandwich_upper_ok,
                opt.hardy_n)
          .note = "H = " + std::to_string(s.H_upper);
      rec_h.add("Hardy sandwich, lower half" + tag, s.g1.value, s.factor * s.H_lower, s.sandwich_lower_ok,
                opt.hardy_n)
          .note = "H = " + std::to_string(s.H_lower);
    });
  }

  rec_h.guarded("norm monotone", [&] {
    // window levels X/4, X/2, X on one cell size, so each matrix is a principal block of the next
    int m = std::max(2, opt.hardy_n / 4);
    m += m % 2;
    std::array<double, 3> byX{};
    for (int k = 0; k < 3; ++k) {
      const double half = X / 4.0 * (1 << k);
      byX[k] = operator_norm(discretize_green(fss, m << k, half).G, 2.0).value;
    }
    const bool incX = byX[1] >= byX[0] * (1 - 1e-9) && byX[2] >= byX[1] * (1 - 1e-9);
    rec_h.add("norm of G nondecreasing in the window", byX[2], 0.0, incX, 3).note =
        std::to_string(byX[0]) + ", " + std::to_string(byX[1]) + ", " + std::to_string(byX[2]);
  });

  rec_s.guarded("spectrum", [&] {
    const int n = opt.hardy_n;
    const DiscreteGreen dg = discretize_green(fss, n);
    const EigenTop top = eigen_top(dg.G, 10);
    const double lam = top.values.front();
    rec_s.add("lambda_max > 0", lam, 0.0, lam > 0.0, n);
    rec_s.add("discrete G symmetric", 0.0, 0.0, dg.G == dg.G.transpose(), n);
    const double g1 = operator_norm(dg.G1, 2.0).value, g2 = operator_norm(dg.G2, 2.0).value;
    rec_s.add("lambda_max inside the split-norm bracket", lam, g1 + g2,
              lam >= 0.5 * (g1 + g2) * (1 - 1e-6) && lam <= (g1 + g2) * (1 + 1e-6), n);
    const int m = std::max(1, n / 9);
    std::array<double, 3> lev{};
    for (int k = 0; k < 3; ++k) lev[k] = eigen_top(discretize_green(fss, m * (k == 0 ? 1 : (k == 1 ? 3 : 9))).G, 1).values[0];
    rec_s.add("lambda_max nondecreasing on nested grids", lev[2], 0.0,
              lev[1] >= lev[0] * (1 - 1e-9) && lev[2] >= lev[1] * (1 - 1e-9), 3)
        .note = std::to_string(lev[0]) + ", " + std::to_string(lev[1]) + ", " + std::to_string(lev[2]);

    const CriteriaReport& c = a.criteria;
    const bool hd_van = c.B.available && c.B.trend == Trend::vanishing;
    if (c.B.available) {
      const EnvelopeCheck env = check_eigen_vs_B(lam, c.B.extremum, hd_van);
      Check& ch = rec_s.add("lambda/B in [1/64, 64]", env.ratio, env.bound, env.within, 1);
      ch.asserted = hd_van;
      if (!hd_van) ch.note = "h d does not vanish; bound claimed only when it does";
      const DecayReport dr = decay_quantities(fss);
      const bool decays = dr.I_trend == Trend::vanishing && dr.J_trend == Trend::vanishing;
      rec_s.add("decay of I and its mirror iff h d -> 0", 0.0, 0.0, decays == hd_van, 1).note =
          std::string("I ") + to_string(dr.I_trend) + ", mirror " + to_string(dr.J_trend) + ", h d " +
          to_string(c.B.trend);
    }
    if (a.criteria.compact == Verdict::yes) {
      rec_s.upper("edge flux r y' y small for y = G 1[-1,1]", edge_flux_ratio(fss), 1e-3, 1);
    }
  });
}

}  // namespace

InvariantReport run_invariants(const CoefficientSpec& spec, const Window& window, const VerifyOptions& opt) {
  InvariantReport rep;
  rep.analysis = analyze(spec, window, opt.analysis);
  rep.label = rep.analysis.spec.label();
  std::mt19937_64 rng(opt.seed);
  coefficient_checks(Recorder{rep.checks, "coefficient_model"}, rep.analysis, rng);
  geometry_checks(Recorder{rep.checks, "local_geometry"}, rep.analysis, rng, opt.random_pairs);
  fss_checks(Recorder{rep.checks, "principal_solutions"}, rep.analysis, opt.seed, rng, opt.random_pairs);
  criteria_checks(Recorder{rep.checks, "criteria_engine"}, rep.analysis);
  operator_checks(Recorder{rep.checks, "hardy_bounds"}, Recorder{rep.checks, "spectral_estimator"}, rep.analysis,
                  opt);
  for (const Check& c : rep.checks) {
    if (c.asserted && !c.passed) log::warn("invariant failed: ", c.module, ": ", c.name, " (", c.note, ")");
  }
  return rep;
}

}  // namespace srt
