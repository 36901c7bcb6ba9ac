// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "srt/hardy.hpp"
#include "srt/invariants.hpp"
#include "srt/local_geometry.hpp"
#include "srt/pipeline.hpp"
#include "srt/spectral.hpp"

using namespace srt;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = true;
  std::ostringstream why;  // first few failure reasons
  int reasons = 0;
  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (reasons++ < 4) why << (reasons > 1 ? "; " : "") << what;
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void run(const char* id, const char* title, const std::function<void(Outcome&)>& body, double budget = kInf) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = since(t0);
  o.require(secs < budget, "runtime " + num(secs) + " s over " + num(budget) + " s");
  failures += !o.pass;
  std::printf("%s %s  %s (%.2f s)%s%s\n", id, o.pass ? "PASS" : "FAIL", title, secs, o.pass ? "" : "  -- ",
              o.why.str().c_str());
  std::fflush(stdout);
}

void near(Outcome& o, const std::string& what, double got, double want, double tol) {
  o.require(std::abs(got - want) <= tol, what + " = " + num(got) + ", want " + num(want));
}

// The five reference presets and the windows they are checked on. Stiff ones use short windows.
struct Preset {
  std::string name;
  CoefficientSpec spec;
  Window window;
  AnalysisOptions opt;
};

std::vector<Preset> presets() {
  AnalysisOptions wide;
  wide.max_radius = 400.0;
  return {
      {"constant(1,1)", CoefficientSpec::constant(1, 1), Window(20, 601), {}},
      {"constant(1,4)", CoefficientSpec::constant(1, 4), Window(10, 601), {}},
      {"exponential(-1,1)", CoefficientSpec::exponential(-1, 1), Window(5, 601), {}},
      {"exponential(1,0)", CoefficientSpec::exponential(1, 0), Window(3, 601), wide},
      {"polynomial-q(1)", CoefficientSpec::polynomial_q(1), Window(20, 601), {}},
  };
}

std::map<std::string, InvariantReport>& invariant_cache() {
  static std::map<std::string, InvariantReport> cache;
  return cache;
}

const InvariantReport& invariants(const Preset& p) {
  auto& c = invariant_cache();
  auto it = c.find(p.name);
  if (it != c.end()) return it->second;
  VerifyOptions o;
  o.analysis = p.opt;
  return c.emplace(p.name, run_invariants(p.spec, p.window, o)).first->second;
}

// Requires a named check to be present, evaluated, and passing.
void require_check(Outcome& o, const Preset& p, const std::string& name, int min_samples = 1) {
  const InvariantReport& r = invariants(p);
  for (const auto& c : r.checks) {
    if (c.name != name) continue;
    o.require(c.samples >= min_samples, p.name + ": '" + name + "' not evaluated (" + c.note + ")");
    o.require(c.passed, p.name + ": '" + name + "' worst " + num(c.worst) + " vs " + num(c.limit));
    return;
  }
  o.require(false, p.name + ": '" + name + "' missing");
}

// max relative spread of g over samples with lo <= |x| <= hi
double spread(const std::vector<double>& x, const std::vector<double>& g, double lo, double hi,
              const std::function<double(double, double)>& scale = {}) {
  double mn = kInf, mx = -kInf;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double ax = std::abs(x[i]);
    if (ax < lo || ax > hi) continue;
    const double v = scale ? scale(x[i], g[i]) : g[i];
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  return (mx - mn) / mn;
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");

  run("AC1", "constant r = q = 1 golden values", [](Outcome& o) {
    const Analysis a = analyze(CoefficientSpec::constant(1, 1), Window(30, 601));
    const AuxProfile& x = a.aux;
    o.require(x.has_h && x.has_d && x.has_s && x.has_mu && x.has_dtilde, "auxiliary route unavailable");
    o.require(a.fss.has_value(), "fundamental system unavailable: " + a.fss_error);
    if (!o.pass) return;
    const double tol = 1e-6;
    auto all = [&](const char* name, const std::vector<double>& v, double want) {
      double worst = 0.0;
      for (double t : v) worst = std::max(worst, std::abs(t - want));
      o.require(worst <= tol, std::string(name) + " off by " + num(worst));
    };
    all("d1", x.d1, 1.0);
    all("d2", x.d2, 1.0);
    all("phi", x.phi, 1.0);
    all("psi", x.psi, 1.0);
    all("h", x.h, 0.5);
    all("d", x.d, 0.25);
    all("rho", a.fss->rho, 0.5);
    all("s", x.s, 0.25);
    all("mu", x.mu, 1.0);
    all("dtilde", x.dtilde, 1.0);
    const CriteriaReport& c = a.criteria;
    all("h d", c.B.values, 0.125);
    all("rho s", c.S.values, 0.125);
    near(o, "B", c.B.extremum, 0.125, tol);
    near(o, "S", c.S.extremum, 0.125, tol);
    all("Steklov average", c.A.values, 1.0);
    all("mu-average", c.A_tilde.values, 1.0);
    all("theta_2", theta_p_profile(*a.fss, 2.0).theta, 0.25);
    near(o, "x0", a.fss->x0, 0.0, tol);
  }, 10.0);

  run("AC2", "exponential decision table, 9 cells at X = 30, N = 601", [](Outcome& o) {
    const auto cells = exponential_table({-1, 0, 1}, {-1, 0, 1}, Window(30, 601));
    o.require(cells.size() == 9, "expected 9 cells");
    for (const auto& c : cells) {
      o.require(c.matches(), "(" + num(c.alpha) + "," + num(c.beta) + ") got " + to_string(c.report.solvable) +
                                 "/" + to_string(c.report.compact) + " want " + to_string(c.expected_solvable) +
                                 "/" + to_string(c.expected_compact) + (c.error.empty() ? "" : " " + c.error));
    }
  }, 120.0);

  run("AC3", "alpha = beta = -1: constant lengths, h ~ e^{|x|}", [](Outcome& o) {
    const Analysis a = analyze(CoefficientSpec::exponential(-1, -1), Window(30, 601));
    const AuxProfile& x = a.aux;
    o.require(x.has_h && x.has_d && x.has_s, "auxiliary route unavailable");
    if (!o.pass) return;
    const double lo = 5.0, hi = 25.0;
    o.require(spread(x.x, x.d1, lo, hi) < 0.01, "d1 spread " + num(spread(x.x, x.d1, lo, hi)));
    o.require(spread(x.x, x.d2, lo, hi) < 0.01, "d2 spread " + num(spread(x.x, x.d2, lo, hi)));
    o.require(spread(x.x, x.d, lo, hi) < 0.01, "d spread " + num(spread(x.x, x.d, lo, hi)));
    o.require(spread(x.x, x.s, lo, hi) < 0.01, "s spread " + num(spread(x.x, x.s, lo, hi)));
    const double hs = spread(x.x, x.h, lo, hi, [](double t, double h) { return h * std::exp(-std::abs(t)); });
    o.require(hs < 0.01, "h e^{-|x|} spread " + num(hs));
    // root of (e^d - 1)(1 - e^{-d}) = 1
    const double want = std::log((3.0 + std::sqrt(5.0)) / 2.0);
    for (std::size_t i = 0; i < x.x.size(); ++i) {
      if (std::abs(x.x[i]) >= lo) near(o, "d2 at " + num(x.x[i]), x.d2[i], want, 1e-4);
    }
    near(o, "d2 reference", want, 0.962424, 1e-6);
  });

  run("AC4", "two-sided inequalities at >= 400 samples on five presets", [](Outcome& o) {
    for (const auto& p : presets()) {
      require_check(o, p, "h/2 <= rho <= 2h", 400);
      require_check(o, p, "v/2 <= r v' phi <= 2v, same for u", 400);
      if (!build_weight_field(p.spec).r_is_one()) continue;
      require_check(o, p, "dtilde/4 <= rho <= 3 dtilde/2", 400);
    }
  });

  run("AC5", "Wronskian, reconstruction and log-derivative identities", [](Outcome& o) {
    for (const auto& p : presets()) {
      require_check(o, p, "Wronskian r(v'u - u'v) = 1", p.window.N);
      require_check(o, p, "Davies-Harrell reconstruction", 100);
      require_check(o, p, "log-derivative identities", 100);
      require_check(o, p, "r |rho'| < 1", p.window.N);
    }
  });

  run("AC6", "Lipschitz bounds at 50 pairs, exact coverings", [](Outcome& o) {
    for (const auto& p : presets()) {
      require_check(o, p, "Lipschitz d", 50);
      require_check(o, p, "Lipschitz s", 50);
      require_check(o, p, "covering chain d");
      require_check(o, p, "covering chain s");
    }
  });

  run("AC7", "Hardy sandwich, constant(1,1), p = 2, n = 512, X = 20", [](Outcome& o) {
    const auto fss = compute_fss(build_weight_field(CoefficientSpec::constant(1, 1)), Window(20, 601));
    const SplitNorms s = split_operator_norms(fss, 2.0, 512);
    near(o, "H_2", s.H_upper, 0.25, 0.01);
    o.require(s.g2.value >= 0.25 * 0.95 && s.g2.value <= 0.5 * 1.05, "||G2|| = " + num(s.g2.value));
    o.require(s.g1.value >= 0.25 * 0.95 && s.g1.value <= 0.5 * 1.05, "||G1|| = " + num(s.g1.value));
    o.require(s.triangle_ok, "triangle relation: ||G|| = " + num(s.g.value) + ", ||G1|| + ||G2|| = " +
                                 num(s.g1.value + s.g2.value));
  });

  run("AC8", "spectrum: constant(1,1) level and the compact signature", [](Outcome& o) {
    const auto f1 = compute_fss(build_weight_field(CoefficientSpec::constant(1, 1)), Window(20, 601));
    const SpectralReport s1 = spectrum(f1, 1024, 5);
    o.require(s1.lambda_max >= 0.90 && s1.lambda_max <= 1.001, "lambda_max = " + num(s1.lambda_max));
    o.require(s1.converged, "constant(1,1) eigen-iteration did not converge");

    const Analysis a = analyze(CoefficientSpec::exponential(-1, 1), Window(5, 601));
    o.require(a.fss.has_value(), "fundamental system unavailable: " + a.fss_error);
    o.require(a.criteria.B.available, "B unavailable");
    if (!o.pass) return;
    const SpectralReport s2 = spectrum(*a.fss, 512, 5, a.criteria.B.extremum, true);
    o.require(s2.tail_ratio >= 3.0, "lambda_1/lambda_5 = " + num(s2.tail_ratio));
    const double ratio = s2.lambda_max / a.criteria.B.extremum;
    o.require(ratio >= 1.0 / 64 && ratio <= 64.0, "lambda_max/B = " + num(ratio));
  });

  run("AC9", "smooth asymptotics, r = 1, q = 1 + x^2 at |x| = 50", [](Outcome& o) {
    const auto F = build_weight_field(CoefficientSpec::polynomial_q(1));
    SolverLimits lim;
    for (double x : {-50.0, 50.0}) {
      const auto p = compute_phi_psi_h(F, x, lim);
      near(o, "h sqrt(q) at " + num(x), p.h * std::sqrt(F.q(x)), 0.5, 0.05);
      const auto sa = smooth_asymptotics(F, x);
      near(o, "d1/dhat at " + num(x), solve_d1(F, x, lim) / sa.dhat, 1.0, 0.05);
    }
  }, 30.0);

  run("AC10", "criteria cross-consistency on five presets", [](Outcome& o) {
    for (const auto& p : presets()) {
      const InvariantReport& r = invariants(p);
      const CriteriaReport& c = r.analysis.criteria;
      o.require(c.b_solvable == c.s_solvable && c.b_compact == c.s_compact,
                p.name + ": B route " + to_string(c.b_solvable) + "/" + to_string(c.b_compact) + ", S route " +
                    to_string(c.s_solvable) + "/" + to_string(c.s_compact));
      require_check(o, p, "A diverging implies h d vanishing");
      if (c.r_is_one) require_check(o, p, "dtilde -> 0 iff local integrals of q -> infinity");
    }
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
