#include <chrono>
#include <cmath>

#include "doctest.h"
#include "srt/errors.hpp"
#include "srt/local_geometry.hpp"

using namespace srt;

namespace {

// Root of (e^d - 1)(1 - e^{-d}) = 1: t = e^d solves t^2 - 3t + 1 = 0.
const double kC = std::log((3.0 + std::sqrt(5.0)) / 2.0);

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::io;
}

}  // namespace

TEST_CASE("one-sided lengths for constant coefficients") {
  const auto f = build_weight_field(CoefficientSpec::constant(1, 1));
  SolverLimits lim;
  for (double x : {-3.0, 0.0, 7.5}) {
    CHECK(solve_d1(f, x, lim) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(solve_d2(f, x, lim) == doctest::Approx(1.0).epsilon(1e-12));
    const auto p = compute_phi_psi_h(f, x, lim);
    CHECK(p.phi == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.h == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p.identity_residual < 1e-10);
  }
  const auto g = build_weight_field(CoefficientSpec::constant(4, 1));
  CHECK(solve_d2(g, 0.0, lim) == doctest::Approx(2.0).epsilon(1e-12));
  const auto p = compute_phi_psi_h(g, 0.0, lim);
  CHECK(p.phi == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p.h == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("exponential(-1,-1) lengths and h growth") {
  const auto f = build_weight_field(CoefficientSpec::exponential(-1, -1));
  SolverLimits lim;
  CHECK(kC == doctest::Approx(0.962424).epsilon(1e-6));
  CHECK(solve_d1(f, 10.0, lim) == doctest::Approx(kC).epsilon(1e-10));
  CHECK(solve_d2(f, 10.0, lim) == doctest::Approx(kC).epsilon(1e-10));
  const double h10 = compute_phi_psi_h(f, 10.0, lim).h;
  const double h12 = compute_phi_psi_h(f, 12.0, lim).h;
  CHECK(h12 / h10 == doctest::Approx(std::exp(2.0)).epsilon(1e-10));
}

TEST_CASE("no root when q vanishes") {
  const auto f = build_weight_field(CoefficientSpec::tabulated({-1, 0, 1}, {1, 1, 1}, {0, 0, 0}));
  SolverLimits lim;
  CHECK(kind_of([&] { solve_d1(f, 0.0, lim); }) == ErrorKind::no_finite_root);
  auto h = [](double) { return 1.0; };
  CHECK(kind_of([&] { solve_mu(f, h, 0.0, lim); }) == ErrorKind::window_exhausted);
}

TEST_CASE("d, mu, s and d-tilde on constant coefficients") {
  const auto f = build_weight_field(CoefficientSpec::constant(1, 1));
  SolverLimits lim;
  auto h = [](double) { return 0.5; };
  CHECK(solve_d(f, h, 2.0, lim) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(solve_mu(f, h, 2.0, lim) == doctest::Approx(1.0).epsilon(1e-12));
  auto rho = [](double) { return 0.5; };
  CHECK(solve_s(f, rho, 2.0, lim) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(solve_dtilde(f, 2.0, lim) == doctest::Approx(1.0).epsilon(1e-12));

  const auto g = build_weight_field(CoefficientSpec::constant(4, 1));
  auto hq = [](double) { return 0.25; };
  CHECK(solve_d(g, hq, 0.0, lim) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(solve_mu(g, hq, 0.0, lim) == doctest::Approx(2.0).epsilon(1e-12));

  const auto c14 = build_weight_field(CoefficientSpec::constant(1, 4));
  auto rq = [](double) { return 0.25; };
  CHECK(solve_s(c14, rq, 0.0, lim) == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("d-tilde for q = 1 + x^2 and the r = 1 precondition") {
  SolverLimits lim;
  const auto p = build_weight_field(CoefficientSpec::polynomial_q(1));
  const double dt = solve_dtilde(p, 0.0, lim);
  // Oracle: d(2d + 2d^3/3) = 2.
  CHECK(dt * (2 * dt + 2 * dt * dt * dt / 3) == doctest::Approx(2.0).epsilon(1e-12));
  // d^2 = (sqrt(21) - 3) / 2 from the quartic d^4 + 3 d^2 - 3 = 0
  CHECK(dt == doctest::Approx(std::sqrt((std::sqrt(21.0) - 3.0) / 2.0)).epsilon(1e-12));
  const auto e = build_weight_field(CoefficientSpec::exponential(-1, 0));
  CHECK(kind_of([&] { solve_dtilde(e, 0.0, lim); }) == ErrorKind::r_not_one);
}

TEST_CASE("h table matches direct evaluation") {
  const auto f = build_weight_field(CoefficientSpec::exponential(-1, 1));
  SolverLimits lim;
  HFunction H(f, -6, 6, lim);
  for (double x : {-5.3, -0.01, 0.0, 0.37, 4.9}) {
    CHECK(H(x) == doctest::Approx(compute_phi_psi_h(f, x, lim).h).epsilon(1e-8));
  }
  const auto t = build_weight_field(CoefficientSpec::tabulated({-4, -1, 0, 2, 4}, {1, 2, 1, 0.5, 1}, {1, 3, 1, 2, 1}));
  HFunction Ht(t, -3, 3, lim);
  for (double x : {-2.2, -1.0, 0.5, 1.99}) {
    CHECK(Ht(x) == doctest::Approx(compute_phi_psi_h(t, x, lim).h).epsilon(1e-8));
  }
}

TEST_CASE("exponential(-1,-1) profile constancy") {
  const auto f = build_weight_field(CoefficientSpec::exponential(-1, -1));
  const Window w(30, 601);
  const auto a = compute_aux_profile(f, w, SolverLimits::for_window(w));
  REQUIRE(a.has_h);
  REQUIRE(a.has_d);
  double dmin = 1e9, dmax = 0;
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    if (a.x[i] < 5 || a.x[i] > 25) continue;
    dmin = std::min(dmin, a.d[i]);
    dmax = std::max(dmax, a.d[i]);
  }
  CHECK(dmax / dmin < 1.01);
  // h = e^{|x|}/sqrt(5) away from the origin, so 2 d sqrt(5) = 1.
  CHECK(dmax == doctest::Approx(1.0 / (2.0 * std::sqrt(5.0))).epsilon(1e-6));
}

TEST_CASE("coverings chain exactly") {
  auto k = [](double) { return 0.25; };
  const Window w(3, 11);
  const auto c = build_covering(k, 0.0, w, CoveringKind::d);
  REQUIRE(c.forward.size() >= 6);
  for (std::size_t n = 0; n < c.forward.size(); ++n) {
    CHECK(c.forward[n].center == doctest::Approx((2.0 * (n + 1) - 1) / 4).epsilon(1e-12));
    CHECK(c.forward[n].hi - c.forward[n].lo == doctest::Approx(0.5).epsilon(1e-12));
  }
  CHECK(c.forward[0].lo == 0.0);
  CHECK(c.max_chain_gap() == 0.0);
  CHECK(c.covers(-3, 3));
  auto zero = [](double) { return 0.0; };
  CHECK(kind_of([&] { build_covering(zero, 0.0, w, CoveringKind::s); }) == ErrorKind::covering_failure);
}

TEST_CASE("smooth asymptotics") {
  const auto p = build_weight_field(CoefficientSpec::polynomial_q(1));
  const auto s0 = smooth_asymptotics(p, 0.0);
  CHECK(s0.dhat == doctest::Approx(1.0));
  CHECK(s0.kappa1 == 0.0);
  const auto s50 = smooth_asymptotics(p, 50.0);
  CHECK(s50.kappa2 <= 2 * 50 * 80 * s50.dhat / 2501 * 1.05);
  const auto c = smooth_asymptotics(build_weight_field(CoefficientSpec::constant(1, 1)), 3.0);
  CHECK(c.kappa1 == 0.0);
  CHECK(c.kappa2 == 0.0);
  const auto t = build_weight_field(CoefficientSpec::tabulated({0, 1, 2}, {1, 1, 1}, {1, 1, 1}));
  CHECK(kind_of([&] { smooth_asymptotics(t, 1.0); }) == ErrorKind::unsupported_preset);
}
