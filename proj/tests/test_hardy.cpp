#include <cmath>
#include <limits>

#include "doctest.h"
#include "srt/hardy.hpp"

using namespace srt;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const LogFn kZero = [](double) { return 0.0; };

FssProfile fss_of(const CoefficientSpec& s, double X, int N = 401) {
  return compute_fss(build_weight_field(s), Window(X, N), FssOptions{});
}

}  // namespace

TEST_CASE("Hardy constant with unit weights on (0, 1)") {
  // sup x^{1/p} (1 - x)^{1/p'}, attained at x = 1/p.
  CHECK(hardy_constant(kZero, kZero, 2.0, 0.0, 1.0).value == doctest::Approx(0.5).epsilon(1e-6));
  const double p = 3.0, pp = 1.5;
  const double want = std::pow(1.0 / p, 1.0 / p) * std::pow(1.0 - 1.0 / p, 1.0 / pp);
  const auto h = hardy_constant(kZero, kZero, p, 0.0, 1.0, 2000);
  CHECK(h.value == doctest::Approx(want).epsilon(1e-5));
  CHECK(h.argmax == doctest::Approx(1.0 / p).epsilon(1e-2));
}

TEST_CASE("reflected Hardy form is the plain form under x -> -x") {
  const LogFn mu = [](double x) { return 0.7 * x; };
  const LogFn th = [](double x) { return -0.3 * x * x; };
  const LogFn mu_r = [&](double x) { return mu(-x); };
  const LogFn th_r = [&](double x) { return th(-x); };
  for (double p : {1.5, 2.0, 4.0}) {
    const double a = hardy_constant_tilde(mu, th, p, -1.0, 2.0, 1500).value;
    const double b = hardy_constant(mu_r, th_r, p, -2.0, 1.0, 1500).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-6));
  }
}

TEST_CASE("Hardy factor") {
  CHECK(hardy_factor(2.0) == doctest::Approx(2.0));
  CHECK(hardy_factor(3.0) == doctest::Approx(hardy_factor(1.5)));
  CHECK(hardy_factor(1.2) > 1.0);
}

TEST_CASE("Hardy constants of the Green halves for constant coefficients") {
  // v = e^{kx}/sqrt(2k), u = e^{-kx}/sqrt(2k) with k = sqrt(q): H_2 = 1/(4k^2) = 1/(4q).
  const auto f1 = fss_of(CoefficientSpec::constant(1, 1), 10);
  CHECK(hardy_upper(f1, 2.0, -kInf, kInf).value == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(hardy_lower(f1, 2.0, -kInf, kInf).value == doctest::Approx(0.25).epsilon(1e-6));
  const auto f4 = fss_of(CoefficientSpec::constant(1, 4), 10);
  CHECK(hardy_upper(f4, 2.0, -kInf, kInf).value == doctest::Approx(1.0 / 16).epsilon(1e-6));
  const auto th = theta_p_profile(f4, 2.0);
  for (double t : th.theta) CHECK(t == doctest::Approx(1.0 / 16).epsilon(1e-6));
}

TEST_CASE("operator norms of small matrices") {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(3, 3);
  D.diagonal() << 2.0, -1.0, 0.5;
  CHECK(operator_norm(D, 2.0).value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(operator_norm(D, 3.0).value == doctest::Approx(2.0).epsilon(1e-6));
  Eigen::MatrixXd J = Eigen::MatrixXd::Ones(4, 4);
  CHECK(operator_norm(J, 2.0).value == doctest::Approx(4.0).epsilon(1e-9));
  // all-ones n x n has l^p norm n for every p
  CHECK(operator_norm(J, 1.5).value == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("Galerkin cell matrix for one cell") {
  // (1/w) of the double integral of e^{-|x-t|}/2 over [-1,1]^2 is (L - 1 + e^{-L})/L with L = 2.
  const auto f = fss_of(CoefficientSpec::constant(1, 1), 5);
  const auto g = discretize_green(f, 1, 1.0);
  CHECK(g.G(0, 0) == doctest::Approx((1.0 + std::exp(-2.0)) / 2.0).epsilon(1e-8));
  CHECK(g.G1(0, 0) == doctest::Approx(g.G2(0, 0)));
}

TEST_CASE("discrete Green halves are transposes") {
  const auto f = fss_of(CoefficientSpec::exponential(-1, 1), 3);
  const auto g = discretize_green(f, 64);
  CHECK((g.G1 - g.G2.transpose()).cwiseAbs().maxCoeff() < 1e-12 * g.G.cwiseAbs().maxCoeff());
  CHECK((g.G - g.G.transpose()).cwiseAbs().maxCoeff() < 1e-12 * g.G.cwiseAbs().maxCoeff());
  CHECK(g.G.minCoeff() > 0.0);
}

TEST_CASE("split norms: triangle and sandwich for constant coefficients") {
  const auto f = fss_of(CoefficientSpec::constant(1, 1), 20);
  const auto s = split_operator_norms(f, 2.0, 256);
  CHECK(s.triangle_ok);
  CHECK(s.sandwich_upper_ok);
  CHECK(s.sandwich_lower_ok);
  CHECK(s.g1.value == doctest::Approx(s.g2.value).epsilon(1e-8));
  CHECK(s.g.value <= 1.0 + 1e-9);
}
