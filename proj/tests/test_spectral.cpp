#include <cmath>

#include "doctest.h"
#include "srt/spectral.hpp"

using namespace srt;

namespace {

FssProfile fss_of(const CoefficientSpec& s, double X, int N = 401) {
  return compute_fss(build_weight_field(s), Window(X, N), FssOptions{});
}

}  // namespace

TEST_CASE("block eigen-iteration on a diagonal matrix") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(30, 30);
  for (int i = 0; i < 30; ++i) A(i, i) = 1.0 / (1 + i);
  const auto e = eigen_top(A, 5);
  REQUIRE(e.values.size() == 5);
  CHECK(e.converged);
  for (int i = 0; i < 5; ++i) CHECK(e.values[i] == doctest::Approx(1.0 / (1 + i)).epsilon(1e-8));
}

TEST_CASE("block eigen-iteration matches a dense solver") {
  Eigen::MatrixXd B = Eigen::MatrixXd::Random(40, 40);
  const Eigen::MatrixXd A = B * B.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  const auto e = eigen_top(A, 4);
  for (int i = 0; i < 4; ++i) CHECK(e.values[i] == doctest::Approx(es.eigenvalues()(39 - i)).epsilon(1e-7));
}

TEST_CASE("envelope check") {
  const auto in = check_eigen_vs_B(1.0, 0.5, true);
  CHECK(in.ratio == doctest::Approx(2.0));
  CHECK(in.within);
  CHECK(in.in_hypothesis);
  CHECK_FALSE(check_eigen_vs_B(100.0, 1.0, true).within);
  CHECK_FALSE(check_eigen_vs_B(1.0, 0.0, false).within);
}

TEST_CASE("constant coefficients: top of the spectrum near 1/q") {
  const auto f = fss_of(CoefficientSpec::constant(1, 1), 20);
  const auto s = spectrum(f, 512, 5, 0.125, false);
  CHECK(s.symmetric);
  CHECK(s.converged);
  CHECK(s.lambda_max > 0.95);
  CHECK(s.lambda_max <= 1.0 + 1e-9);
  // continuous spectrum: on a width-40 box lambda_k is about 1/(1 + (k pi/40)^2), so lambda_1/lambda_5 ~ 1.15
  CHECK(s.tail_ratio < 1.25);
}

TEST_CASE("decay quantities for constant coefficients") {
  // v/u = e^{2x}, int_x^inf u^2 = e^{-2x}/4.
  const auto f = fss_of(CoefficientSpec::constant(1, 1), 10);
  const auto d = decay_quantities(f);
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    CHECK(d.I[i] == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(d.J[i] == doctest::Approx(0.25).epsilon(1e-6));
  }
  CHECK(d.I_trend == Trend::bounded);
}

TEST_CASE("compact case: separated eigenvalues and no flux at the edges") {
  const auto f = fss_of(CoefficientSpec::exponential(-1, 1), 5);
  const auto s = spectrum(f, 256, 5);
  CHECK(s.tail_ratio >= 3.0);
  CHECK(edge_flux_ratio(f) < 1e-3);
}
