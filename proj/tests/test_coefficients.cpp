#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "srt/coefficients.hpp"
#include "srt/errors.hpp"

using namespace srt;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p.string();
}

}  // namespace

TEST_CASE("constant coefficients integrate exactly") {
  const auto f = build_weight_field(CoefficientSpec::constant(1, 1));
  CHECK(f.R(0, 2) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(f.Q(-1, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::isinf(f.R(0, INFINITY)));
  CHECK(f.r_is_one());
}

TEST_CASE("exponential closed form") {
  const auto f = build_weight_field(CoefficientSpec::exponential(-1, -1));
  CHECK(f.R(0, 1) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  CHECK(f.R(-1, 1) == doctest::Approx(2.0 * (std::exp(1.0) - 1.0)).epsilon(1e-14));
  CHECK(f.Q(0, INFINITY) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::isinf(f.R(0, INFINITY)));
  const auto g = build_weight_field(CoefficientSpec::exponential(1, 0));
  CHECK(g.R(-INFINITY, INFINITY) == doctest::Approx(2.0));
  CHECK_FALSE(g.r_is_one());
}

TEST_CASE("offset integrals keep precision for tiny lengths") {
  const auto f = build_weight_field(CoefficientSpec::exponential(0, 1));
  const double x = 30.0, eta = 1e-13;
  CHECK(f.Q_off(x, -eta, 0) == doctest::Approx(eta * std::exp(x - eta / 2)).epsilon(1e-12));
  const auto p = build_weight_field(CoefficientSpec::polynomial_q(1));
  CHECK(p.Q_off(50.0, 0, 1e-9) == doctest::Approx(1e-9 * 2501.0).epsilon(1e-9));
  CHECK(p.Q(0, 2) == doctest::Approx(2.0 + 8.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("tabulated trapezoid oracle") {
  const auto f = build_weight_field(CoefficientSpec::tabulated({0, 1, 2}, {1, 1, 1}, {0, 1, 2}));
  CHECK(f.Q(0, 2) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(f.Q(0.5, 1.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f.R(0, 2) == doctest::Approx(2.0).epsilon(1e-15));
  // linear r: int_0^1 dt/(1+t) = log 2
  const auto g = build_weight_field(CoefficientSpec::tabulated({0, 1, 2}, {1, 2, 2}, {1, 1, 1}));
  CHECK(g.R(0, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(g.R(0, 2) == doctest::Approx(std::log(2.0) + 0.5).epsilon(1e-14));
  // constant extension outside the table
  CHECK(g.R(2, 4) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g.R(-2, 0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("tabulated validation errors") {
  auto kind_of = [](const CoefficientSpec& s) {
    try {
      build_weight_field(s);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::io;
  };
  CHECK(kind_of(CoefficientSpec::tabulated({0, 2, 1}, {1, 1, 1}, {1, 1, 1})) == ErrorKind::malformed_table);
  CHECK(kind_of(CoefficientSpec::tabulated({0, 1}, {1, 1}, {1, 1})) == ErrorKind::malformed_table);
  CHECK(kind_of(CoefficientSpec::tabulated({0, 1, 2}, {1, 0, 1}, {1, 1, 1})) == ErrorKind::invalid_coefficient);
  CHECK(kind_of(CoefficientSpec::tabulated({0, 1, 2}, {1, 1, 1}, {1, -1, 1})) == ErrorKind::invalid_coefficient);
  CHECK(kind_of(CoefficientSpec::constant(-1, 1)) == ErrorKind::invalid_coefficient);
}

TEST_CASE("additivity and monotonicity for every preset") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (const auto& spec : {CoefficientSpec::constant(1, 1), CoefficientSpec::constant(4, 1),
                           CoefficientSpec::exponential(-1, 1), CoefficientSpec::exponential(1, -1),
                           CoefficientSpec::polynomial_q(1),
                           CoefficientSpec::tabulated({-3, 0, 1, 5}, {1, 2, 0.5, 1}, {0, 1, 3, 0})}) {
    const auto f = build_weight_field(spec);
    for (int i = 0; i < 200; ++i) {
      double v[3] = {u(rng), u(rng), u(rng)};
      std::sort(v, v + 3);
      const double Rac = f.R(v[0], v[2]);
      CHECK(std::abs(f.R(v[0], v[1]) + f.R(v[1], v[2]) - Rac) <= 1e-10 * (1 + std::abs(Rac)));
      const double Qac = f.Q(v[0], v[2]);
      CHECK(std::abs(f.Q(v[0], v[1]) + f.Q(v[1], v[2]) - Qac) <= 1e-10 * (1 + std::abs(Qac)));
      CHECK(f.R(v[0], v[1]) <= f.R(v[0], v[2]));
      CHECK(f.Q(v[0], v[1]) <= f.Q(v[0], v[2]) + 1e-12);
    }
  }
}

TEST_CASE("closed form matches adaptive quadrature") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (const auto& spec : {CoefficientSpec::exponential(-1, -1), CoefficientSpec::exponential(1, 1),
                           CoefficientSpec::exponential(-0.5, 2)}) {
    const auto f = build_weight_field(spec);
    for (int i = 0; i < 100; ++i) {
      double a = u(rng), b = u(rng);
      if (a > b) std::swap(a, b);
      CHECK(f.R_quad(a, b) == doctest::Approx(f.R(a, b)).epsilon(1e-8));
      CHECK(f.Q_quad(a, b) == doctest::Approx(f.Q(a, b)).epsilon(1e-8));
    }
  }
}

TEST_CASE("hypothesis probes") {
  const Window w(10, 101);
  const auto c = validate_hypotheses(build_weight_field(CoefficientSpec::constant(1, 1)), w);
  CHECK(c.q_tails_positive);
  CHECK(c.growth_trend == Trend::diverging);
  const auto e = validate_hypotheses(build_weight_field(CoefficientSpec::exponential(-1, -1)), w);
  CHECK(e.growth_trend == Trend::diverging);
  const auto z = validate_hypotheses(
      build_weight_field(CoefficientSpec::tabulated({-1, 0, 1}, {1, 1, 1}, {0, 0, 0})), w);
  CHECK_FALSE(z.q_tails_positive);
  CHECK(z.growth_trend != Trend::diverging);
}

TEST_CASE("spec files") {
  const auto s = parse_spec_text("# comment\nkind=exponential\nalpha=-1.0\nbeta = 1\n");
  CHECK(s.kind == CoefficientKind::exponential);
  CHECK(s.alpha == -1.0);
  CHECK(s.beta == 1.0);
  const auto table = write_temp("srt_tab_test.csv", "x,r,q\n0,1,0\n1,1,1\n2,1,2\n");
  const auto cfg = write_temp("srt_tab_test.cfg", "kind=tabulated\npath=srt_tab_test.csv\n");
  const auto t = load_spec_file(cfg);
  CHECK(t.kind == CoefficientKind::tabulated);
  CHECK(build_weight_field(t).Q(0, 2) == doctest::Approx(2.0));
  CHECK_THROWS_AS(load_spec_file("/nonexistent/missing.cfg"), Error);
  CHECK_THROWS_AS(parse_spec_text("kind=weird\n"), Error);
  CHECK_THROWS_AS(parse_spec_text("kind=exponential\nalpha=x\nbeta=1\n"), Error);
  CHECK_THROWS_AS(Window(0.0, 10), Error);
  CHECK_THROWS_AS(Window(1.0, 2), Error);
}
