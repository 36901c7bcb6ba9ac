#include <cmath>

#include "doctest.h"
#include "srt/criteria.hpp"
#include "srt/pipeline.hpp"

using namespace srt;

namespace {

Functional trend_only(Trend t, double ext = 1.0) {
  Functional f;
  f.available = true;
  f.trend = t;
  f.extremum = ext;
  return f;
}

bool fired(const CriteriaReport& r, const std::string& needle) {
  for (const auto& s : r.fired) {
    if (s.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("constant coefficients: closed-form functionals") {
  // r = q = 1: h = 1/2, d = 1/4, rho = 1/2, s = 1/4, Steklov average 1.
  const Analysis a = analyze(CoefficientSpec::constant(1, 1), Window(20, 401));
  const auto& c = a.criteria;
  REQUIRE(c.B.available);
  REQUIRE(c.S.available);
  CHECK(c.B.extremum == doctest::Approx(0.125).epsilon(1e-8));
  CHECK(c.S.extremum == doctest::Approx(0.125).epsilon(1e-8));
  CHECK(c.A.extremum == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(c.B1.extremum == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(c.B2.extremum == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(c.molchanov[1].extremum == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(c.B.trend == Trend::bounded);
  CHECK(c.solvable == Verdict::yes);
  CHECK(c.compact == Verdict::no);
  REQUIRE(c.b_over_s);
  CHECK(*c.b_over_s == doctest::Approx(1.0).epsilon(1e-6));

  // q = 4: rho = 1/4 and s = 1/8.
  const Analysis b = analyze(CoefficientSpec::constant(1, 4), Window(10, 201));
  CHECK(b.criteria.S.extremum == doctest::Approx(1.0 / 32).epsilon(1e-8));
  CHECK(b.criteria.compact == Verdict::no);
}

TEST_CASE("polynomial q gives a compact resolvent") {
  const Analysis a = analyze(CoefficientSpec::polynomial_q(1), Window(20, 401));
  CHECK(a.criteria.B.trend == Trend::vanishing);
  CHECK(a.criteria.solvable == Verdict::yes);
  CHECK(a.criteria.compact == Verdict::yes);
}

TEST_CASE("trend to verdict map") {
  using P = std::pair<Verdict, Verdict>;
  CHECK(verdict_from_trend(trend_only(Trend::diverging)) == P{Verdict::no, Verdict::no});
  CHECK(verdict_from_trend(trend_only(Trend::bounded)) == P{Verdict::yes, Verdict::no});
  CHECK(verdict_from_trend(trend_only(Trend::vanishing)) == P{Verdict::yes, Verdict::yes});
  CHECK(verdict_from_trend(trend_only(Trend::inconclusive)) == P{Verdict::inconclusive, Verdict::inconclusive});
  CHECK(verdict_from_trend(Functional{}) == P{Verdict::inconclusive, Verdict::inconclusive});
}

TEST_CASE("render_verdict: empty report stays inconclusive") {
  CriteriaReport r;
  render_verdict(r);
  CHECK(r.solvable == Verdict::inconclusive);
  CHECK(r.compact == Verdict::inconclusive);
}

TEST_CASE("render_verdict: necessary condition overrides sufficient ones") {
  CriteriaReport r;
  r.B = trend_only(Trend::diverging);
  r.q_growth = trend_only(Trend::diverging);
  render_verdict(r);
  CHECK(r.solvable == Verdict::no);
  CHECK(r.compact == Verdict::no);
}

TEST_CASE("render_verdict: conflicting compactness rules") {
  CriteriaReport r;
  r.B = trend_only(Trend::vanishing);
  r.S = trend_only(Trend::bounded);
  render_verdict(r);
  CHECK(r.solvable == Verdict::yes);
  CHECK(r.compact == Verdict::inconclusive);
  CHECK(r.compact_rule.find("conflict") != std::string::npos);
}

TEST_CASE("render_verdict: A_tilde only counts when phi and psi are comparable") {
  CriteriaReport r;
  r.A_tilde = trend_only(Trend::diverging);
  r.A_tilde_conditional = true;  // phi/psi too far apart
  render_verdict(r);
  CHECK(r.compact == Verdict::inconclusive);
  r.A_tilde_conditional = false;
  render_verdict(r);
  CHECK(r.solvable == Verdict::yes);
  CHECK(r.compact == Verdict::yes);
}

TEST_CASE("render_verdict: Molchanov rules need r = 1") {
  CriteriaReport r;
  for (auto& m : r.molchanov) m = trend_only(Trend::vanishing, 0.0);
  render_verdict(r);
  CHECK(r.solvable == Verdict::inconclusive);
  r.r_is_one = true;
  render_verdict(r);
  CHECK(r.solvable == Verdict::no);
  CHECK(fired(r, "m(a)"));
}

TEST_CASE("expected verdicts for the exponential family") {
  using P = std::pair<Verdict, Verdict>;
  CHECK(exponential_expected(-1, -1) == P{Verdict::no, Verdict::no});
  CHECK(exponential_expected(-1, 0) == P{Verdict::yes, Verdict::no});
  CHECK(exponential_expected(0, 1) == P{Verdict::yes, Verdict::yes});
  CHECK(exponential_expected(1, -1) == P{Verdict::yes, Verdict::yes});
  CHECK(exponential_expected(0.3, 0) == P{Verdict::yes, Verdict::yes});
}
