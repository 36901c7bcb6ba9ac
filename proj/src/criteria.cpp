#include "srt/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srt/log.hpp"

namespace srt {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Functional unavailable(std::string why) {
  Functional f;
  f.reason = std::move(why);
  return f;
}

Functional finish_sup(const std::vector<double>& x, std::vector<double> vals, double X) {
  Functional f;
  f.available = true;
  f.values = std::move(vals);
  f.extremum = 0.0;
  for (double v : f.values) f.extremum = std::max(f.extremum, v);
  f.levels = edge_band_levels(x, f.values, X);
  f.trend = classify_trend(f.levels);
  return f;
}

Functional finish_inf(const std::vector<double>& x, std::vector<double> vals, double X) {
  Functional f;
  f.available = true;
  f.values = std::move(vals);
  f.extremum = kInf;
  for (double v : f.values) f.extremum = std::min(f.extremum, v);
  f.levels = edge_band_inf_levels(x, f.values, X);
  f.trend = classify_trend(f.levels);
  return f;
}

// Strictly positive infimum over the line: window inf positive and edges not decaying to zero.
// Infimum-type functional bounded away from zero. Besides the bounded and diverging trends, band
// infima that never decrease outward count too (e.g. q rising then levelling off inside the window).
bool positive_inf(const Functional& f) {
  if (!f.available || !(f.extremum > 0.0)) return false;
  if (f.trend == Trend::bounded || f.trend == Trend::diverging) return true;
  const auto& v = f.levels;
  return f.trend == Trend::inconclusive && v[1] >= v[0] && v[2] >= v[1];
}

TrendLevels tail_increments(const WeightField& field, double X, bool right, bool use_r) {
  TrendLevels inc{};
  const std::array<double, 3> L = {X / 4.0, X / 2.0, X};
  for (int k = 0; k < 3; ++k) {
    const double a = right ? L[k] / 2.0 : -L[k];
    const double b = right ? L[k] : -L[k] / 2.0;
    inc[k] = use_r ? field.R(a, b) : field.Q(a, b);
  }
  return inc;
}

}  // namespace

Functional compute_B(const AuxProfile& aux, double X) {
  if (!aux.has_h) return unavailable("h unavailable: " + aux.h_error);
  if (!aux.has_d) return unavailable("d unavailable: " + aux.d_error);
  std::vector<double> v(aux.x.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = aux.h[i] * aux.d[i];
  return finish_sup(aux.x, std::move(v), X);
}

Functional compute_S(const AuxProfile& aux, const std::vector<double>& rho, double X) {
  if (rho.size() != aux.x.size()) return unavailable("fundamental system unavailable");
  if (!aux.has_s) return unavailable("s unavailable: " + aux.s_error);
  std::vector<double> v(aux.x.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = rho[i] * aux.s[i];
  return finish_sup(aux.x, std::move(v), X);
}

Functional compute_steklov(const AuxProfile& aux, const WeightField& field, double X) {
  if (!aux.has_d) return unavailable("d unavailable: " + aux.d_error);
  std::vector<double> v(aux.x.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = field.Q_off(aux.x[i], -aux.d[i], aux.d[i]) / (2.0 * aux.d[i]);
  }
  return finish_inf(aux.x, std::move(v), X);
}

Functional compute_A_tilde(const AuxProfile& aux, const WeightField& field, double X) {
  if (!aux.has_mu) return unavailable("mu unavailable: " + aux.mu_error);
  std::vector<double> v(aux.x.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = field.Q_off(aux.x[i], -aux.mu[i], aux.mu[i]) / (2.0 * aux.mu[i]);
  }
  return finish_inf(aux.x, std::move(v), X);
}

std::pair<Verdict, Verdict> verdict_from_trend(const Functional& f) {
  if (!f.available) return {Verdict::inconclusive, Verdict::inconclusive};
  switch (f.trend) {
    case Trend::diverging: return {Verdict::no, Verdict::no};
    case Trend::bounded: return {Verdict::yes, Verdict::no};
    case Trend::vanishing: return {Verdict::yes, Verdict::yes};
    case Trend::inconclusive: break;
  }
  return {Verdict::inconclusive, Verdict::inconclusive};
}

void compute_simple_sufficient(CriteriaReport& rep, const AuxProfile& aux, const WeightField& field,
                               const Window& window) {
  const double X = window.X;
  const auto& x = aux.x;
  const std::size_t n = x.size();

  std::vector<double> qv(n), rv(n);
  for (std::size_t i = 0; i < n; ++i) {
    qv[i] = field.q(x[i]);
    rv[i] = field.r(x[i]);
  }
  rep.q_growth = finish_inf(x, qv, X);
  rep.r_sup = finish_sup(x, rv, X);

  if (aux.has_h) {
    std::vector<double> b1(n), b2(n), b3(n);
    for (std::size_t i = 0; i < n; ++i) {
      b1[i] = rv[i] * aux.h[i] * aux.h[i];
      b2[i] = rv[i] * aux.phi[i] * aux.psi[i];
      b3[i] = aux.h[i] * std::abs(x[i]);
    }
    rep.B1 = finish_sup(x, std::move(b1), X);
    rep.B2 = finish_sup(x, std::move(b2), X);
    rep.B3 = finish_sup(x, std::move(b3), X);
    rep.h_sup = finish_sup(x, aux.h, X);
  } else {
    const std::string why = "h unavailable: " + aux.h_error;
    rep.B1 = rep.B2 = rep.B3 = rep.h_sup = unavailable(why);
  }

  rep.R_left_tail = classify_tail(tail_increments(field, X, false, true));
  rep.R_right_tail = classify_tail(tail_increments(field, X, true, true));
  rep.Q_left_tail = classify_tail(tail_increments(field, X, false, false));
  rep.Q_right_tail = classify_tail(tail_increments(field, X, true, false));
  rep.q_tails_positive = field.Q(-kInf, -X) > 0.0 && field.Q(X, kInf) > 0.0;

  const bool r_integrable = rep.R_left_tail == TailTrend::integrable &&
                            rep.R_right_tail == TailTrend::integrable;
  const double R_total = field.R(-kInf, kInf);
  if (!r_integrable || !std::isfinite(R_total)) {
    rep.theta = rep.nu = unavailable("1/r not integrable");
  } else if (!rep.q_tails_positive) {
    rep.theta = rep.nu = unavailable("q vanishes near infinity");
  } else {
    std::vector<double> th(n), nu(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double left = field.R(-kInf, x[i]);
      const double right = field.R(x[i], kInf);
      th[i] = std::abs(x[i]) * left * right;
      nu[i] = rv[i] * left * left * right * right;
    }
    rep.theta = finish_sup(x, std::move(th), X);
    rep.nu = finish_sup(x, std::move(nu), X);
  }

  rep.r_is_one = field.r_is_one();
  if (!rep.r_is_one) {
    for (auto& m : rep.molchanov) m = unavailable("r is not identically 1");
    rep.dtilde_mass = unavailable("r is not identically 1");
    return;
  }
  for (std::size_t k = 0; k < rep.molchanov.size(); ++k) {
    const double a = rep.molchanov_a[k];
    std::vector<double> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = field.Q_off(x[i], -a, a);
    rep.molchanov[k] = finish_inf(x, std::move(m), X);
  }
  if (aux.has_dtilde) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = 1.0 / (aux.dtilde[i] * aux.dtilde[i]);
    rep.dtilde_mass = finish_inf(x, std::move(w), X);
  } else {
    rep.dtilde_mass = unavailable("dtilde unavailable: " + aux.dtilde_error);
  }
}

void render_verdict(CriteriaReport& rep) {
  rep.fired.clear();
  std::vector<std::string> solv_no, solv_yes, comp_yes, comp_no;

  std::tie(rep.b_solvable, rep.b_compact) = verdict_from_trend(rep.B);
  std::tie(rep.s_solvable, rep.s_compact) = verdict_from_trend(rep.S);
  rep.b_over_s.reset();
  if (rep.B.available && rep.S.available && rep.S.extremum > 0.0) {
    rep.b_over_s = rep.B.extremum / rep.S.extremum;
  }

  // two-sided criteria
  const auto two_sided = [&](const Functional& f, const char* name) {
    if (!f.available) return;
    const std::string n = name;
    switch (f.trend) {
      case Trend::diverging: solv_no.push_back(n + " diverges"); break;
      case Trend::bounded:
        solv_yes.push_back(n + " bounded");
        comp_no.push_back(n + " bounded away from zero");
        break;
      case Trend::vanishing:
        solv_yes.push_back(n + " bounded");
        comp_yes.push_back(n + " -> 0");
        break;
      case Trend::inconclusive: break;
    }
  };
  two_sided(rep.B, "h*d");
  two_sided(rep.S, "rho*s");

  const bool all_m = rep.r_is_one && std::all_of(rep.molchanov.begin(), rep.molchanov.end(),
                                                  [](const Functional& f) { return f.available; });
  if (all_m) {
    const auto vanish = [](const Functional& f) { return f.trend == Trend::vanishing; };
    const auto diverge = [](const Functional& f) { return f.trend == Trend::diverging; };
    if (std::all_of(rep.molchanov.begin(), rep.molchanov.end(), vanish)) {
      solv_no.push_back("r = 1 and m(a) = 0 for every a");
    }
    if (std::any_of(rep.molchanov.begin(), rep.molchanov.end(), positive_inf)) {
      solv_yes.push_back("r = 1 and m(a) > 0");
      // with m(a) > 0 compactness is equivalent to the local integrals of q tending to infinity
      if (std::all_of(rep.molchanov.begin(), rep.molchanov.end(), diverge)) {
        comp_yes.push_back("r = 1, local integrals of q -> infinity");
      } else if (std::any_of(rep.molchanov.begin(), rep.molchanov.end(),
                             [](const Functional& f) { return f.trend == Trend::bounded; })) {
        comp_no.push_back("r = 1, local integrals of q stay bounded");
      }
    }
  }

  // one-sided sufficient conditions
  if (positive_inf(rep.A)) solv_yes.push_back("Steklov average bounded below");
  if (rep.A.available && rep.A.trend == Trend::diverging && rep.A.extremum > 0.0) {
    comp_yes.push_back("Steklov average -> infinity");
  }
  const bool at_usable = rep.A_tilde.available && !rep.A_tilde_conditional;
  if (at_usable && positive_inf(rep.A_tilde)) solv_yes.push_back("mu-average bounded below");
  if (at_usable && rep.A_tilde.trend == Trend::diverging && rep.A_tilde.extremum > 0.0) {
    comp_yes.push_back("mu-average -> infinity");
  }
  const auto finite_sup = [&](const Functional& f, const char* name) {
    if (!f.finite_at_infinity()) return;
    solv_yes.push_back(std::string(name) + " finite");
    if (f.trend == Trend::vanishing) comp_yes.push_back(std::string(name) + " -> 0");
  };
  finite_sup(rep.B1, "r*h^2");
  finite_sup(rep.B2, "r*phi*psi");
  finite_sup(rep.B3, "h*|x|");
  finite_sup(rep.theta, "theta");
  finite_sup(rep.nu, "nu");
  if (rep.r_sup.finite_at_infinity() && rep.h_sup.finite_at_infinity()) {
    solv_yes.push_back("r and h bounded");
    if (rep.h_sup.trend == Trend::vanishing) comp_yes.push_back("r bounded and h -> 0");
  }
  if (rep.q_growth.available && rep.q_growth.trend == Trend::diverging) {
    solv_yes.push_back("q -> infinity");
    comp_yes.push_back("q -> infinity");
  }

  for (const auto* list : {&solv_no, &solv_yes, &comp_yes, &comp_no}) {
    rep.fired.insert(rep.fired.end(), list->begin(), list->end());
  }

  if (!solv_no.empty()) {
    rep.solvable = Verdict::no;
    rep.solvable_rule = solv_no.front();
    rep.compact = Verdict::no;
    rep.compact_rule = "not solvable";
    return;
  }
  if (!solv_yes.empty()) {
    rep.solvable = Verdict::yes;
    rep.solvable_rule = solv_yes.front();
  } else {
    rep.solvable = Verdict::inconclusive;
    rep.solvable_rule = "no criterion decided";
  }
  if (!comp_yes.empty() && !comp_no.empty()) {
    rep.compact = Verdict::inconclusive;
    rep.compact_rule = "conflict: " + comp_yes.front() + " vs " + comp_no.front();
    log::warn("compactness rules disagree: " + rep.compact_rule);
  } else if (!comp_yes.empty()) {
    rep.compact = Verdict::yes;
    rep.compact_rule = comp_yes.front();
    rep.solvable = Verdict::yes;  // compact implies bounded
    if (solv_yes.empty()) rep.solvable_rule = comp_yes.front();
  } else if (!comp_no.empty() && rep.solvable == Verdict::yes) {
    rep.compact = Verdict::no;
    rep.compact_rule = comp_no.front();
  } else {
    rep.compact = Verdict::inconclusive;
    rep.compact_rule = "no criterion decided";
  }
}

CriteriaReport evaluate_criteria(const WeightField& field, const Window& window, const AuxProfile& aux,
                                 const std::vector<double>& rho, const std::string& s_reason) {
  CriteriaReport rep;
  rep.label = field.spec().label();
  rep.X = window.X;
  rep.N = window.N;
  rep.B = compute_B(aux, window.X);
  rep.S = compute_S(aux, rho, window.X);
  if (!rep.S.available && !s_reason.empty()) rep.S.reason = s_reason;
  rep.A = compute_steklov(aux, field, window.X);
  rep.A_tilde = compute_A_tilde(aux, field, window.X);
  rep.phi_psi_ratio = aux.phi_psi_ratio;
  rep.A_tilde_conditional = !aux.has_h || !(aux.phi_psi_ratio <= 10.0);
  compute_simple_sufficient(rep, aux, field, window);
  if (rep.B.available && rep.A.available) {
    for (std::size_t i = 0; i < aux.x.size(); ++i) {
      rep.hd_steklov_max = std::max(rep.hd_steklov_max, rep.B.values[i] * rep.A.values[i]);
    }
  }
  render_verdict(rep);
  return rep;
}

}  // namespace srt
