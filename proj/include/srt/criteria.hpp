#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "srt/coefficients.hpp"
#include "srt/local_geometry.hpp"
#include "srt/numerics.hpp"

namespace srt {

enum class Verdict { yes, no, inconclusive };
const char* to_string(Verdict v);

// A functional sampled on the grid with its window extremum and edge trend.
struct Functional {
  bool available = false;
  std::string reason;        // why it is unavailable
  std::vector<double> values;
  double extremum = 0.0;     // sup, or inf for infimum-type functionals
  TrendLevels levels{};
  Trend trend = Trend::inconclusive;

  bool finite_at_infinity() const { return available && (trend == Trend::bounded || trend == Trend::vanishing); }
};

struct CriteriaReport {
  std::string label;
  double X = 0.0;
  int N = 0;

  Functional B;        // h d, sup
  Functional S;        // rho s, sup
  Functional A;        // Steklov average over d, inf
  Functional A_tilde;  // average over mu, inf
  bool A_tilde_conditional = true;
  double phi_psi_ratio = 0.0;
  Functional B1, B2, B3;  // r h^2, r phi psi, h |x|
  Functional theta, nu;
  Functional q_growth;    // q itself, band infima
  Functional h_sup, r_sup;  // for the r bounded / h bounded route
  std::array<double, 3> molchanov_a{0.25, 1.0, 4.0};
  std::array<Functional, 3> molchanov;  // int_{x-a}^{x+a} q, inf
  Functional dtilde_mass;               // 1/dtilde^2, inf
  bool r_is_one = false;

  TailTrend R_left_tail = TailTrend::inconclusive, R_right_tail = TailTrend::inconclusive;
  TailTrend Q_left_tail = TailTrend::inconclusive, Q_right_tail = TailTrend::inconclusive;
  bool q_tails_positive = false;

  double hd_steklov_max = 0.0;  // max of h d A over samples

  Verdict solvable = Verdict::inconclusive, compact = Verdict::inconclusive;
  std::string solvable_rule, compact_rule;
  std::vector<std::string> fired;  // every rule that fired, in evaluation order

  Verdict b_solvable = Verdict::inconclusive, b_compact = Verdict::inconclusive;
  Verdict s_solvable = Verdict::inconclusive, s_compact = Verdict::inconclusive;
  std::optional<double> b_over_s;
};

Functional compute_B(const AuxProfile& aux, double X);
Functional compute_S(const AuxProfile& aux, const std::vector<double>& rho, double X);
Functional compute_steklov(const AuxProfile& aux, const WeightField& field, double X);
Functional compute_A_tilde(const AuxProfile& aux, const WeightField& field, double X);

// Fills B1-B3, theta, nu, Molchanov integrals, q growth and tail probes.
void compute_simple_sufficient(CriteriaReport& rep, const AuxProfile& aux, const WeightField& field,
                               const Window& window);

// Combines everything into the solvable / compact verdicts.
void render_verdict(CriteriaReport& rep);

// B/S pair verdicts from one trend: diverging -> (no, no); bounded -> (yes, no); vanishing -> (yes, yes).
std::pair<Verdict, Verdict> verdict_from_trend(const Functional& f);

// Full criteria evaluation; rho may be empty when the fundamental system is unavailable.
CriteriaReport evaluate_criteria(const WeightField& field, const Window& window, const AuxProfile& aux,
                                 const std::vector<double>& rho, const std::string& s_reason = {});

}  // namespace srt
