#include "srt/pipeline.hpp"

#include <chrono>

#include "srt/errors.hpp"
#include "srt/log.hpp"

namespace srt {

SolverLimits limits_for(const Window& window, const AnalysisOptions& opt) {
  SolverLimits lim = SolverLimits::for_window(window);
  if (opt.max_radius) lim.max_radius = *opt.max_radius;
  return lim;
}

Analysis analyze(const CoefficientSpec& spec, const Window& window, const AnalysisOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  Analysis a;
  a.spec = spec;
  a.window = window;
  a.field = build_weight_field(spec);
  a.hypotheses = validate_hypotheses(a.field, window);
  if (!a.hypotheses.r_positive || !a.hypotheses.q_nonnegative) {
    fail(ErrorKind::invalid_coefficient, "coefficients violate r > 0, q >= 0 on the window");
  }
  if (!a.hypotheses.q_tails_positive) {
    log::warn("q has a vanishing tail; the equation is not correctly solvable");
  }
  const SolverLimits lim = limits_for(window, opt);
  a.aux = compute_aux_profile(a.field, window, lim, &a.h);

  std::vector<double> rho;
  if (opt.want_fss) {
    try {
      a.fss = compute_fss(a.field, window, opt.fss);
      rho = a.fss->rho;
      fill_s(a.aux, a.field, a.fss->rho_fn(), lim);
    } catch (const Error& e) {
      a.fss_error = e.what();
      a.fss.reset();
      log::info("fundamental system unavailable: ", e.what());
    }
  } else {
    a.fss_error = "fundamental system not requested";
  }
  a.criteria = evaluate_criteria(a.field, window, a.aux, rho,
                                 a.fss ? std::string() : "fundamental system unavailable: " + a.fss_error);
  a.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return a;
}

std::pair<Verdict, Verdict> exponential_expected(double alpha, double beta) {
  const int sa = alpha < 0 ? 0 : (alpha == 0 ? 1 : 2);
  const int sb = beta < 0 ? 0 : (beta == 0 ? 1 : 2);
  constexpr Verdict Y = Verdict::yes, N = Verdict::no;
  // rows: sign of alpha (-, 0, +); columns: sign of beta (-, 0, +)
  static const std::pair<Verdict, Verdict> table[3][3] = {
      {{N, N}, {Y, N}, {Y, Y}},
      {{N, N}, {Y, N}, {Y, Y}},
      {{Y, Y}, {Y, Y}, {Y, Y}},
  };
  return table[sa][sb];
}

std::vector<TableCell> exponential_table(const std::vector<double>& alphas, const std::vector<double>& betas,
                                         const Window& window, const AnalysisOptions& opt) {
  std::vector<TableCell> cells;
  for (double a : alphas) {
    for (double b : betas) {
      TableCell c;
      c.alpha = a;
      c.beta = b;
      std::tie(c.expected_solvable, c.expected_compact) = exponential_expected(a, b);
      const auto t0 = std::chrono::steady_clock::now();
      try {
        c.report = analyze(CoefficientSpec::exponential(a, b), window, opt).criteria;
      } catch (const Error& e) {
        c.error = e.what();
      }
      c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      cells.push_back(std::move(c));
    }
  }
  return cells;
}

}  // namespace srt
