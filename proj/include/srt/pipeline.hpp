#pragma once

#include <optional>
#include <string>
#include <vector>

#include "srt/coefficients.hpp"
#include "srt/criteria.hpp"
#include "srt/local_geometry.hpp"
#include "srt/principal_solutions.hpp"

namespace srt {

struct AnalysisOptions {
  std::optional<double> max_radius;  // defaults to 8X
  FssOptions fss;
  bool want_fss = true;
};

struct Analysis {
  CoefficientSpec spec;
  Window window;
  WeightField field;
  HypothesisReport hypotheses;
  AuxProfile aux;
  std::optional<HFunction> h;  // interpolated h on the padded window, when available
  std::optional<FssProfile> fss;
  std::string fss_error;
  CriteriaReport criteria;
  double seconds = 0.0;
};

SolverLimits limits_for(const Window& window, const AnalysisOptions& opt);

Analysis analyze(const CoefficientSpec& spec, const Window& window, const AnalysisOptions& opt = {});

struct TableCell {
  double alpha = 0.0, beta = 0.0;
  Verdict expected_solvable = Verdict::inconclusive, expected_compact = Verdict::inconclusive;
  CriteriaReport report;
  std::string error;  // set when the cell could not be evaluated at all
  double seconds = 0.0;
  bool matches() const {
    return error.empty() && report.solvable == expected_solvable && report.compact == expected_compact;
  }
};

// Known verdicts for r = e^{alpha|x|}, q = e^{beta|x|} by sign class of (alpha, beta).
std::pair<Verdict, Verdict> exponential_expected(double alpha, double beta);

std::vector<TableCell> exponential_table(const std::vector<double>& alphas, const std::vector<double>& betas,
                                         const Window& window, const AnalysisOptions& opt = {});

}  // namespace srt
