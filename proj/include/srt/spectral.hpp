#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "srt/hardy.hpp"
#include "srt/principal_solutions.hpp"

namespace srt {

struct EigenTop {
  std::vector<double> values;  // descending
  int iterations = 0;
  bool converged = false;
};

// Top k eigenvalues of a symmetric matrix by block power iteration with Rayleigh-Ritz
// projection onto the block.
EigenTop eigen_top(const Eigen::MatrixXd& A, int k = 10, double tol = 1e-8, int max_iter = 3000,
                   std::uint64_t seed = 12345);

struct EnvelopeCheck {
  double ratio = 0.0;     // lambda / B
  double bound = 64.0;
  bool in_hypothesis = false;  // h d -> 0 on this preset
  bool within = false;
};

EnvelopeCheck check_eigen_vs_B(double lambda_max, double B, bool hd_vanishing);

struct DecayReport {
  std::vector<double> x, I, J;  // I = (v/u) int_x^inf u^2, J = (u/v) int_{-inf}^x v^2
  TrendLevels I_levels{}, J_levels{};
  Trend I_trend = Trend::inconclusive, J_trend = Trend::inconclusive;
};

DecayReport decay_quantities(const FssProfile& fss);

// y = G f for f the indicator of [-1, 1]; returns max |r y' y| at the two window edges divided by its
// maximum over |x| <= X/2.
double edge_flux_ratio(const FssProfile& fss);

struct SpectralReport {
  int n = 0;
  double half = 0.0;
  double lambda_max = 0.0;
  std::vector<double> top;
  bool converged = false;
  bool symmetric = false;
  double tail_ratio = 0.0;  // lambda_1 / lambda_5
  EnvelopeCheck envelope;
};

SpectralReport spectrum(const FssProfile& fss, int n, int k = 10, double B = 0.0, bool hd_vanishing = false,
                        double half = 0.0);

}  // namespace srt
