#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "srt/principal_solutions.hpp"

namespace srt {

using LogFn = std::function<double(double)>;

struct HardyResult {
  double value = 0.0;
  double argmax = 0.0;
  bool truncated = false;  // an infinite end had a divergent tail; sup over the finite part
};

// sup_x [int_a^x mu^p]^{1/p} [int_x^b theta^{p'}]^{1/p'} on a finite interval, from log mu and log theta.
HardyResult hardy_constant(const LogFn& log_mu, const LogFn& log_theta, double p, double a, double b,
                           int samples = 400);
// The reflected form [int_a^x theta^{p'}]^{1/p'} [int_x^b mu^p]^{1/p}.
HardyResult hardy_constant_tilde(const LogFn& log_mu, const LogFn& log_theta, double p, double a, double b,
                                 int samples = 400);

// Hardy constants of the two halves of the Green operator on (a, b); a, b may be infinite.
// upper half: mu = v, theta = u (plain form); lower half: mu = u, theta = v (reflected form).
HardyResult hardy_upper(const FssProfile& fss, double p, double a, double b);
HardyResult hardy_lower(const FssProfile& fss, double p, double a, double b);

double hardy_factor(double p);  // p^{1/p} p'^{1/p'}

struct ThetaProfile {
  double p = 2.0;
  std::vector<double> x, theta;
  double ratio_min = 0.0, ratio_max = 0.0;  // theta / (h d), when h d is supplied
  std::array<double, 2> N{};                // X/4, X/2
  std::array<double, 2> sup_plus{}, sup_minus{};
  TrendLevels levels{};
  Trend trend = Trend::inconclusive;
};

// theta_p(x) = [int_{-inf}^x v^p]^{1/p} [int_x^inf u^{p'}]^{1/p'} at the window grid, with the one-sided
// truncated variants on x >= N and x <= -N. hd may be empty.
ThetaProfile theta_p_profile(const FssProfile& fss, double p, const std::vector<double>& hd = {});

// Piecewise-constant Galerkin discretization of G = G1 + G2 on (-half, half) with n equal cells:
// entry (i, j) is the kernel integrated over cell i x cell j divided by the cell width. The matrix is
// the compression of G to step functions, so refining nested grids can only raise its norm.
// Each half carries half of the diagonal cell, which is exact for the two triangular pieces.
struct DiscreteGreen {
  int n = 0;
  double half = 0.0, w = 0.0;
  std::vector<double> t;
  Eigen::MatrixXd G1, G2, G;
};

DiscreteGreen discretize_green(const FssProfile& fss, int n, double half = 0.0);

struct NormEstimate {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// p = 2: power iteration on M^T M; otherwise 50 steps of the nonlinear power method (a lower estimate).
NormEstimate operator_norm(const Eigen::MatrixXd& M, double p, int max_iter = 5000, double tol = 1e-10);

struct SplitNorms {
  double p = 2.0;
  NormEstimate g1, g2, g;
  double H_upper = 0.0, H_lower = 0.0, factor = 0.0;
  double slack = 0.05;
  bool triangle_ok = false;
  bool sandwich_upper_ok = false, sandwich_lower_ok = false;
};

SplitNorms split_operator_norms(const FssProfile& fss, double p, int n, double half = 0.0);
SplitNorms split_operator_norms(const FssProfile& fss, const DiscreteGreen& dg, double p);

}  // namespace srt
