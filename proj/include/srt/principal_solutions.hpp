#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "srt/coefficients.hpp"
#include "srt/numerics.hpp"

namespace srt {

struct FssOptions {
  double extension = 2.0;       // integrate from -extension*X and +extension*X
  double trust = 1.5;           // values on |x| <= trust*X are used for tails and integrals
  double rtol = 1e-11;
  std::size_t max_steps = 2000000;
  double wronskian_tol = 1e-6;
};

// One Riccati sweep m' = q - m^2/r, L' = m/r stored at accepted steps (variable increasing).
struct RiccatiTrack {
  std::vector<double> xi, L, m;
  std::vector<double> r, q;  // coefficients at the nodes, for the Hermite slopes
  std::size_t steps = 0, rejected = 0;
};

// Fundamental system {u, v} in log form. v is recessive at -inf, u at +inf, both scaled by a
// common pair of mutually inverse factors so that r(v'u - u'v) = 1 and log(v/u) is antisymmetric
// over the window edges.
class FssProfile {
 public:
  Window window;
  WeightField field;
  FssOptions options;
  double x0 = 0.0;

  // window grid data
  std::vector<double> grid, log_v, log_u, rho, rv_prime, ru_prime;
  double max_wronskian_residual = 0.0;

  // dense evaluation on |x| <= extension * X
  double lv(double x) const;
  double lu(double x) const;
  double mv(double x) const;  // r v'/v >= 0
  double mu(double x) const;  // r u'/u <= 0
  double log_rho(double x) const { return lv(x) + lu(x); }
  double rho_at(double x) const;
  double wronskian(double x) const;

  double extended() const { return options.extension * window.X; }
  double trusted() const { return options.trust * window.X; }
  // Node set of both sweeps restricted to |x| <= trusted(), merged with the window grid.
  std::vector<double> quadrature_nodes() const;

  ScalarFn rho_fn() const;

  RiccatiTrack v_track, u_track;  // u_track is stored in the reflected variable xi = -x

 private:
  friend FssProfile compute_fss(const WeightField&, const Window&, const FssOptions&);
  double v_shift = 0.0, u_shift = 0.0;
};

FssProfile compute_fss(const WeightField& field, const Window& window, const FssOptions& opt = {});

// Estimated number of explicit steps forced by stiffness, 2*sqrt(q/r)/3.3 integrated.
double stiffness_steps(const WeightField& field, double a, double b);

double find_x0(const FssProfile& fss);

// G(x,t) = u(max) v(min); log form avoids overflow.
double green_log(const FssProfile& fss, double x, double t);
double green_eval(const FssProfile& fss, double x, double t);

// log of int e^{l} from -inf (or lo) up to x and from x to +inf (or hi), using Gauss panels
// between the given nodes and exponential tails beyond them.
class LogCumulative {
 public:
  LogCumulative(std::vector<double> nodes, std::function<double(double)> logf,
                std::function<double(double)> logf_slope, bool tails);
  double left(double x) const;   // log int_{lo or -inf}^x
  double right(double x) const;  // log int_x^{hi or +inf}
  bool left_tail_finite() const { return left_tail_finite_; }
  bool right_tail_finite() const { return right_tail_finite_; }

 private:
  double panel(double a, double b) const;
  std::vector<double> nodes_, cum_left_, cum_right_;
  std::function<double(double)> f_;
  bool left_tail_finite_ = true, right_tail_finite_ = true;
};

struct DaviesHarrellReport {
  double max_rel_residual = 0.0;
  int probes = 0;
  TrendLevels right_integral{}, left_integral{};  // int_0^L and int_{-L}^0 of 1/(r rho)
  Trend right_trend = Trend::inconclusive, left_trend = Trend::inconclusive;
};

DaviesHarrellReport check_davies_harrell(const FssProfile& fss, std::uint64_t seed, int probes = 100);

struct LogDerivativeReport {
  double max_v_residual = 0.0, max_u_residual = 0.0;
  int nodes = 0;
};

// Central differences of log v, log u and rho at interior grid nodes, residuals scaled by 2 r rho.
LogDerivativeReport check_log_derivative_identities(const FssProfile& fss);

// max over interior grid nodes of r |rho'| by central differences.
double max_r_rho_prime(const FssProfile& fss);

struct PrincipalTailReport {
  // int 1/(r u^2) and 1/(r v^2) over [-L, 0] and [0, L], L in {X/4, X/2, X}
  TrendLevels u_left{}, v_right{}, v_left{}, u_right{};
  TailTrend u_left_trend = TailTrend::inconclusive, v_right_trend = TailTrend::inconclusive;
  TailTrend v_left_trend = TailTrend::inconclusive, u_right_trend = TailTrend::inconclusive;
  double v_over_u_left = 0.0, u_over_v_right = 0.0;  // v/u at -X and u/v at +X
};

PrincipalTailReport principal_tails(const FssProfile& fss);

}  // namespace srt
