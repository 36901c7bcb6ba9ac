#pragma once

#include <optional>
#include <string>
#include <vector>

#include "srt/coefficients.hpp"
#include "srt/numerics.hpp"

namespace srt {

// Largest length any solver may return; the default multiple of X is 8.
struct SolverLimits {
  double max_radius = 80.0;
  QuadratureTolerance quad{1e-12, 1e-11, 40};

  static SolverLimits for_window(const Window& w) {
    SolverLimits l;
    l.max_radius = 8.0 * w.X;
    return l;
  }
};

double solve_d1(const WeightField& field, double x, const SolverLimits& lim);
double solve_d2(const WeightField& field, double x, const SolverLimits& lim);

struct PhiPsiH {
  double d1 = 0.0, d2 = 0.0;
  double phi = 0.0, psi = 0.0, h = 0.0;
  double identity_residual = 0.0;  // |h * Q(x-d1, x+d2) - 1|
};

PhiPsiH compute_phi_psi_h(const WeightField& field, double x, const SolverLimits& lim);

// h as a function of x: cubic Hermite table of log h with exact slopes, refined until the
// midpoint error in log h is below tol; evaluation outside the table falls back to direct solves.
class HFunction {
 public:
  HFunction(const WeightField& field, double lo, double hi, const SolverLimits& lim,
            double tol = 1e-10);
  double operator()(double x) const;
  double log_h(double x) const;
  double lo() const { return nodes_.front(); }
  double hi() const { return nodes_.back(); }
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Sample {
    double logh, slope;
  };
  Sample direct(double x) const;

  WeightField field_;
  SolverLimits lim_;
  std::vector<double> nodes_;
  std::vector<Sample> vals_;
};

// Root of int_{x-eta}^{x+eta} w = 1 (infimum of the roots for nondecreasing F).
double solve_unit_integral(const ScalarFn& w, const WeightField& field, double x, double guess,
                           const SolverLimits& lim, const char* what);

double solve_d(const WeightField& field, const ScalarFn& h, double x, const SolverLimits& lim,
               double guess = 1.0);
double solve_s(const WeightField& field, const ScalarFn& rho, double x, const SolverLimits& lim,
               double guess = 1.0);
double solve_mu(const WeightField& field, const ScalarFn& h, double x, const SolverLimits& lim,
                double guess = 1.0);
double solve_dtilde(const WeightField& field, double x, const SolverLimits& lim);

// r = 1 exactly for presets; |r - 1| <= 1e-12 at every table row or grid node otherwise.
bool r_identically_one(const WeightField& field, const Window& window);

// Left-hand sides of the defining equations, each nondecreasing in its length argument.
double equation_d1(const WeightField& f, double x, double d1);
double equation_d2(const WeightField& f, double x, double d2);
double equation_dtilde(const WeightField& f, double x, double dt);
double unit_integral(const ScalarFn& w, const WeightField& f, double x, double eta, const SolverLimits& lim);

// Residual |F(root) - 1| for each defining equation, used by the invariant suite.
double residual_d1(const WeightField& f, double x, double d1);
double residual_d2(const WeightField& f, double x, double d2);
double residual_unit_integral(const ScalarFn& w, const WeightField& f, double x, double eta,
                              const SolverLimits& lim);
double residual_dtilde(const WeightField& f, double x, double dt);

struct AuxProfile {
  std::vector<double> x, d1, d2, phi, psi, h, d, s, mu, dtilde;
  bool has_h = false;  // d1, d2, phi, psi, h available at every sample
  bool has_d = false;
  bool has_mu = false;
  bool has_s = false;
  bool has_dtilde = false;
  std::string h_error, d_error, mu_error, s_error, dtilde_error;
  double phi_psi_ratio = 0.0;  // max over samples of max(phi/psi, psi/phi)
  double h_identity_residual = 0.0;
  std::size_t h_table_nodes = 0;
};

// Fills everything except s. Failures leave the affected route marked unavailable with the reason.
AuxProfile compute_aux_profile(const WeightField& field, const Window& window,
                               const SolverLimits& lim, std::optional<HFunction>* h_out = nullptr);

// Fills s using the product rho = u v.
void fill_s(AuxProfile& aux, const WeightField& field, const ScalarFn& rho, const SolverLimits& lim);

enum class CoveringKind { d, s };
const char* to_string(CoveringKind k);

struct Segment {
  double lo = 0.0, hi = 0.0, center = 0.0, kappa = 0.0;
};

struct Covering {
  double origin = 0.0;
  CoveringKind kind = CoveringKind::d;
  std::vector<Segment> forward;   // forward[0].lo == origin
  std::vector<Segment> backward;  // backward[0].hi == origin
  double max_chain_gap() const;
  // max |lo - (center - kappa)| and |hi - (center + kappa)| over all segments
  double max_center_residual() const;
  bool covers(double lo, double hi) const;
};

Covering build_covering(const ScalarFn& kappa, double x, const Window& window, CoveringKind kind,
                        std::size_t max_segments = 200000);

struct SmoothAsymptotics {
  double dhat = 0.0, kappa1 = 0.0, kappa2 = 0.0;
};

SmoothAsymptotics smooth_asymptotics(const WeightField& field, double x);

}  // namespace srt
