#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace srt {

using ScalarFn = std::function<double(double)>;

// ---------------------------------------------------------------------------
// Quadrature

struct QuadratureTolerance {
  double abs = 1e-10;
  double rel = 1e-8;
  int max_depth = 48;
};

// Adaptive Simpson on [a, b] (finite). Interior `cuts` in (a, b) are used as
// forced subdivision points, which is how coefficient kinks are handled.
double adaptive_simpson(const ScalarFn& f, double a, double b,
                        QuadratureTolerance tol = {},
                        std::span<const double> cuts = {});

// Adaptive 8-point Gauss-Legendre with interval halving; same contract as
// adaptive_simpson but far fewer evaluations on smooth integrands.
double adaptive_gauss(const ScalarFn& f, double a, double b,
                      QuadratureTolerance tol = {},
                      std::span<const double> cuts = {});

// Fixed 8-point Gauss-Legendre rule on [a, b].
double gauss_legendre8(const ScalarFn& f, double a, double b);

// log of the sum exp(a) + exp(b), safe for -inf arguments.
double log_add(double a, double b);

// ---------------------------------------------------------------------------
// Root finding

struct MonotoneRootOptions {
  double initial = 1.0;      // first bracket [0, initial]
  double max_radius = 1e300; // doubling stops past this radius
  double rel_tol = 1e-13;    // relative bracket width at exit
  int max_iter = 4000;
};

// For F nondecreasing on [0, max_radius] with F(0) = 0 < target, returns
// inf{eta > 0 : F(eta) >= target}. Returns nullopt when F(max_radius) < target.
// The bracket is refined geometrically while it spans more than a factor 4,
// so roots far below `initial` keep full relative precision.
std::optional<double> solve_monotone(const ScalarFn& F, double target,
                                     const MonotoneRootOptions& opt);

// Root of an increasing continuous g on [lo, hi] with g(lo) <= 0 <= g(hi).
double bisect_increasing(const ScalarFn& g, double lo, double hi,
                         double abs_tol = 1e-13, int max_iter = 300);

// Maximizer of f on [a, b] by golden-section search (f unimodal near the max).
double golden_section_max(const ScalarFn& f, double a, double b, int iters = 80);

// ---------------------------------------------------------------------------
// Trend classification: what a finite window can say about behaviour at infinity.

enum class Trend { vanishing, bounded, diverging, inconclusive };

const char* to_string(Trend t);

// A quantity summarized on three bands of growing radius, innermost first.
using TrendLevels = std::array<double, 3>;

// vanishing: drops by >= 2 from band to band; diverging: grows by >= 2;
// bounded: all three levels within a factor 2 of each other; else inconclusive.
Trend classify_trend(const TrendLevels& levels);

// Band suprema of |g| over L/2 < |x| <= L for L in {X/4, X/2, X}.
TrendLevels edge_band_levels(std::span<const double> x, std::span<const double> g,
                             double half_width);

// Band infima over the same bands (used for Steklov-type averages).
TrendLevels edge_band_inf_levels(std::span<const double> x, std::span<const double> g,
                                 double half_width);

enum class TailTrend { integrable, divergent, inconclusive };

const char* to_string(TailTrend t);

// Classifies a tail integral from its increments over successive bands
// [L/2, L]: geometric decay by >= 2 -> integrable, no decay below 0.9 -> divergent.
TailTrend classify_tail(const TrendLevels& band_increments);

}  // namespace srt
