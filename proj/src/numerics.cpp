#include "srt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace srt {

namespace {

double simpson_step(const ScalarFn& f, double a, double fa, double b, double fb,
                    double m, double fm, double whole, double eps, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps || m <= a || b <= m) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * eps, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * eps, depth - 1);
}

double simpson_piece(const ScalarFn& f, double a, double b, const QuadratureTolerance& tol) {
  if (!(b > a)) return 0.0;
  // Coarse five-point pass fixes the error budget from the integral's magnitude.
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double coarse = std::abs(gauss_legendre8(f, a, b));
  const double eps = std::max(tol.abs, tol.rel * coarse);
  return simpson_step(f, a, fa, b, fb, m, fm, whole, eps, tol.max_depth);
}

}  // namespace

double adaptive_simpson(const ScalarFn& f, double a, double b, QuadratureTolerance tol,
                        std::span<const double> cuts) {
  if (a == b) return 0.0;
  if (a > b) return -adaptive_simpson(f, b, a, tol, cuts);
  std::vector<double> pts{a};
  for (double c : cuts) {
    if (c > a && c < b) pts.push_back(c);
  }
  std::sort(pts.begin() + 1, pts.end());
  pts.push_back(b);
  double total = 0.0;
  // Depth per piece is the same; absolute tolerance is split evenly.
  QuadratureTolerance piece = tol;
  piece.abs = tol.abs / static_cast<double>(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += simpson_piece(f, pts[i], pts[i + 1], piece);
  return total;
}

namespace {

double gauss_step(const ScalarFn& f, double a, double b, double whole, double eps, int depth,
                  long& budget) {
  const double m = 0.5 * (a + b);
  const double left = gauss_legendre8(f, a, m);
  const double right = gauss_legendre8(f, m, b);
  budget -= 2;
  if (depth <= 0 || budget <= 0 || std::abs(left + right - whole) <= eps || m <= a || b <= m) {
    return left + right;
  }
  return gauss_step(f, a, m, left, 0.5 * eps, depth - 1, budget) +
         gauss_step(f, m, b, right, 0.5 * eps, depth - 1, budget);
}

}  // namespace

double adaptive_gauss(const ScalarFn& f, double a, double b, QuadratureTolerance tol,
                      std::span<const double> cuts) {
  if (a == b) return 0.0;
  if (a > b) return -adaptive_gauss(f, b, a, tol, cuts);
  std::vector<double> pts{a};
  for (double c : cuts) {
    if (c > a && c < b) pts.push_back(c);
  }
  std::sort(pts.begin() + 1, pts.end());
  pts.push_back(b);
  std::vector<double> coarse(pts.size() - 1);
  double scale = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    coarse[i] = gauss_legendre8(f, pts[i], pts[i + 1]);
    scale += std::abs(coarse[i]);
  }
  const double eps = std::max(tol.abs, tol.rel * scale) / static_cast<double>(coarse.size());
  double total = 0.0;
  // Panel budget: a non-smooth integrand must not trigger exponential refinement.
  long budget = 20000 + 64 * static_cast<long>(coarse.size());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    total += gauss_step(f, pts[i], pts[i + 1], coarse[i], eps, tol.max_depth, budget);
  }
  return total;
}

double gauss_legendre8(const ScalarFn& f, double a, double b) {
  static constexpr std::array<double, 4> nodes = {0.1834346424956498, 0.5255324099163290,
                                                  0.7966664774136267, 0.9602898564975363};
  static constexpr std::array<double, 4> weights = {0.3626837833783620, 0.3137066458778873,
                                                    0.2223810344533745, 0.1012285362903763};
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    s += weights[i] * (f(c - h * nodes[i]) + f(c + h * nodes[i]));
  }
  return s * h;
}

double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

std::optional<double> solve_monotone(const ScalarFn& F, double target,
                                     const MonotoneRootOptions& opt) {
  double lo = 0.0;
  double hi = std::min(opt.initial, opt.max_radius);
  if (F(hi) >= target) {
    // Shrink towards zero until the lower end sits below the target.
    lo = 0.5 * hi;
    while (F(lo) >= target) {
      hi = lo;
      lo *= 0.5;
      if (lo < 1e-300) return lo;
    }
  } else {
    for (;;) {
      lo = hi;
      if (hi >= opt.max_radius) return std::nullopt;
      hi = std::min(2.0 * hi, opt.max_radius);
      if (F(hi) >= target) break;
    }
  }
  // Invariant: F(lo) < target <= F(hi).
  for (int it = 0; it < opt.max_iter; ++it) {
    if (hi - lo <= opt.rel_tol * hi) break;
    const double mid = (lo > 0.0 && hi > 4.0 * lo) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (F(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double bisect_increasing(const ScalarFn& g, double lo, double hi, double abs_tol, int max_iter) {
  for (int it = 0; it < max_iter && hi - lo > abs_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double golden_section_max(const ScalarFn& f, double a, double b, int iters) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? c : d;
}

const char* to_string(Trend t) {
  switch (t) {
    case Trend::vanishing: return "vanishing";
    case Trend::bounded: return "bounded";
    case Trend::diverging: return "diverging";
    case Trend::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Trend classify_trend(const TrendLevels& v) {
  for (double e : v) {
    if (std::isnan(e) || e < 0.0) return Trend::inconclusive;
  }
  const auto grows = [](double a, double b) { return b >= 2.0 * a; };
  const auto drops = [](double a, double b) { return 2.0 * b <= a; };
  if (std::isinf(v[0]) || std::isinf(v[1])) return std::isinf(v[2]) ? Trend::diverging : Trend::inconclusive;
  if (std::isinf(v[2])) return grows(v[0], v[1]) ? Trend::diverging : Trend::inconclusive;
  if (drops(v[0], v[1]) && drops(v[1], v[2])) return Trend::vanishing;
  if (v[0] > 0.0 && grows(v[0], v[1]) && grows(v[1], v[2])) return Trend::diverging;
  const double lo = std::min({v[0], v[1], v[2]});
  const double hi = std::max({v[0], v[1], v[2]});
  if (lo > 0.0 && hi < 2.0 * lo) return Trend::bounded;
  return Trend::inconclusive;
}

namespace {

template <typename Pick>
TrendLevels band_levels(std::span<const double> x, std::span<const double> g, double half_width,
                        double init, Pick pick) {
  TrendLevels out{init, init, init};
  const std::array<double, 3> L = {half_width / 4.0, half_width / 2.0, half_width};
  const double eps = 1e-12 * half_width;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double ax = std::abs(x[i]);
    for (std::size_t k = 0; k < 3; ++k) {
      if (ax > 0.5 * L[k] + eps && ax <= L[k] + eps) out[k] = pick(out[k], std::abs(g[i]));
    }
  }
  return out;
}

}  // namespace

TrendLevels edge_band_levels(std::span<const double> x, std::span<const double> g,
                             double half_width) {
  return band_levels(x, g, half_width, 0.0, [](double a, double b) { return std::max(a, b); });
}

TrendLevels edge_band_inf_levels(std::span<const double> x, std::span<const double> g,
                                 double half_width) {
  return band_levels(x, g, half_width, std::numeric_limits<double>::infinity(),
                     [](double a, double b) { return std::min(a, b); });
}

const char* to_string(TailTrend t) {
  switch (t) {
    case TailTrend::integrable: return "integrable";
    case TailTrend::divergent: return "divergent";
    case TailTrend::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

TailTrend classify_tail(const TrendLevels& inc) {
  for (double e : inc) {
    if (std::isnan(e) || e < 0.0) return TailTrend::inconclusive;
  }
  if (std::isinf(inc[1]) || std::isinf(inc[2])) return TailTrend::divergent;
  const double slack = 1.0 + 1e-9;
  if (inc[1] <= 0.5 * slack * inc[0] && inc[2] <= 0.5 * slack * inc[1]) return TailTrend::integrable;
  if (inc[0] > 0.0 && inc[1] >= 0.9 * inc[0] && inc[2] >= 0.9 * inc[1]) return TailTrend::divergent;
  return TailTrend::inconclusive;
}

}  // namespace srt
