#include "srt/coefficients.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>

#include "srt/errors.hpp"
#include "srt/log.hpp"

namespace srt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// int_{t1}^{t1+len} e^{c t} dt for t1 >= 0, len >= 0 (len may be infinite).
double exp_piece(double c, double t1, double len) {
  if (len <= 0.0) return 0.0;
  if (c == 0.0) return len;
  if (std::isinf(len)) return c < 0.0 ? std::exp(c * t1) / (-c) : kInf;
  return std::exp(c * t1) * std::expm1(c * len) / c;
}

// int over [x+lo, x+hi] of e^{c|t|}.
double exp_abs_integral(double c, double x, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  const double t1 = x + lo;
  const double t2 = x + hi;
  const double len = hi - lo;
  if (t1 >= 0.0) return exp_piece(c, t1, len);
  if (t2 <= 0.0) return exp_piece(c, -t2, len);
  return exp_piece(c, 0.0, -t1) + exp_piece(c, 0.0, t2);
}

}  // namespace

class WeightImpl {
 public:
  explicit WeightImpl(CoefficientSpec spec) : spec_(std::move(spec)) {}
  virtual ~WeightImpl() = default;
  virtual double r(double x) const = 0;
  virtual double q(double x) const = 0;
  virtual std::optional<double> r_prime(double) const { return std::nullopt; }
  virtual std::optional<double> q_prime(double) const { return std::nullopt; }
  virtual bool r_is_one() const { return false; }
  virtual double inv_r_off(double x, double lo, double hi) const = 0;
  virtual double q_off(double x, double lo, double hi) const = 0;

  const CoefficientSpec& spec() const { return spec_; }
  std::span<const double> breaks() const { return breaks_; }

 protected:
  CoefficientSpec spec_;
  std::vector<double> breaks_;
};

namespace {

class ConstantImpl final : public WeightImpl {
 public:
  explicit ConstantImpl(CoefficientSpec s) : WeightImpl(std::move(s)) {}
  double r(double) const override { return spec_.r0; }
  double q(double) const override { return spec_.q0; }
  std::optional<double> r_prime(double) const override { return 0.0; }
  std::optional<double> q_prime(double) const override { return 0.0; }
  bool r_is_one() const override { return spec_.r0 == 1.0; }
  double inv_r_off(double, double lo, double hi) const override { return (hi - lo) / spec_.r0; }
  double q_off(double, double lo, double hi) const override {
    if (spec_.q0 == 0.0) return 0.0;
    return (hi - lo) * spec_.q0;
  }
};

class ExponentialImpl final : public WeightImpl {
 public:
  explicit ExponentialImpl(CoefficientSpec s) : WeightImpl(std::move(s)) { breaks_ = {0.0}; }
  double r(double x) const override { return std::exp(spec_.alpha * std::abs(x)); }
  double q(double x) const override { return std::exp(spec_.beta * std::abs(x)); }
  // One-sided derivative at 0 is taken from the right; the kink is listed in breakpoints.
  std::optional<double> r_prime(double x) const override {
    return (x < 0.0 ? -spec_.alpha : spec_.alpha) * r(x);
  }
  std::optional<double> q_prime(double x) const override {
    return (x < 0.0 ? -spec_.beta : spec_.beta) * q(x);
  }
  bool r_is_one() const override { return spec_.alpha == 0.0; }
  double inv_r_off(double x, double lo, double hi) const override {
    return exp_abs_integral(-spec_.alpha, x, lo, hi);
  }
  double q_off(double x, double lo, double hi) const override {
    return exp_abs_integral(spec_.beta, x, lo, hi);
  }
};

class PolynomialImpl final : public WeightImpl {
 public:
  explicit PolynomialImpl(CoefficientSpec s) : WeightImpl(std::move(s)), n_(2 * spec_.k + 1) {}
  double r(double) const override { return 1.0; }
  double q(double x) const override { return 1.0 + std::pow(x, 2 * spec_.k); }
  std::optional<double> r_prime(double) const override { return 0.0; }
  std::optional<double> q_prime(double x) const override {
    return 2.0 * spec_.k * std::pow(x, 2 * spec_.k - 1);
  }
  bool r_is_one() const override { return true; }
  double inv_r_off(double, double lo, double hi) const override { return hi - lo; }
  double q_off(double x, double lo, double hi) const override {
    if (std::isinf(lo) || std::isinf(hi)) return kInf;
    // ((x+hi)^n - (x+lo)^n)/n expanded in powers of x so that close offsets do not cancel.
    double sum = 0.0;
    double binom = 1.0;
    for (int j = 1; j <= n_; ++j) {
      binom = binom * (n_ - j + 1) / j;
      // hi^j - lo^j = (hi - lo) * sum_i hi^i lo^{j-1-i}
      double g = 0.0;
      for (int i = 0; i < j; ++i) g += std::pow(hi, i) * std::pow(lo, j - 1 - i);
      sum += binom * std::pow(x, n_ - j) * g;
    }
    return (hi - lo) * (1.0 + sum / n_);
  }

 private:
  int n_;
};

class TabulatedImpl final : public WeightImpl {
 public:
  explicit TabulatedImpl(CoefficientSpec s) : WeightImpl(std::move(s)) { breaks_ = spec_.tx; }

  double r(double x) const override { return interp(spec_.tr, x); }
  double q(double x) const override { return interp(spec_.tq, x); }

  double inv_r_off(double x, double lo, double hi) const override {
    return integrate(x, lo, hi, [this](std::size_t seg, double a, double b) {
      return inv_linear(seg_value(spec_.tr, seg, a), seg_value(spec_.tr, seg, b), b - a);
    }, true, true);
  }
  double q_off(double x, double lo, double hi) const override {
    return integrate(x, lo, hi, [this](std::size_t seg, double a, double b) {
      return 0.5 * (seg_value(spec_.tq, seg, a) + seg_value(spec_.tq, seg, b)) * (b - a);
    }, spec_.tq.front() > 0.0, spec_.tq.back() > 0.0);
  }

 private:
  // Segment index: 0 is the left constant extension, n is the right one, 1..n-1 are table cells.
  std::size_t segment_of(double t) const {
    const auto& x = spec_.tx;
    return static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), t) - x.begin());
  }

  double seg_value(const std::vector<double>& y, std::size_t seg, double t) const {
    const auto& x = spec_.tx;
    if (seg == 0) return y.front();
    if (seg >= x.size()) return y.back();
    const double w = (t - x[seg - 1]) / (x[seg] - x[seg - 1]);
    return y[seg - 1] + w * (y[seg] - y[seg - 1]);
  }

  double interp(const std::vector<double>& y, double t) const {
    warn_extrapolation(t);
    return seg_value(y, segment_of(t), t);
  }

  void warn_extrapolation(double t) const {
    if (t >= spec_.tx.front() && t <= spec_.tx.back()) return;
    if (!warned_.exchange(true)) {
      log::warn("tabulated coefficients extended by constants outside [", spec_.tx.front(), ", ",
                spec_.tx.back(), "]");
    }
  }

  // Exact integral of 1/r for r linear from ra to rb over a length len.
  static double inv_linear(double ra, double rb, double len) {
    if (len <= 0.0) return 0.0;
    if (std::isinf(len)) return kInf;
    const double delta = (rb - ra) / ra;
    if (std::abs(delta) < 1e-8) return len / ra * (1.0 - 0.5 * delta + delta * delta / 3.0);
    return len / ra * std::log1p(delta) / delta;
  }

  template <typename Piece>
  double integrate(double x, double lo, double hi, Piece piece, bool left_mass, bool right_mass) const {
    if (!(hi > lo)) return 0.0;
    const auto& tx = spec_.tx;
    double a = x + lo;
    double b = x + hi;
    if (std::isinf(a) || std::isinf(b)) {
      if ((std::isinf(a) && left_mass) || (std::isinf(b) && right_mass)) return kInf;
      // A zero constant extension contributes nothing; clip to the table.
      if (std::isinf(a)) a = std::min(tx.front(), b);
      if (std::isinf(b)) b = std::max(tx.back(), a);
      return integrate(0.0, a, b, piece, left_mass, right_mass);
    }
    warn_extrapolation(a);
    warn_extrapolation(b);
    const std::size_t sa = segment_of(a);
    const std::size_t sb = segment_of(b);
    if (sa == sb) return piece(sa, a, a + (hi - lo));
    double total = 0.0;
    double left = a;
    for (std::size_t s = sa; s <= sb; ++s) {
      const double right = s < tx.size() ? std::min(b, tx[s]) : b;
      if (right > left) total += piece(s, left, right);
      left = right;
    }
    return total;
  }

  mutable std::atomic<bool> warned_{false};
};

void check_table(const CoefficientSpec& s) {
  if (s.tx.size() != s.tr.size() || s.tx.size() != s.tq.size()) {
    fail(ErrorKind::malformed_table, "columns x, r, q differ in length");
  }
  if (s.tx.size() < 3) fail(ErrorKind::malformed_table, "table needs at least 3 rows");
  for (std::size_t i = 0; i < s.tx.size(); ++i) {
    if (!std::isfinite(s.tx[i]) || !std::isfinite(s.tr[i]) || !std::isfinite(s.tq[i])) {
      fail(ErrorKind::malformed_table, "non-finite entry in row " + std::to_string(i + 1));
    }
    if (i > 0 && !(s.tx[i] > s.tx[i - 1])) {
      fail(ErrorKind::malformed_table, "x column not strictly increasing at row " + std::to_string(i + 1));
    }
    if (!(s.tr[i] > 0.0)) {
      std::ostringstream os;
      os << "r(" << s.tx[i] << ") = " << s.tr[i] << " is not positive";
      fail(ErrorKind::invalid_coefficient, os.str());
    }
    if (s.tq[i] < 0.0) {
      std::ostringstream os;
      os << "q(" << s.tx[i] << ") = " << s.tq[i] << " is negative";
      fail(ErrorKind::invalid_coefficient, os.str());
    }
  }
}

}  // namespace

const char* to_string(CoefficientKind kind) {
  switch (kind) {
    case CoefficientKind::constant: return "constant";
    case CoefficientKind::exponential: return "exponential";
    case CoefficientKind::polynomial_q: return "polynomial-q";
    case CoefficientKind::tabulated: return "tabulated";
  }
  return "unknown";
}

CoefficientSpec CoefficientSpec::constant(double r0, double q0) {
  CoefficientSpec s;
  s.kind = CoefficientKind::constant;
  s.r0 = r0;
  s.q0 = q0;
  return s;
}

CoefficientSpec CoefficientSpec::exponential(double alpha, double beta) {
  CoefficientSpec s;
  s.kind = CoefficientKind::exponential;
  s.alpha = alpha;
  s.beta = beta;
  return s;
}

CoefficientSpec CoefficientSpec::polynomial_q(int k) {
  CoefficientSpec s;
  s.kind = CoefficientKind::polynomial_q;
  s.k = k;
  return s;
}

CoefficientSpec CoefficientSpec::tabulated(std::vector<double> x, std::vector<double> r,
                                           std::vector<double> q, std::string origin) {
  CoefficientSpec s;
  s.kind = CoefficientKind::tabulated;
  s.tx = std::move(x);
  s.tr = std::move(r);
  s.tq = std::move(q);
  s.path = std::move(origin);
  return s;
}

std::string CoefficientSpec::label() const {
  std::ostringstream os;
  switch (kind) {
    case CoefficientKind::constant: os << "constant(" << r0 << "," << q0 << ")"; break;
    case CoefficientKind::exponential: os << "exponential(" << alpha << "," << beta << ")"; break;
    case CoefficientKind::polynomial_q: os << "polynomial-q(k=" << k << ")"; break;
    case CoefficientKind::tabulated:
      os << "tabulated(" << (path.empty() ? std::to_string(tx.size()) + " rows" : path) << ")";
      break;
  }
  return os.str();
}

WeightField build_weight_field(const CoefficientSpec& spec) {
  switch (spec.kind) {
    case CoefficientKind::constant:
      if (!(spec.r0 > 0.0) || !std::isfinite(spec.r0)) {
        fail(ErrorKind::invalid_coefficient, "constant r0 must be positive");
      }
      if (!(spec.q0 >= 0.0) || !std::isfinite(spec.q0)) {
        fail(ErrorKind::invalid_coefficient, "constant q0 must be nonnegative");
      }
      return WeightField(std::make_shared<ConstantImpl>(spec));
    case CoefficientKind::exponential:
      if (!std::isfinite(spec.alpha) || !std::isfinite(spec.beta)) {
        fail(ErrorKind::invalid_coefficient, "exponential rates must be finite");
      }
      return WeightField(std::make_shared<ExponentialImpl>(spec));
    case CoefficientKind::polynomial_q:
      if (spec.k < 1 || spec.k > 8) fail(ErrorKind::invalid_coefficient, "polynomial-q needs 1 <= k <= 8");
      return WeightField(std::make_shared<PolynomialImpl>(spec));
    case CoefficientKind::tabulated:
      check_table(spec);
      return WeightField(std::make_shared<TabulatedImpl>(spec));
  }
  fail(ErrorKind::invalid_coefficient, "unknown coefficient kind");
}

double WeightField::r(double x) const { return impl_->r(x); }
double WeightField::q(double x) const { return impl_->q(x); }
std::optional<double> WeightField::r_prime(double x) const { return impl_->r_prime(x); }
std::optional<double> WeightField::q_prime(double x) const { return impl_->q_prime(x); }
bool WeightField::has_derivatives() const { return impl_->r_prime(0.0).has_value(); }
bool WeightField::r_is_one() const { return impl_->r_is_one(); }
std::span<const double> WeightField::breakpoints() const { return impl_->breaks(); }
const CoefficientSpec& WeightField::spec() const { return impl_->spec(); }

double WeightField::R(double a, double b) const {
  if (a > b) return -R(b, a);
  if (std::isfinite(a) && std::isfinite(b)) return impl_->inv_r_off(a, 0.0, b - a);
  return impl_->inv_r_off(0.0, a, b);
}

double WeightField::Q(double a, double b) const {
  if (a > b) return -Q(b, a);
  if (std::isfinite(a) && std::isfinite(b)) return impl_->q_off(a, 0.0, b - a);
  return impl_->q_off(0.0, a, b);
}

double WeightField::R_off(double x, double lo, double hi) const { return impl_->inv_r_off(x, lo, hi); }
double WeightField::Q_off(double x, double lo, double hi) const { return impl_->q_off(x, lo, hi); }

namespace {
// relative only: these integrals span many decades on wide exponential windows
constexpr QuadratureTolerance kIndependentTol{0.0, 1e-11, 48};
}  // namespace

double WeightField::R_quad(double a, double b) const {
  auto f = [this](double t) { return 1.0 / impl_->r(t); };
  return adaptive_simpson(f, a, b, kIndependentTol, impl_->breaks());
}

double WeightField::Q_quad(double a, double b) const {
  auto f = [this](double t) { return impl_->q(t); };
  return adaptive_simpson(f, a, b, kIndependentTol, impl_->breaks());
}

Window::Window(double half_width, int samples) : X(half_width), N(samples) {
  if (!(X > 0.0) || !std::isfinite(X)) fail(ErrorKind::invalid_argument, "window half-width must be positive");
  if (N < 3) fail(ErrorKind::invalid_argument, "window needs at least 3 samples");
}

std::vector<double> Window::grid() const {
  std::vector<double> g(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) g[i] = -X + 2.0 * X * i / (N - 1);
  g.back() = X;
  if (N % 2 == 1) g[N / 2] = 0.0;
  return g;
}

HypothesisReport validate_hypotheses(const WeightField& field, const Window& window) {
  HypothesisReport rep;
  const double X = window.X;
  rep.q_left_tail = field.Q(-kInf, -X);
  rep.q_right_tail = field.Q(X, kInf);
  rep.q_tails_positive = rep.q_left_tail > 0.0 && rep.q_right_tail > 0.0;
  for (double x : window.grid()) {
    const double rv = field.r(x);
    const double qv = field.q(x);
    if (!(rv > 0.0)) rep.r_positive = false;
    if (!(qv >= 0.0)) rep.q_nonnegative = false;
  }
  rep.is_r_integrable_left = std::isfinite(field.R(-kInf, 0.0));
  rep.is_r_integrable_right = std::isfinite(field.R(0.0, kInf));

  bool all_diverging = true;
  bool any_bounded = false;
  const std::array<double, 3> ds = {0.5 * X, X, 2.0 * X};
  for (double x : {-X, 0.0, X}) {
    GrowthProbe p;
    p.x = x;
    for (std::size_t i = 0; i < 3; ++i) {
      p.left[i] = field.R_off(x, -ds[i], 0.0) * field.Q_off(x, -ds[i], 0.0);
      p.right[i] = field.R_off(x, 0.0, ds[i]) * field.Q_off(x, 0.0, ds[i]);
    }
    p.left_trend = classify_trend(p.left);
    p.right_trend = classify_trend(p.right);
    for (Trend t : {p.left_trend, p.right_trend}) {
      if (t != Trend::diverging) all_diverging = false;
      if (t == Trend::bounded || t == Trend::vanishing) any_bounded = true;
    }
    rep.growth.push_back(p);
  }
  rep.growth_trend = all_diverging ? Trend::diverging : any_bounded ? Trend::bounded : Trend::inconclusive;
  return rep;
}

}  // namespace srt
