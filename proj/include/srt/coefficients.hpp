#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srt/numerics.hpp"

namespace srt {

enum class CoefficientKind { constant, exponential, polynomial_q, tabulated };

const char* to_string(CoefficientKind kind);

struct CoefficientSpec {
  CoefficientKind kind = CoefficientKind::constant;
  double r0 = 1.0, q0 = 1.0;        // constant
  double alpha = 0.0, beta = 0.0;   // exponential: r = e^{alpha|x|}, q = e^{beta|x|}
  int k = 1;                        // polynomial-q: r = 1, q = 1 + x^{2k}
  std::string path;                 // tabulated CSV (informational once loaded)
  std::vector<double> tx, tr, tq;   // tabulated samples

  static CoefficientSpec constant(double r0, double q0);
  static CoefficientSpec exponential(double alpha, double beta);
  static CoefficientSpec polynomial_q(int k);
  static CoefficientSpec tabulated(std::vector<double> x, std::vector<double> r,
                                   std::vector<double> q, std::string origin = {});

  std::string label() const;
};

// key=value spec file; tabulated paths resolve relative to the file's directory.
CoefficientSpec load_spec_file(const std::string& path);
CoefficientSpec parse_spec_text(const std::string& text, const std::string& base_dir = ".");
// CSV with header and columns x,r,q.
CoefficientSpec load_table_csv(const std::string& path);

class WeightImpl;

// Immutable evaluator for (r, q) and the integrals R(a,b) = int 1/r, Q(a,b) = int q.
// Cheap to copy; copies share the underlying coefficient data.
class WeightField {
 public:
  WeightField() = default;  // empty handle; only assignment is valid on it
  double r(double x) const;
  double q(double x) const;
  std::optional<double> r_prime(double x) const;
  std::optional<double> q_prime(double x) const;
  bool has_derivatives() const;
  bool r_is_one() const;

  // a and b may be infinite; returns +inf for a divergent integral.
  double R(double a, double b) const;
  double Q(double a, double b) const;
  // Integrals over [x+lo, x+hi]; keeps full precision when the offsets are tiny relative to x.
  double R_off(double x, double lo, double hi) const;
  double Q_off(double x, double lo, double hi) const;

  // Generic adaptive-Simpson paths on finite intervals, independent of closed forms.
  double R_quad(double a, double b) const;
  double Q_quad(double a, double b) const;

  // Points where r or q fail to be smooth.
  std::span<const double> breakpoints() const;
  const CoefficientSpec& spec() const;

 private:
  friend WeightField build_weight_field(const CoefficientSpec& spec);
  explicit WeightField(std::shared_ptr<const WeightImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const WeightImpl> impl_;
};

WeightField build_weight_field(const CoefficientSpec& spec);

struct Window {
  double X = 10.0;
  int N = 201;

  Window() = default;
  Window(double half_width, int samples);
  std::vector<double> grid() const;
  double step() const { return 2.0 * X / (N - 1); }
};

struct GrowthProbe {
  double x = 0.0;
  TrendLevels left{}, right{};   // F(d) for d in {X/2, X, 2X}
  Trend left_trend = Trend::inconclusive;
  Trend right_trend = Trend::inconclusive;
};

struct HypothesisReport {
  double q_left_tail = 0.0;   // Q(-inf, -X)
  double q_right_tail = 0.0;  // Q(X, inf)
  bool q_tails_positive = false;
  bool r_positive = true;
  bool q_nonnegative = true;
  std::vector<GrowthProbe> growth;
  Trend growth_trend = Trend::inconclusive;  // worst over probes
  bool is_r_integrable_left = false;          // R(-inf, 0) finite
  bool is_r_integrable_right = false;
};

HypothesisReport validate_hypotheses(const WeightField& field, const Window& window);

}  // namespace srt
