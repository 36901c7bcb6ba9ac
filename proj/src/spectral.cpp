#include "srt/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "srt/errors.hpp"
#include "srt/log.hpp"

namespace srt {

EigenTop eigen_top(const Eigen::MatrixXd& A, int k, double tol, int max_iter, std::uint64_t seed) {
  const Eigen::Index n = A.rows();
  if (n == 0 || A.cols() != n) fail(ErrorKind::invalid_argument, "eigen_top needs a square matrix");
  EigenTop out;
  k = static_cast<int>(std::min<Eigen::Index>(k, n));
  const Eigen::Index b = std::min<Eigen::Index>(n, k + 6);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N01;
  Eigen::MatrixXd Q(n, b);
  for (Eigen::Index j = 0; j < b; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) Q(i, j) = N01(rng);
  }
  std::vector<double> prev(k, 0.0);
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(A * Q);
    Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, b);
    const Eigen::MatrixXd T = Q.transpose() * A * Q;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (T + T.transpose()));
    // eigenvalues come ascending; rotate the block onto the Ritz vectors
    Q = Q * es.eigenvectors().rowwise().reverse();
    const Eigen::VectorXd ev = es.eigenvalues().reverse();
    out.values.assign(ev.data(), ev.data() + k);
    out.iterations = it;
    double change = 0.0;
    const double scale = std::max(std::abs(out.values.front()), 1e-300);
    for (int i = 0; i < k; ++i) change = std::max(change, std::abs(out.values[i] - prev[i]) / scale);
    prev = out.values;
    if (it > 1 && change <= tol) {
      out.converged = true;
      break;
    }
  }
  if (!out.converged) log::warn("eigen iteration did not converge after ", out.iterations, " steps");
  return out;
}

EnvelopeCheck check_eigen_vs_B(double lambda_max, double B, bool hd_vanishing) {
  EnvelopeCheck e;
  e.ratio = B > 0.0 ? lambda_max / B : 0.0;
  e.in_hypothesis = hd_vanishing;
  e.within = B > 0.0 && e.ratio >= 1.0 / e.bound && e.ratio <= e.bound;
  return e;
}

DecayReport decay_quantities(const FssProfile& fss) {
  const WeightField& F = fss.field;
  const auto nodes = fss.quadrature_nodes();
  const LogCumulative U2(
      nodes, [&](double x) { return 2.0 * fss.lu(x); }, [&](double x) { return 2.0 * fss.mu(x) / F.r(x); },
      true);
  const LogCumulative V2(
      nodes, [&](double x) { return 2.0 * fss.lv(x); }, [&](double x) { return 2.0 * fss.mv(x) / F.r(x); },
      true);
  DecayReport d;
  d.x = fss.grid;
  d.I.resize(d.x.size());
  d.J.resize(d.x.size());
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    const double x = d.x[i];
    d.I[i] = std::exp(fss.log_v[i] - fss.log_u[i] + U2.right(x));
    d.J[i] = std::exp(fss.log_u[i] - fss.log_v[i] + V2.left(x));
  }
  d.I_levels = edge_band_levels(d.x, d.I, fss.window.X);
  d.J_levels = edge_band_levels(d.x, d.J, fss.window.X);
  d.I_trend = classify_trend(d.I_levels);
  d.J_trend = classify_trend(d.J_levels);
  return d;
}

double edge_flux_ratio(const FssProfile& fss) {
  std::vector<double> nodes;
  for (double x : fss.quadrature_nodes()) {
    if (x > -1.0 && x < 1.0) nodes.push_back(x);
  }
  nodes.insert(nodes.begin(), -1.0);
  nodes.push_back(1.0);
  const LogCumulative V(nodes, [&](double x) { return fss.lv(x); }, nullptr, false);
  const LogCumulative U(nodes, [&](double x) { return fss.lu(x); }, nullptr, false);
  const double X = fss.window.X;
  double edge = 0.0, mid = 0.0;
  for (std::size_t i = 0; i < fss.grid.size(); ++i) {
    const double x = fss.grid[i];
    const double lv = fss.log_v[i], lu = fss.log_u[i];
    // y = u * int_{-1}^{min(x,1)} v + v * int_{max(x,-1)}^1 u, and r y' = m_u u (...) + m_v v (...)
    const double a = x > -1.0 ? std::exp(lu + V.left(std::min(x, 1.0))) : 0.0;
    const double b = x < 1.0 ? std::exp(lv + U.right(std::max(x, -1.0))) : 0.0;
    const double y = a + b;
    const double ry = fss.mu(x) * a + fss.mv(x) * b;
    const double flux = std::abs(ry * y);
    if (std::abs(x) <= 0.5 * X) mid = std::max(mid, flux);
    if (i == 0 || i + 1 == fss.grid.size()) edge = std::max(edge, flux);
  }
  return mid > 0.0 ? edge / mid : 0.0;
}

SpectralReport spectrum(const FssProfile& fss, int n, int k, double B, bool hd_vanishing, double half) {
  const DiscreteGreen dg = discretize_green(fss, n, half);
  SpectralReport s;
  s.n = n;
  s.half = dg.half;
  s.symmetric = dg.G == dg.G.transpose();
  const EigenTop top = eigen_top(dg.G, k);
  s.top = top.values;
  s.converged = top.converged;
  s.lambda_max = s.top.empty() ? 0.0 : s.top.front();
  if (s.top.size() >= 5 && s.top[4] > 0.0) s.tail_ratio = s.top[0] / s.top[4];
  s.envelope = check_eigen_vs_B(s.lambda_max, B, hd_vanishing);
  return s;
}

}  // namespace srt
