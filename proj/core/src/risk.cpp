#include "cpvar/risk.hpp"

#include <cmath>
#include <stdexcept>

#include "cpvar/estimators.hpp"

namespace cpvar {

namespace {

double sq(double v) { return v * v; }

/// sum_i (theta_i - theta_{i+m})^2 over the circular index set.
double circular_lag_tv(const std::vector<double>& theta, int m) {
  const int n = static_cast<int>(theta.size());
  m %= n;
  if (m < 0) m += n;
  double s = 0;
  for (int i = 0; i < n; ++i) {
    int j = i + m;
    if (j >= n) j -= n;
    s += sq(theta[static_cast<std::size_t>(i)] - theta[static_cast<std::size_t>(j)]);
  }
  return s;
}

}  // namespace

double CoefVector::sum() const {
  double s = 0;
  for (double v : c) s += v;
  return s;
}

double CoefVector::weighted_sum() const {
  double s = 0;
  for (int k = 1; k <= L(); ++k) s += k * c[static_cast<std::size_t>(k - 1)];
  return s;
}

bool CoefVector::in_QL(double tol) const {
  return std::abs(sum() - 1.0) <= tol && std::abs(weighted_sum()) <= tol;
}

double tk_mean(const MeanProfile& theta, const NoiseMoments& noise, int k) {
  if (k < 1 || k > theta.L())
    throw std::domain_error("tk_mean: requires 1 <= k <= L(theta)");
  return 2.0 * theta.n() * noise.sigma2 + k * theta.W();
}

LagMoments tk_moments(const MeanProfile& theta, const NoiseMoments& noise, int k,
                      std::optional<int> h) {
  if (k < 1 || 2 * k > theta.L())
    throw std::domain_error("tk_moments: variance requires 1 <= k <= L(theta)/2");
  const double n = theta.n();
  const double s2 = noise.sigma2;
  const double s4 = s2 * s2;
  const double W = theta.W();
  LagMoments m;
  m.mean = 2.0 * n * s2 + k * W;
  m.var = 4.0 * n * noise.kappa4 * s4 + 8.0 * k * s2 * W;
  if (h) {
    if (*h <= k || 2 * *h > theta.L())
      throw std::domain_error("tk_moments: covariance requires k < h <= L(theta)/2");
    m.cov = 4.0 * n * (noise.kappa4 - 1.0) * s4 + 8.0 * k * s2 * W;
  }
  return m;
}

double sk_mean(const MeanProfile& theta, const NoiseMoments& noise, int k) {
  if (theta.circular())
    throw std::domain_error("sk_mean: classical profile (tau_J = n) required");
  if (k < 1 || k > theta.L())
    throw std::domain_error("sk_mean: requires 1 <= k <= L(theta)");
  return 2.0 * theta.n() * noise.sigma2 + k * (theta.V() - 2.0 * noise.sigma2);
}

LagMoments sk_moments(const MeanProfile& theta, const NoiseMoments& noise, int k,
                      std::optional<int> h) {
  if (theta.circular())
    throw std::domain_error("sk_moments: classical profile (tau_J = n) required");
  if (!noise.third_moment_zero)
    throw std::domain_error("sk_moments: var/cov formulas need E(eps^3) = 0");
  if (k < 1 || 2 * k > theta.L())
    throw std::domain_error("sk_moments: variance requires 1 <= k <= L(theta)/2");
  const double n = theta.n();
  const double s2 = noise.sigma2;
  const double s4 = s2 * s2;
  const double V = theta.V();
  const double k4 = noise.kappa4;
  LagMoments m;
  m.mean = 2.0 * n * s2 + k * (V - 2.0 * s2);
  m.var = 2.0 * (n - k) * (k4 + 1.0) * s4 + 2.0 * (n - 2.0 * k) * (k4 - 1.0) * s4 +
          8.0 * k * s2 * V;
  if (h) {
    if (*h <= k || 2 * *h > theta.L())
      throw std::domain_error("sk_moments: covariance requires k < h <= L(theta)/2");
    m.cov = (4.0 * n - 4.0 * *h - 2.0 * k) * (k4 - 1.0) * s4 + 8.0 * k * s2 * V;
  }
  return m;
}

RiskReport ols_risk(int K, int n, const NoiseMoments& noise, double Wratio, bool exact) {
  if (K < 2) throw std::domain_error("ols_risk: K >= 2 required");
  if (n > 0 && K > n - 1) throw std::domain_error("ols_risk: K <= n-1 required");
  if (Wratio < 0.0) throw std::domain_error("ols_risk: Wratio >= 0 required");
  const double Kd = K;
  RiskReport r;
  r.exact = exact;
  r.components.kappa_term = noise.kappa4 - 1.0;
  r.components.design_term = (4.0 * Kd + 2.0) / (Kd * (Kd - 1.0));
  if (exact)
    r.components.mean_term =
        2.0 * Wratio * (Kd + 1.0) * (Kd + 2.0) * (2.0 * Kd + 1.0) / (15.0 * Kd * (Kd - 1.0));
  else
    r.components.mean_term =
        Wratio * (Kd + 1.0) * sq(Kd + 2.0) / (3.0 * Kd * (Kd - 1.0));
  r.risk = r.components.kappa_term + r.components.design_term + r.components.mean_term;
  return r;
}

RiskReport ms_risk(int K, int n, const NoiseMoments& noise, double Vratio, bool exact,
                   MsVariant variant) {
  if (K < 2) throw std::domain_error("ms_risk: K >= 2 required");
  if (n < 2 * K) throw std::domain_error("ms_risk: n >= 2K required");
  if (Vratio < 0.0) throw std::domain_error("ms_risk: Vratio >= 0 required");
  const double Kd = K;
  double small_sample = 2.0 * (Kd - 7.0) * (Kd + 1.0) * (Kd + 2.0) / (Kd * (Kd - 1.0));
  if (variant == MsVariant::Over15) small_sample /= 15.0;
  RiskReport r;
  r.exact = exact;
  r.components.kappa_term = noise.kappa4 - 1.0;
  r.components.design_term =
      (4.0 * Kd + 2.0) / (Kd * (Kd - 1.0)) + small_sample / n;
  if (exact)
    r.components.mean_term =
        2.0 * Vratio * (Kd + 1.0) * (Kd + 2.0) * (2.0 * Kd + 1.0) / (15.0 * Kd * (Kd - 1.0));
  else
    r.components.mean_term =
        Vratio * (Kd + 1.0) * sq(Kd + 2.0) / (3.0 * Kd * (Kd - 1.0));
  r.risk = r.components.kappa_term + r.components.design_term + r.components.mean_term;
  return r;
}

double quad_risk(const QuadEstimator& a, const MeanProfile& theta,
                 const NoiseMoments& noise) {
  const int n = a.n();
  if (theta.n() != n) throw std::domain_error("quad_risk: dimension mismatch");

  if (!noise.third_moment_zero) {
    // The third-moment cross term 4 E(eps^3) sum_i a_ii (A theta)_i only
    // cancels structurally for constant diagonal with A 1 = 0.
    const double tol = 1e-12 * std::max(a.max_abs(), 1.0);
    double row_min = 0, row_max = 0;
    const double d0 = a.at(1, 1);
    bool const_diag = true;
    for (int i = 1; i <= n; ++i) {
      if (std::abs(a.at(i, i) - d0) > tol) const_diag = false;
      double row = 0;
      for (int j = 1; j <= n; ++j) row += a.at(i, j);
      row_min = std::min(row_min, row);
      row_max = std::max(row_max, row);
    }
    if (!const_diag || std::max(std::abs(row_min), std::abs(row_max)) > n * tol)
      throw std::domain_error(
          "quad_risk: noise third moment not flagged zero and A lacks constant "
          "diagonal with A*1 = 0; formula would be invalid");
  }

  const auto th = theta.theta();
  const double s2 = noise.sigma2;
  double a_theta_sq = 0;      // ||A theta||^2
  double tr_a2 = 0;           // tr(A^2) = ||A||_F^2 for symmetric A
  double diag_sq = 0;         // sum_i a_ii^2
  for (int i = 1; i <= n; ++i) {
    double row_dot = 0;
    for (int j = 1; j <= n; ++j) {
      const double v = a.at(i, j);
      row_dot += v * th[static_cast<std::size_t>(j - 1)];
      tr_a2 += v * v;
    }
    a_theta_sq += row_dot * row_dot;
    diag_sq += sq(a.at(i, i));
  }
  return 4.0 * n * a_theta_sq / s2 + n * (2.0 * tr_a2 + (noise.kappa4 - 3.0) * diag_sq);
}

std::vector<double> g_matrix(const MeanProfile& theta, int L) {
  const double W = theta.W();
  const auto th = theta.theta();
  std::vector<double> g(static_cast<std::size_t>(L) * static_cast<std::size_t>(L));
  for (int k = 1; k <= L; ++k)
    for (int l = 1; l <= L; ++l)
      g[static_cast<std::size_t>(k - 1) * static_cast<std::size_t>(L) +
        static_cast<std::size_t>(l - 1)] =
          std::abs(k - l) + (W > 0.0 ? circular_lag_tv(th, k + l) / W : 0.0);
  return g;
}

double risk_of_c(const CoefVector& c, const MeanProfile& theta,
                 const NoiseMoments& noise) {
  const int L = c.L();
  if (!c.in_QL()) throw std::domain_error("risk_of_c: c must satisfy the Q_L constraints");
  if (L > theta.L()) throw std::domain_error("risk_of_c: L <= L(theta) required");
  const double W = theta.W();
  const double wratio = W / (theta.n() * noise.sigma2);
  double quad = 0;
  if (W > 0.0) {
    const auto g = g_matrix(theta, L);
    for (int k = 0; k < L; ++k)
      for (int l = 0; l < L; ++l)
        quad += c.c[static_cast<std::size_t>(k)] * c.c[static_cast<std::size_t>(l)] *
                g[static_cast<std::size_t>(k) * static_cast<std::size_t>(L) +
                  static_cast<std::size_t>(l)];
  }
  double norm2 = 0;
  for (double v : c.c) norm2 += v * v;
  return noise.kappa4 - 1.0 + norm2 - wratio * quad;
}

CoefVector optimal_c(int L, double Wratio) {
  if (L < 2) throw std::domain_error("optimal_c: L >= 2 required");
  if (Wratio < 0.0) throw std::domain_error("optimal_c: Wratio >= 0 required");
  return CoefVector{gls_weights(L, Wratio)};
}

}  // namespace cpvar
