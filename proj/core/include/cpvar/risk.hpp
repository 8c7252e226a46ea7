#pragma once

#include <optional>
#include <vector>

#include "cpvar/mean_profile.hpp"
#include "cpvar/noise.hpp"
#include "cpvar/quad_estimator.hpp"

namespace cpvar {

/// Weight vector c of an equivariant quadratic estimator sum_k c_k Y_k.
/// Membership in Q_L means sum c_k = 1 and sum k c_k = 0.
struct CoefVector {
  std::vector<double> c;

  int L() const { return static_cast<int>(c.size()); }
  double sum() const;
  double weighted_sum() const;  // sum k c_k
  bool in_QL(double tol = 1e-10) const;
};

struct RiskComponents {
  double kappa_term = 0.0;   // kappa4 - 1
  double design_term = 0.0;  // variance from the lag design, mean-free part
  double mean_term = 0.0;    // contribution of W(theta)/(n sigma^2) or V-ratio
};

/// Scale-free risk r = (n/sigma^4) E(sigma2_hat - sigma^2)^2 and its
/// decomposition. exact == false marks an upper bound rather than an
/// identity.
struct RiskReport {
  double risk = 0.0;
  RiskComponents components;
  bool exact = true;
};

struct LagMoments {
  double mean = 0.0;
  double var = 0.0;
  std::optional<double> cov;  // with the larger lag h, present when h given
};

/// Moments of T_k: mean 2n sigma^2 + k W (valid k <= L(theta)),
/// variance 4n kappa4 sigma^4 + 8k sigma^2 W (valid 2k <= L(theta)),
/// covariance with T_h, k < h: 4n(kappa4-1) sigma^4 + 8k sigma^2 W
/// (valid 2h <= L(theta)). Out-of-range lags are a domain error.
LagMoments tk_moments(const MeanProfile& theta, const NoiseMoments& noise, int k,
                      std::optional<int> h = std::nullopt);
double tk_mean(const MeanProfile& theta, const NoiseMoments& noise, int k);

/// Moments of S_k on the classical model (tau_J = n). The variance and
/// covariance formulas additionally require E(eps^3) = 0.
LagMoments sk_moments(const MeanProfile& theta, const NoiseMoments& noise, int k,
                      std::optional<int> h = std::nullopt);
double sk_mean(const MeanProfile& theta, const NoiseMoments& noise, int k);

/// Risk of the OLS estimator alpha_hat_K. With exact = true this is the
/// identity kappa4 - 1 + (4K+2)/(K(K-1)) + 2 Wratio (K+1)(K+2)(2K+1)/(15K(K-1)),
/// valid when 2K <= L(theta); with exact = false the mean term becomes the
/// bound Wratio (K+1)(K+2)^2 / (3K(K-1)), valid when K <= L(theta).
/// Wratio = W(theta)/(n sigma^2).
RiskReport ols_risk(int K, int n, const NoiseMoments& noise, double Wratio, bool exact);

/// The small-sample 1/n correction in the MS risk circulates in two
/// conflicting forms that differ by a factor 15; both stay selectable.
/// Over15 divides the coefficient 2(K-7)(K+1)(K+2)/(K(K-1)) by 15 and is
/// the variant consistent with the exact quadratic-form variance (see the
/// resolution tests), so it is the default.
enum class MsVariant { Unscaled, Over15 };

/// Risk of the MS estimator alpha_check_K on the classical model;
/// Vratio = V(theta)/(n sigma^2). Structured like ols_risk plus a 1/n term
/// (folded into design_term).
RiskReport ms_risk(int K, int n, const NoiseMoments& noise, double Vratio, bool exact,
                   MsVariant variant = MsVariant::Over15);

/// Exact variance of X^T A X in scale-free form n Var / sigma^4:
///   4n ||A theta||^2 / sigma^2 + n (2 tr A^2 + (kappa4 - 3) sum_i a_ii^2).
/// Valid only when the third-moment cross term vanishes, i.e. when A has
/// constant diagonal with A 1 = 0, or when noise.third_moment_zero; anything
/// else is a domain error rather than a silently wrong value.
double quad_risk(const QuadEstimator& a, const MeanProfile& theta,
                 const NoiseMoments& noise);

/// Risk of sum c_k Y_k: kappa4 - 1 + c^T (I - Wratio G(theta)) c with
/// G_kl = |k-l| + (1/W) sum_i (theta_i - theta_{i+k+l})^2; the G term is 0
/// when W(theta) = 0. Requires c in Q_L and L <= L(theta).
double risk_of_c(const CoefVector& c, const MeanProfile& theta,
                 const NoiseMoments& noise);

/// G(theta) restricted to Theta_{2L} is the constant matrix 2 max(k, l).
std::vector<double> g_matrix(const MeanProfile& theta, int L);

/// Constrained minimizer of the Theta_{2L} risk: the GLS weight vector for
/// (L, Wratio). Equals the OLS weights at Wratio = 0 and (2, -1) for L = 2.
CoefVector optimal_c(int L, double Wratio);

}  // namespace cpvar
