#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cpvar/circular_series.hpp"
#include "cpvar/mean_profile.hpp"

namespace cpvar {

/// Which estimator produced a value. EVE/MS carry K (K == 0 means
/// data-driven K via tune_K), GLS carries (L, w).
struct EstimatorKind {
  enum class Tag { EVE, MS, GLS, MAD, DK, RICE, ORACLE, SAMPLE_SD };

  Tag tag = Tag::EVE;
  int K = 10;        // EVE/MS; 0 = auto
  int L = 10;        // GLS
  double w = 0.0;    // GLS
  int K_min = 5;     // auto-K search range
  int K_max = 20;

  static EstimatorKind eve(int K) { return {Tag::EVE, K}; }
  static EstimatorKind eve_tuned(int K_min = 5, int K_max = 20) {
    EstimatorKind k{Tag::EVE, 0};
    k.K_min = K_min;
    k.K_max = K_max;
    return k;
  }
  static EstimatorKind ms(int K) { return {Tag::MS, K}; }
  static EstimatorKind gls(int L, double w) {
    EstimatorKind k{Tag::GLS, 0};
    k.L = L;
    k.w = w;
    return k;
  }
  static EstimatorKind mad() { return {Tag::MAD}; }
  static EstimatorKind dk() { return {Tag::DK}; }
  static EstimatorKind rice() { return {Tag::RICE}; }
  static EstimatorKind oracle() { return {Tag::ORACLE}; }
  static EstimatorKind sample_sd() { return {Tag::SAMPLE_SD}; }

  std::string label() const;
};

struct VarianceEstimate {
  double sigma2_hat = 0.0;
  double sigma_hat = 0.0;  // sqrt(max(sigma2_hat, 0))
  EstimatorKind kind;
  std::optional<int> K_used;
};

/// OLS coefficients d with alpha_hat_K = sum_k d_k Y_k; closed form
/// d_k = 2(2K+1-3k)/(K(K-1)). They satisfy sum d_k = 1 and sum k d_k = 0.
std::vector<double> ols_weights(int K);

/// GLS coefficients: argmin of d^T (I + 2w U^T U) d subject to sum d_k = 1,
/// sum k d_k = 0. The (kappa4-1) 1 1^T part of the Y covariance drops under
/// the first constraint, so the weights do not depend on kappa4. At w = 0
/// they reduce to ols_weights(L).
std::vector<double> gls_weights(int L, double w);

/// Equivariant variance estimator: intercept of the OLS fit of Y_k = T_k/(2n)
/// on (1, k), k = 1..K. Unbiased over Theta_L whenever K <= L(theta).
VarianceEstimate eve_ols(const CircularSeries& x, int K);

/// Mueller-Stadtmueller estimator: same weights applied to Y_k = S_k/(2n).
VarianceEstimate ms_ols(const CircularSeries& x, int K);

VarianceEstimate gls(const CircularSeries& x, int L, double w);

/// 1.4826 * med(|X - med(X)|), squared. Median of an even-length list is the
/// midpoint of the two central order statistics.
VarianceEstimate mad(const CircularSeries& x);

/// (1.48/sqrt(2)) * med(|X_{i+1} - X_i|), squared; n-1 non-circular terms.
VarianceEstimate dk(const CircularSeries& x);

/// Rice estimator S_1/(2n). The divisor is 2n even though the sum has n-1
/// terms; its bias is (V(theta)/2 - sigma^2)/n.
VarianceEstimate rice(const CircularSeries& x);

/// Mean squared residual against the true mean vector.
VarianceEstimate oracle(const CircularSeries& x, const MeanProfile& theta);

/// Ordinary sample variance (divisor n-1).
VarianceEstimate sample_sd(const CircularSeries& x);

/// Data-driven K: for each K in [K_min, K_max], fit the line on Y_1..Y_K,
/// predict Y_{K+1}, and score SC(K) = |Yhat_{K+1} - Y_{K+1}| / sigma_e with
/// sigma_e^2 = RSS/(K-2). Returns the argmax; ties broken by smallest K.
/// Requires 3 <= K_min < K_max <= n-2.
int tune_K(const CircularSeries& x, int K_min, int K_max);

/// Same selection rule on a precomputed Y_1..Y_{K_max+1} sequence.
int tune_K_on_stats(const std::vector<double>& y, int K_min, int K_max);

/// SC scores for K = K_min..K_max (diagnostic surface used by the CLI).
std::vector<double> tune_scores(const std::vector<double>& y, int K_min, int K_max);

}  // namespace cpvar
