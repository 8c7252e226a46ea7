#include "cpvar/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "cpvar/lag_stats.hpp"
#include "detail/linalg.hpp"

namespace cpvar {

namespace {

constexpr double kMadConstant = 1.4826;
const double kDkConstant = 1.48 / std::sqrt(2.0);

double median_inplace(std::vector<double>& v) {
  const std::size_t n = v.size();
  const std::size_t mid = n / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double hi = v[mid];
  if (n % 2 == 1) return hi;
  double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

VarianceEstimate make_estimate(double sigma2, EstimatorKind kind,
                               std::optional<int> K_used = std::nullopt) {
  VarianceEstimate e;
  e.sigma2_hat = sigma2;
  e.sigma_hat = std::sqrt(std::max(sigma2, 0.0));
  e.kind = kind;
  e.K_used = K_used;
  return e;
}

double weighted_stat_sum(const CircularSeries& x, const std::vector<double>& d,
                         bool circular) {
  const int K = static_cast<int>(d.size());
  detail::CompensatedSum acc;
  const double denom = 2.0 * x.n();
  for (int k = 1; k <= K; ++k) {
    const double yk = (circular ? lag_stat_T(x, k) : lag_stat_S(x, k)) / denom;
    acc.add(d[static_cast<std::size_t>(k - 1)] * yk);
  }
  return acc.value();
}

}  // namespace

std::string EstimatorKind::label() const {
  switch (tag) {
    case Tag::EVE:
      return K == 0 ? "EVE" : "EVE(K=" + std::to_string(K) + ")";
    case Tag::MS:
      return "MS(K=" + std::to_string(K) + ")";
    case Tag::GLS: {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "GLS(L=%d;w=%g)", L, w);
      return buf;
    }
    case Tag::MAD:
      return "MAD";
    case Tag::DK:
      return "DK";
    case Tag::RICE:
      return "Rice";
    case Tag::ORACLE:
      return "Oracle";
    case Tag::SAMPLE_SD:
      return "SD";
  }
  return "?";
}

std::vector<double> ols_weights(int K) {
  if (K < 2) throw std::domain_error("ols_weights: K >= 2 required (slope unidentifiable)");
  std::vector<double> d(static_cast<std::size_t>(K));
  const double denom = static_cast<double>(K) * (K - 1);
  for (int k = 1; k <= K; ++k)
    d[static_cast<std::size_t>(k - 1)] = 2.0 * (2 * K + 1 - 3 * k) / denom;
  return d;
}

std::vector<double> gls_weights(int L, double w) {
  if (L < 2) throw std::domain_error("gls_weights: L >= 2 required");
  if (w < 0.0) throw std::domain_error("gls_weights: w >= 0 required");
  if (w == 0.0) return ols_weights(L);

  // Q = I + 2w U^T U with (U^T U)_{ij} = min(i, j); solve the constrained
  // quadratic program through Q^{-1} Z (Z^T Q^{-1} Z)^{-1} (1,0)^T.
  const std::size_t m = static_cast<std::size_t>(L);
  std::vector<double> Q(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      Q[i * m + j] = (i == j ? 1.0 : 0.0) + 2.0 * w * static_cast<double>(std::min(i, j) + 1);

  std::vector<double> z0(m, 1.0), z1(m);
  for (std::size_t i = 0; i < m; ++i) z1[i] = static_cast<double>(i + 1);

  auto chol = detail::cholesky(Q, m);
  auto x0 = detail::cholesky_solve(chol, m, z0);
  auto x1 = detail::cholesky_solve(chol, m, z1);

  double a = 0, b = 0, c = 0;  // Z^T Q^{-1} Z = [[a, b], [b, c]]
  for (std::size_t i = 0; i < m; ++i) {
    a += z0[i] * x0[i];
    b += z0[i] * x1[i];
    c += z1[i] * x1[i];
  }
  const double det = a * c - b * b;
  if (!(det > 0.0)) throw std::logic_error("gls_weights: singular normal equations");
  // first column of (Z^T Q^{-1} Z)^{-1}
  const double y0 = c / det, y1 = -b / det;

  std::vector<double> d(m);
  for (std::size_t i = 0; i < m; ++i) d[i] = x0[i] * y0 + x1[i] * y1;
  return d;
}

VarianceEstimate eve_ols(const CircularSeries& x, int K) {
  if (K < 2 || K > x.n() - 1)
    throw std::domain_error("eve_ols: 2 <= K <= n-1 required");
  const auto d = ols_weights(K);
  return make_estimate(weighted_stat_sum(x, d, true), EstimatorKind::eve(K), K);
}

VarianceEstimate ms_ols(const CircularSeries& x, int K) {
  if (K < 2 || K > x.n() - 1)
    throw std::domain_error("ms_ols: 2 <= K <= n-1 required");
  const auto d = ols_weights(K);
  return make_estimate(weighted_stat_sum(x, d, false), EstimatorKind::ms(K), K);
}

VarianceEstimate gls(const CircularSeries& x, int L, double w) {
  if (L < 2 || L > x.n() - 1)
    throw std::domain_error("gls: 2 <= L <= n-1 required");
  const auto d = gls_weights(L, w);
  return make_estimate(weighted_stat_sum(x, d, true), EstimatorKind::gls(L, w), L);
}

VarianceEstimate mad(const CircularSeries& x) {
  std::vector<double> v(x.values().begin(), x.values().end());
  const double med = median_inplace(v);
  for (double& t : v) t = std::abs(t - med);
  const double s = kMadConstant * median_inplace(v);
  return make_estimate(s * s, EstimatorKind::mad());
}

VarianceEstimate dk(const CircularSeries& x) {
  const auto v = x.values();
  std::vector<double> diffs(v.size() - 1);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) diffs[i] = std::abs(v[i + 1] - v[i]);
  const double s = kDkConstant * median_inplace(diffs);
  return make_estimate(s * s, EstimatorKind::dk());
}

VarianceEstimate rice(const CircularSeries& x) {
  return make_estimate(lag_stat_S(x, 1) / (2.0 * x.n()), EstimatorKind::rice());
}

VarianceEstimate oracle(const CircularSeries& x, const MeanProfile& theta) {
  if (theta.n() != x.n()) throw std::domain_error("oracle: theta.n must equal x.n");
  const auto v = x.values();
  detail::CompensatedSum acc;
  for (int i = 1; i <= x.n(); ++i) {
    const double r = v[static_cast<std::size_t>(i - 1)] - theta.at(i);
    acc.add(r * r);
  }
  return make_estimate(acc.value() / x.n(), EstimatorKind::oracle());
}

VarianceEstimate sample_sd(const CircularSeries& x) {
  const auto v = x.values();
  detail::CompensatedSum mean_acc;
  for (double t : v) mean_acc.add(t);
  const double mean = mean_acc.value() / static_cast<double>(v.size());
  detail::CompensatedSum ss;
  for (double t : v) ss.add((t - mean) * (t - mean));
  return make_estimate(ss.value() / (static_cast<double>(v.size()) - 1.0),
                       EstimatorKind::sample_sd());
}

std::vector<double> tune_scores(const std::vector<double>& y, int K_min, int K_max) {
  if (K_min < 3) throw std::domain_error("tune_K: K_min >= 3 required (RSS df = K-2)");
  if (K_min >= K_max) throw std::domain_error("tune_K: K_min < K_max required");
  if (static_cast<int>(y.size()) < K_max + 1)
    throw std::domain_error("tune_K: need Y_1..Y_{K_max+1}");

  std::vector<double> sc(static_cast<std::size_t>(K_max - K_min + 1));
  for (int K = K_min; K <= K_max; ++K) {
    // closed-form simple regression of y_k on k over k = 1..K
    double sy = 0, sky = 0;
    for (int k = 1; k <= K; ++k) {
      const double yk = y[static_cast<std::size_t>(k - 1)];
      sy += yk;
      sky += k * yk;
    }
    const double kbar = 0.5 * (K + 1);
    const double sxx = K * (static_cast<double>(K) * K - 1.0) / 12.0;
    const double beta = (sky - kbar * sy) / sxx;
    const double alpha = sy / K - beta * kbar;
    double rss = 0;
    for (int k = 1; k <= K; ++k) {
      const double r = y[static_cast<std::size_t>(k - 1)] - alpha - beta * k;
      rss += r * r;
    }
    const double sigma_e = std::sqrt(std::max(rss, 0.0) / (K - 2));
    const double num = std::abs(alpha + beta * (K + 1) - y[static_cast<std::size_t>(K)]);
    double score;
    if (sigma_e <= 1e-12)
      score = (num <= 1e-12) ? 0.0 : std::numeric_limits<double>::infinity();
    else
      score = num / sigma_e;
    sc[static_cast<std::size_t>(K - K_min)] = score;
  }
  return sc;
}

int tune_K_on_stats(const std::vector<double>& y, int K_min, int K_max) {
  const auto sc = tune_scores(y, K_min, K_max);
  int best = K_min;
  double best_score = sc[0];
  for (int K = K_min + 1; K <= K_max; ++K) {
    const double s = sc[static_cast<std::size_t>(K - K_min)];
    if (s > best_score) {
      best_score = s;
      best = K;
    }
  }
  return best;
}

int tune_K(const CircularSeries& x, int K_min, int K_max) {
  if (K_max > x.n() - 2) throw std::domain_error("tune_K: K_max <= n-2 required");
  const auto y = rescaled_stats(x, K_max + 1, true);
  return tune_K_on_stats(y, K_min, K_max);
}

}  // namespace cpvar
