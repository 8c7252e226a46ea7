#include "cpvar/lag_stats.hpp"

#include <stdexcept>

namespace cpvar {

namespace {

void check_lag(const CircularSeries& x, int k) {
  if (k < 1 || k > x.n() - 1)
    throw std::domain_error("lag k must satisfy 1 <= k <= n-1");
}

}  // namespace

double lag_stat_T(const CircularSeries& x, int k) {
  check_lag(x, k);
  const int n = x.n();
  const auto v = x.values();
  detail::CompensatedSum acc;
  for (int i = 0; i < n; ++i) {
    int j = i + k;
    if (j >= n) j -= n;
    const double d = v[i] - v[j];
    acc.add(d * d);
  }
  return acc.value();
}

double lag_stat_S(const CircularSeries& x, int k) {
  check_lag(x, k);
  const int n = x.n();
  const auto v = x.values();
  detail::CompensatedSum acc;
  for (int i = 0; i + k < n; ++i) {
    const double d = v[i] - v[i + k];
    acc.add(d * d);
  }
  return acc.value();
}

std::vector<double> rescaled_stats(const CircularSeries& x, int K, bool circular) {
  if (K < 1 || K > x.n() - 1)
    throw std::domain_error("K must satisfy 1 <= K <= n-1");
  std::vector<double> y(static_cast<std::size_t>(K));
  const double denom = 2.0 * x.n();
  for (int k = 1; k <= K; ++k)
    y[static_cast<std::size_t>(k - 1)] =
        (circular ? lag_stat_T(x, k) : lag_stat_S(x, k)) / denom;
  return y;
}

}  // namespace cpvar
