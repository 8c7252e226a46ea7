#pragma once

#include <cmath>
#include <vector>

#include "cpvar/circular_series.hpp"

namespace cpvar {

/// T_k: circular sum of squared lag-k differences, sum_{i=1..n} (x_i - x_{i+k})^2.
/// Requires 1 <= k <= n-1. Invariant under rotation of x.
double lag_stat_T(const CircularSeries& x, int k);

/// S_k: linear sum over i = 1..n-k only; T_k minus the k wrap-around terms.
double lag_stat_S(const CircularSeries& x, int k);

/// (Y_1,...,Y_K) with Y_k = T_k/(2n) when circular, else S_k/(2n).
/// Computed in a single O(nK) pass with compensated accumulation.
std::vector<double> rescaled_stats(const CircularSeries& x, int K, bool circular);

namespace detail {

/// Neumaier-compensated accumulator; keeps lag sums accurate for n >= 1e5.
class CompensatedSum {
public:
  void add(double v) {
    double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace detail
}  // namespace cpvar
