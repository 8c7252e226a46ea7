#pragma once

#include <iosfwd>
#include <vector>

namespace cpvar {

/// (D_0, ..., D_L) by the recursion D_k = (2 + lambda) D_{k-1} - D_{k-2},
/// D_0 = 1, D_1 = 1 + lambda. D_k is det(I_k + lambda U_k^T U_k), so every
/// term is positive for lambda >= 0.
std::vector<double> d_sequence(double lambda, int L);

/// Worst-case GLS risk g_L(lambda) = kappa4 - 1 + V_{L,lambda}^{-1}[1,1]
/// with V built from the D ratios. At lambda = 0 the analytic limit
/// kappa4 - 1 + (4L+2)/(L(L-1)) is returned directly.
double g_L(int L, double lambda, double kappa4);

namespace detail {
/// Rational evaluation of g_L without the lambda >= 0 guard; the function
/// extends analytically to a neighborhood of 0, which the derivative probes
/// in the tests rely on.
double g_L_unchecked(int L, double lambda, double kappa4);
}  // namespace detail

/// Minimax risk bracket over Theta_{L,w}: g_L(2w) <= r_{L,w} <= g_L(4w),
/// plus the OLS upper bound kappa4-1+(4L+2)/(L(L-1)) + (L+1)(L+2)^2/(3L(L-1)) w.
struct MinimaxBounds {
  double lower = 0.0;
  double upper_ols = 0.0;
  double upper_gls = 0.0;
  double upper() const { return upper_ols < upper_gls ? upper_ols : upper_gls; }
};

MinimaxBounds minimax_bounds(int L, double w, double kappa4);

/// Bound curves on a uniform w-grid, as CSV rows (L, w, lower, upper_ols,
/// upper_gls) with full double precision.
void write_bound_curves(std::ostream& out, const std::vector<int>& Ls, double w_max,
                        int steps, double kappa4);

}  // namespace cpvar
