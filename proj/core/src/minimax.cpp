#include "cpvar/minimax.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace cpvar {

std::vector<double> d_sequence(double lambda, int L) {
  if (lambda < 0.0) throw std::domain_error("d_sequence: lambda >= 0 required");
  if (L < 1) throw std::domain_error("d_sequence: L >= 1 required");
  std::vector<double> d(static_cast<std::size_t>(L + 1));
  d[0] = 1.0;
  d[1] = 1.0 + lambda;
  for (int k = 2; k <= L; ++k)
    d[static_cast<std::size_t>(k)] = (2.0 + lambda) * d[static_cast<std::size_t>(k - 1)] -
                                     d[static_cast<std::size_t>(k - 2)];
  return d;
}

namespace detail {

namespace {

// ascending-order coefficients of D_k(lambda); integer-valued
std::vector<double> d_polynomial(int k) {
  std::vector<double> prev{1.0};       // D_0
  std::vector<double> cur{1.0, 1.0};   // D_1
  if (k == 0) return prev;
  for (int t = 2; t <= k; ++t) {
    std::vector<double> next(static_cast<std::size_t>(t + 1), 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      next[i] += 2.0 * cur[i];
      next[i + 1] += cur[i];
    }
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double poly_eval(const std::vector<double>& p, double x) {
  double v = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

}  // namespace

double g_L_unchecked(int L, double lambda, double kappa4) {
  if (lambda == 0.0)
    return kappa4 - 1.0 + (4.0 * L + 2.0) / (static_cast<double>(L) * (L - 1.0));

  // The V entries are ratios of polynomials whose low-order terms cancel
  // exactly; dividing out lambda at the coefficient level keeps them stable
  // near 0 where the printed forms would divide tiny inexact differences
  // by lambda^2.
  const auto dl = d_polynomial(L);
  const auto dm = d_polynomial(L - 1);

  // v11 numerator: (D_L - D_{L-1}) / lambda
  std::vector<double> n11(dl.size() - 1);
  for (std::size_t i = 1; i < dl.size(); ++i)
    n11[i - 1] = dl[i] - (i < dm.size() ? dm[i] : 0.0);

  // v12 numerator: (D_L - 1) / lambda
  std::vector<double> n12(dl.size() - 1);
  for (std::size_t i = 1; i < dl.size(); ++i) n12[i - 1] = dl[i];

  // v22 numerator: (D_{L-1} - D_L + lambda L D_L) / lambda^2; the constant
  // and linear coefficients vanish identically
  std::vector<double> n22(dl.size() - 1, 0.0);
  for (std::size_t i = 2; i <= dl.size(); ++i) {
    double coef = (i < dm.size() ? dm[i] : 0.0) - (i < dl.size() ? dl[i] : 0.0) +
                  static_cast<double>(L) * dl[i - 1];
    n22[i - 2] = coef;
  }

  const double den = poly_eval(dl, lambda);
  const double v11 = poly_eval(n11, lambda) / den;
  const double v12 = poly_eval(n12, lambda) / den;
  const double v22 = poly_eval(n22, lambda) / den;
  const double det = v11 * v22 - v12 * v12;
  return kappa4 - 1.0 + v22 / det;
}

}  // namespace detail

double g_L(int L, double lambda, double kappa4) {
  if (L < 2) throw std::domain_error("g_L: L >= 2 required");
  if (lambda < 0.0) throw std::domain_error("g_L: lambda >= 0 required");
  return detail::g_L_unchecked(L, lambda, kappa4);
}

MinimaxBounds minimax_bounds(int L, double w, double kappa4) {
  if (L < 2) throw std::domain_error("minimax_bounds: L >= 2 required");
  if (w < 0.0) throw std::domain_error("minimax_bounds: w >= 0 required");
  const double Ld = L;
  MinimaxBounds b;
  b.lower = g_L(L, 2.0 * w, kappa4);
  b.upper_ols = kappa4 - 1.0 + (4.0 * Ld + 2.0) / (Ld * (Ld - 1.0)) +
                (Ld + 1.0) * (Ld + 2.0) * (Ld + 2.0) / (3.0 * Ld * (Ld - 1.0)) * w;
  b.upper_gls = g_L(L, 4.0 * w, kappa4);
  return b;
}

void write_bound_curves(std::ostream& out, const std::vector<int>& Ls, double w_max,
                        int steps, double kappa4) {
  if (steps < 1) throw std::domain_error("write_bound_curves: steps >= 1 required");
  if (w_max < 0.0) throw std::domain_error("write_bound_curves: w_max >= 0 required");
  out << "L,w,lower,upper_ols,upper_gls\n";
  char buf[160];
  for (int L : Ls) {
    for (int s = 0; s <= steps; ++s) {
      const double w = w_max * s / steps;
      const auto b = minimax_bounds(L, w, kappa4);
      std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g\n", L, w, b.lower,
                    b.upper_ols, b.upper_gls);
      out << buf;
    }
  }
}

}  // namespace cpvar
