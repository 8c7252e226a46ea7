#pragma once

#include <optional>
#include <vector>

#include "cpvar/quad_estimator.hpp"

namespace cpvar {

/// Negative tol means the default 1e-10 * max|a_ij|. Pass 0 for exact
/// comparison of matrices built from identical closed-form entries.
double default_verifier_tol(const QuadEstimator& a, double tol);

/// Equivariance of X^T A X under cyclic rotation is equivalent to A being
/// circulant: max_{i,j} |a_{ij} - a_{(i+1)(j+1)}| <= tol with circular
/// index arithmetic.
bool is_equivariant(const QuadEstimator& a, double tol = -1.0);

/// Unbiasedness over Theta_L: tr A = 1 and the entry sum over every circular
/// interval Lambda with L <= |Lambda| <= n-L or |Lambda| = n vanishes.
/// All O(n^2) interval sums are formed incrementally from row prefix sums;
/// each sum is compared against tol * |Lambda|.
bool is_unbiased_circular(const QuadEstimator& a, int L, double tol = -1.0);

/// Compressed-circulant variant: interval sums depend only on the interval
/// length, so the check is O(n).
bool is_unbiased_circular(const CirculantQuad& a, int L, double tol = -1.0);

/// Q_L membership: sum c_k = 1 and sum k c_k = 0 within tol.
bool is_in_QL(const std::vector<double>& c, double tol = 1e-10);

struct ClassicalVerdict {
  bool by_enumeration = false;
  /// The nine minimal conditions; only defined when n > 3L.
  std::optional<bool> by_conditions;
};

/// Unbiasedness over the classical class Theta_L^c (index n a forced
/// boundary). by_enumeration checks tr A = 1 plus zero entry sums over all
/// linear intervals I with |I| >= L that contain [1..L] entirely or miss it,
/// and likewise for [n-L+1..n]. by_conditions evaluates the nine printed
/// conditions; requesting it with n <= 3L is a domain error
/// (require_conditions), otherwise it is simply left empty.
ClassicalVerdict is_unbiased_classical(const QuadEstimator& a, int L,
                                       bool require_conditions = false,
                                       double tol = -1.0);

}  // namespace cpvar
