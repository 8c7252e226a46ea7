#pragma once

#include <stdexcept>

namespace cpvar {

/// Moment summary of the i.i.d. noise: variance, standardized fourth moment
/// kappa4 = E(eps^4)/sigma^4, and whether E(eps^3) = 0 (several S_k formulas
/// and the general quadratic-form variance need the vanishing third moment).
struct NoiseMoments {
  double sigma2 = 1.0;
  double kappa4 = 3.0;
  bool third_moment_zero = true;

  NoiseMoments() = default;
  NoiseMoments(double sigma2_, double kappa4_, bool third_moment_zero_ = true)
      : sigma2(sigma2_), kappa4(kappa4_), third_moment_zero(third_moment_zero_) {
    if (!(sigma2 > 0.0)) throw std::domain_error("NoiseMoments: sigma2 must be > 0");
    if (kappa4 < 1.0) throw std::domain_error("NoiseMoments: kappa4 must be >= 1");
  }
};

}  // namespace cpvar
