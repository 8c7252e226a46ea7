#pragma once

#include <vector>

namespace cpvar {

struct Segment {
  int start;     // 1-based index of the first entry of the run (tau_j + 1)
  double level;  // mu_j
};

/// A piecewise-constant mean vector represented as runs of constant value.
///
/// Two index geometries are supported. In the circular geometry runs are
/// merged across the n -> 1 seam, so a constant vector is a single run and
/// J() == 0. In the classical geometry index n is a forced boundary
/// (tau_J = n): the first run starts at 1 and the last ends at n even when
/// theta_1 == theta_n.
class MeanProfile {
public:
  /// Derives segments from a raw vector, merging equal adjacent values
  /// circularly (including across the seam).
  static MeanProfile from_vector_circular(const std::vector<double>& theta);

  /// Derives segments treating index n as a known change point.
  static MeanProfile from_vector_classical(const std::vector<double>& theta);

  /// Constant vector of length n.
  static MeanProfile constant(int n, double level = 0.0);

  /// Blocks of length `block` with levels alternating hi, lo, hi, ...
  /// n must be an even multiple of block.
  static MeanProfile alternating_blocks(int n, int block, double hi, double lo);

  int n() const { return n_; }
  bool circular() const { return circular_; }
  const std::vector<Segment>& segments() const { return segments_; }

  /// Number of change points: 0 for a constant circular profile, otherwise
  /// the number of runs (classical profiles count tau_J = n).
  int J() const;

  /// Minimal run length. Equals n iff the profile is a constant circular
  /// vector; otherwise at most n/2 in the circular geometry.
  int L() const;

  /// W(theta) = sum_{i=1..n} (theta_i - theta_{i+1})^2, indices circular.
  double W() const;

  /// V(theta) = W(theta) - (theta_n - theta_1)^2, the linear total variation.
  double V() const;

  double at(long long i) const;  // 1-based, circular
  std::vector<double> theta() const;

private:
  MeanProfile() = default;

  int n_ = 0;
  bool circular_ = true;
  std::vector<Segment> segments_;  // sorted by start; first may not cover 1 (wrap)
};

}  // namespace cpvar
