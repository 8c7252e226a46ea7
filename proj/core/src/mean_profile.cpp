#include "cpvar/mean_profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cpvar {

namespace {

void check_theta(const std::vector<double>& theta) {
  if (theta.size() < 2) throw std::invalid_argument("MeanProfile: need n >= 2");
  for (double v : theta)
    if (!std::isfinite(v)) throw std::invalid_argument("MeanProfile: non-finite level");
}

}  // namespace

MeanProfile MeanProfile::from_vector_circular(const std::vector<double>& theta) {
  check_theta(theta);
  const int n = static_cast<int>(theta.size());
  MeanProfile p;
  p.n_ = n;
  p.circular_ = true;

  bool constant = true;
  for (int i = 1; i < n; ++i)
    if (theta[static_cast<std::size_t>(i)] != theta[0]) {
      constant = false;
      break;
    }
  if (constant) {
    p.segments_ = {Segment{1, theta[0]}};
    return p;
  }

  // Run starts are positions where the value differs from the circular
  // predecessor; the run containing index 1 may start near n.
  for (int i = 1; i <= n; ++i) {
    const double cur = theta[static_cast<std::size_t>(i - 1)];
    const double prev = theta[static_cast<std::size_t>((i - 2 + n) % n)];
    if (cur != prev) p.segments_.push_back(Segment{i, cur});
  }
  return p;
}

MeanProfile MeanProfile::from_vector_classical(const std::vector<double>& theta) {
  check_theta(theta);
  const int n = static_cast<int>(theta.size());
  MeanProfile p;
  p.n_ = n;
  p.circular_ = false;
  p.segments_.push_back(Segment{1, theta[0]});
  for (int i = 2; i <= n; ++i) {
    const double cur = theta[static_cast<std::size_t>(i - 1)];
    const double prev = theta[static_cast<std::size_t>(i - 2)];
    if (cur != prev) p.segments_.push_back(Segment{i, cur});
  }
  return p;
}

MeanProfile MeanProfile::constant(int n, double level) {
  return from_vector_circular(std::vector<double>(static_cast<std::size_t>(n), level));
}

MeanProfile MeanProfile::alternating_blocks(int n, int block, double hi, double lo) {
  if (block < 1 || n % block != 0 || (n / block) % 2 != 0)
    throw std::invalid_argument("alternating_blocks: n must be an even multiple of block");
  if (hi == lo) throw std::invalid_argument("alternating_blocks: levels must differ");
  std::vector<double> theta(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    theta[static_cast<std::size_t>(i)] = ((i / block) % 2 == 0) ? hi : lo;
  return from_vector_circular(theta);
}

int MeanProfile::J() const {
  if (circular_ && segments_.size() == 1) return 0;
  return static_cast<int>(segments_.size());
}

int MeanProfile::L() const {
  const int m = static_cast<int>(segments_.size());
  if (m == 1) return n_;
  int best = n_;
  for (int j = 0; j < m; ++j) {
    const int start = segments_[static_cast<std::size_t>(j)].start;
    const int next = (j + 1 < m) ? segments_[static_cast<std::size_t>(j + 1)].start
                                 : segments_[0].start + n_;
    best = std::min(best, next - start);
  }
  return best;
}

double MeanProfile::W() const {
  const int m = static_cast<int>(segments_.size());
  if (m == 1) return 0.0;
  double w = 0.0;
  for (int j = 0; j < m; ++j) {
    const double d = segments_[static_cast<std::size_t>(j)].level -
                     segments_[static_cast<std::size_t>((j + 1) % m)].level;
    w += d * d;
  }
  return w;
}

double MeanProfile::V() const {
  const double d = at(n_) - at(1);
  return W() - d * d;
}

double MeanProfile::at(long long i) const {
  long long r = (i - 1) % n_;
  if (r < 0) r += n_;
  const int pos = static_cast<int>(r) + 1;
  // Segments are sorted by start; the run containing index 1 may wrap, in
  // which case positions before the first start belong to the last segment.
  const int m = static_cast<int>(segments_.size());
  int lo = 0, hi = m - 1, ans = -1;
  while (lo <= hi) {
    const int mid = (lo + hi) / 2;
    if (segments_[static_cast<std::size_t>(mid)].start <= pos) {
      ans = mid;
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  if (ans < 0) ans = m - 1;  // wrapped run
  return segments_[static_cast<std::size_t>(ans)].level;
}

std::vector<double> MeanProfile::theta() const {
  std::vector<double> out(static_cast<std::size_t>(n_));
  for (int i = 1; i <= n_; ++i) out[static_cast<std::size_t>(i - 1)] = at(i);
  return out;
}

}  // namespace cpvar
