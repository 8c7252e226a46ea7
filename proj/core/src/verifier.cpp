#include "cpvar/verifier.hpp"

#include <cmath>
#include <stdexcept>

namespace cpvar {

namespace {

class RowPrefix {
public:
  explicit RowPrefix(const QuadEstimator& a) : n_(a.n()), p_((a.n() + 1) * a.n()) {
    for (int i = 1; i <= n_; ++i) {
      double run = 0;
      at(i, 0) = 0;
      for (int j = 1; j <= n_; ++j) {
        run += a.at(i, j);
        at(i, j) = run;
      }
    }
  }

  // sum_{j in circular interval [start, start+len-1]} a_{ij}
  double row_sum(int i, int start, int len) const {
    const int end = start + len - 1;
    if (end <= n_) return at(i, end) - at(i, start - 1);
    return at(i, n_) - at(i, start - 1) + at(i, end - n_);
  }

private:
  double& at(int i, int j) {
    return p_[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_ + 1) +
              static_cast<std::size_t>(j)];
  }
  double at(int i, int j) const {
    return p_[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_ + 1) +
              static_cast<std::size_t>(j)];
  }

  int n_;
  std::vector<double> p_;
};

int wrap_index(int i, int n) {
  i %= n;
  return i <= 0 ? i + n : i;
}

}  // namespace

double default_verifier_tol(const QuadEstimator& a, double tol) {
  return tol >= 0.0 ? tol : 1e-10 * a.max_abs();
}

bool is_equivariant(const QuadEstimator& a, double tol) {
  const double t = default_verifier_tol(a, tol);
  const int n = a.n();
  for (int i = 1; i <= n; ++i) {
    const int ii = wrap_index(i + 1, n);
    for (int j = 1; j <= n; ++j) {
      const int jj = wrap_index(j + 1, n);
      if (std::abs(a.at(i, j) - a.at(ii, jj)) > t) return false;
    }
  }
  return true;
}

bool is_unbiased_circular(const QuadEstimator& a, int L, double tol) {
  const int n = a.n();
  if (L < 2 || 2 * L > n)
    throw std::domain_error("is_unbiased_circular: 2 <= L <= n/2 required");
  const double t = default_verifier_tol(a, tol);

  if (std::abs(a.trace() - 1.0) > std::max(t * n, 1e-12)) return false;

  const RowPrefix rows(a);
  double total = 0;
  for (int i = 1; i <= n; ++i) total += rows.row_sum(i, 1, n);
  if (std::abs(total) > std::max(t * n, 1e-12)) return false;

  for (int start = 1; start <= n; ++start) {
    double sum = a.at(start, start);
    for (int len = 2; len <= n - L; ++len) {
      const int next = wrap_index(start + len - 1, n);
      sum += 2.0 * rows.row_sum(next, start, len - 1) + a.at(next, next);
      if (len >= L && std::abs(sum) > std::max(t * len, 1e-12)) return false;
    }
  }
  return true;
}

bool is_unbiased_circular(const CirculantQuad& a, int L, double tol) {
  const int n = a.n;
  if (L < 2 || 2 * L > n)
    throw std::domain_error("is_unbiased_circular: 2 <= L <= n/2 required");
  double max_abs = 0;
  for (double v : a.symbol) max_abs = std::max(max_abs, std::abs(v));
  const double t = tol >= 0.0 ? tol : 1e-10 * max_abs;

  if (std::abs(n * a.symbol[0] - 1.0) > std::max(t * n, 1e-12)) return false;

  auto sym = [&](int u) { return a.symbol[static_cast<std::size_t>(std::min(u, n - u))]; };

  double row_total = a.symbol[0];
  for (int u = 1; u <= n - 1; ++u) row_total += sym(u);
  if (std::abs(n * row_total) > std::max(t * n, 1e-12)) return false;

  // interval sum for length len: len*s0 + sum_{u=1..len-1} 2(len-u) sym(u);
  // grow len by one, reusing the partial sum of sym values.
  double sum = a.symbol[0];
  double sym_run = 0;
  for (int len = 2; len <= n - L; ++len) {
    sym_run += sym(len - 1);
    sum += a.symbol[0] + 2.0 * sym_run;
    if (len >= L && std::abs(sum) > std::max(t * len, 1e-12)) return false;
  }
  return true;
}

bool is_in_QL(const std::vector<double>& c, double tol) {
  double s = 0, ks = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    s += c[i];
    ks += static_cast<double>(i + 1) * c[i];
  }
  return std::abs(s - 1.0) <= tol && std::abs(ks) <= tol;
}

namespace {

class Prefix2D {
public:
  explicit Prefix2D(const QuadEstimator& a) : n_(a.n()), p_((a.n() + 1) * (a.n() + 1)) {
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j)
        at(i, j) = a.at(i, j) + at(i - 1, j) + at(i, j - 1) - at(i - 1, j - 1);
  }

  double block(int a, int b, int c, int d) const {  // rows [a,b] x cols [c,d]
    return at(b, d) - at(a - 1, d) - at(b, c - 1) + at(a - 1, c - 1);
  }

private:
  double& at(int i, int j) {
    return p_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_ + 1) +
              static_cast<std::size_t>(j)];
  }
  double at(int i, int j) const {
    return p_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_ + 1) +
              static_cast<std::size_t>(j)];
  }

  int n_;
  std::vector<double> p_;
};

bool classical_enumeration(const QuadEstimator& a, int L, double t) {
  const int n = a.n();
  if (std::abs(a.trace() - 1.0) > std::max(t * n, 1e-12)) return false;
  const Prefix2D p(a);
  for (int lo = 1; lo <= n; ++lo) {
    if (lo != 1 && lo <= L) continue;  // would cut [1..L]
    for (int hi = lo + L - 1; hi <= n; ++hi) {
      if (hi != n && hi > n - L) continue;  // would cut [n-L+1..n]
      const double sum = p.block(lo, hi, lo, hi);
      if (std::abs(sum) > std::max(t * (hi - lo + 1), 1e-12)) return false;
    }
  }
  return true;
}

bool classical_conditions(const QuadEstimator& a, int L, double t) {
  const int n = a.n();
  const double tiny = std::max(t, 1e-12);
  auto near_zero = [&](double v, int terms) {
    return std::abs(v) <= std::max(t * terms, 1e-12);
  };

  // (C1)
  if (std::abs(a.trace() - 1.0) > std::max(t * n, 1e-12)) return false;
  // (C2)
  for (int i = 2 * L + 1; i <= n - L; ++i) {
    double s = 0;
    for (int j = 1; j <= L; ++j) s += a.at(i, j);
    if (!near_zero(s, L)) return false;
  }
  // (C3)
  for (int i = L + 1; i <= n - 2 * L; ++i) {
    double s = 0;
    for (int j = n - L + 1; j <= n; ++j) s += a.at(i, j);
    if (!near_zero(s, L)) return false;
  }
  // (C4)
  {
    double s = 0;
    for (int i = 1; i <= L; ++i)
      for (int j = n - L + 1; j <= n; ++j) s += a.at(i, j);
    if (!near_zero(s, L * L)) return false;
  }
  // (C5)
  for (int i = L + 1; i <= n - L; ++i)
    for (int j = L + 1; j <= n - L; ++j)
      if (std::abs(i - j) > L && std::abs(a.at(i, j)) > tiny) return false;
  // (C6)
  auto block_ok = [&](int i) {
    double s = 0;
    for (int u = i; u <= i + L - 1; ++u)
      for (int v = i; v <= i + L - 1; ++v) s += a.at(u, v);
    return near_zero(s, L * L);
  };
  if (!block_ok(1) || !block_ok(n - L + 1)) return false;
  for (int i = L + 1; i <= n - 2 * L + 1; ++i)
    if (!block_ok(i)) return false;
  // (C7)
  for (int i = L + 1; i <= n - 2 * L; ++i) {
    double s = 0.5 * a.at(i, i);
    for (int j = i + 1; j <= i + L; ++j) s += a.at(i, j);
    if (!near_zero(s, L + 1)) return false;
  }
  // (C8)
  for (int i = n - 2 * L + 1; i <= n - L; ++i) {
    double s = 0.5 * a.at(i, i);
    for (int j = i + 1; j <= n; ++j) s += a.at(i, j);
    if (!near_zero(s, n - i + 1)) return false;
  }
  // (C9)
  for (int i = L + 1; i <= 2 * L; ++i) {
    double s = 0.5 * a.at(i, i);
    for (int j = 1; j <= i - 1; ++j) s += a.at(i, j);
    if (!near_zero(s, i)) return false;
  }
  return true;
}

}  // namespace

ClassicalVerdict is_unbiased_classical(const QuadEstimator& a, int L,
                                       bool require_conditions, double tol) {
  const int n = a.n();
  if (L < 2 || n < 2 * L)
    throw std::domain_error("is_unbiased_classical: 2 <= L <= n/2 required");
  const double t = default_verifier_tol(a, tol);
  ClassicalVerdict v;
  v.by_enumeration = classical_enumeration(a, L, t);
  if (n > 3 * L)
    v.by_conditions = classical_conditions(a, L, t);
  else if (require_conditions)
    throw std::domain_error("is_unbiased_classical: conditions (C1)-(C9) need n > 3L");
  return v;
}

}  // namespace cpvar
