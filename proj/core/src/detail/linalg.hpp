#pragma once

// Small dense solvers for the low-dimensional systems in this library
// (GLS weight vectors, 2x2 normal equations, verifier helpers). Row-major
// storage in flat vectors; sizes stay in the tens, so no blocking.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cpvar::detail {

/// In-place lower Cholesky factor of a symmetric positive definite matrix.
inline std::vector<double> cholesky(std::vector<double> a, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 0.0)) throw std::logic_error("cholesky: matrix not positive definite");
    const double l = std::sqrt(d);
    a[j * n + j] = l;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / l;
    }
  }
  return a;
}

inline std::vector<double> cholesky_solve(const std::vector<double>& chol, std::size_t n,
                                          std::vector<double> b) {
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= chol[i * n + k] * b[k];
    b[i] = s / chol[i * n + i];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= chol[k * n + ii] * b[k];
    b[ii] = s / chol[ii * n + ii];
  }
  return b;
}

/// Gaussian elimination with partial pivoting; a is n x n, b length n.
inline std::vector<double> lu_solve(std::vector<double> a, std::vector<double> b,
                                    std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (a[piv * n + col] == 0.0) throw std::logic_error("lu_solve: singular matrix");
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    const double inv = 1.0 / a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] * inv;
      if (f == 0.0) continue;
      a[r * n + col] = 0.0;
      for (std::size_t c = col + 1; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t c = ii + 1; c < n; ++c) s -= a[ii * n + c] * b[c];
    b[ii] = s / a[ii * n + ii];
  }
  return b;
}

}  // namespace cpvar::detail
