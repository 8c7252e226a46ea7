#include "cpvar/quad_estimator.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cpvar/estimators.hpp"

namespace cpvar {

QuadEstimator::QuadEstimator(int n, std::vector<double> dense_row_major)
    : n_(n), a_(std::move(dense_row_major)) {
  if (n < 1 || a_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw std::invalid_argument("QuadEstimator: size mismatch");
  symmetrize();
}

QuadEstimator QuadEstimator::zero(int n) {
  return QuadEstimator(n, std::vector<double>(static_cast<std::size_t>(n) *
                                              static_cast<std::size_t>(n)));
}

void QuadEstimator::symmetrize() {
  for (int i = 1; i <= n_; ++i)
    for (int j = i + 1; j <= n_; ++j) {
      const double v = 0.5 * (at(i, j) + at(j, i));
      at(i, j) = v;
      at(j, i) = v;
    }
}

QuadEstimator QuadEstimator::basis_matrix(int n, int k) {
  if (k < 1 || k > n - 1) throw std::domain_error("basis_matrix: 1 <= k <= n-1");
  auto a = zero(n);
  const double diag = 1.0 / n;
  const double off = -0.5 / n;
  for (int i = 1; i <= n; ++i) {
    a.at(i, i) += diag;
    int j1 = i + k <= n ? i + k : i + k - n;
    int j2 = i - k >= 1 ? i - k : i - k + n;
    a.at(i, j1) += off;   // C_k
    a.at(i, j2) += off;   // C_k^T
  }
  return a;
}

QuadEstimator QuadEstimator::from_coefficients(int n, const std::vector<double>& c) {
  auto a = zero(n);
  for (int k = 1; k <= static_cast<int>(c.size()); ++k) {
    const auto b = basis_matrix(n, k);
    const double ck = c[static_cast<std::size_t>(k - 1)];
    for (std::size_t t = 0; t < a.a_.size(); ++t) a.a_[t] += ck * b.a_[t];
  }
  return a;
}

QuadEstimator QuadEstimator::eve_matrix(int n, int K) {
  return from_coefficients(n, ols_weights(K));
}

QuadEstimator QuadEstimator::ms_matrix(int n, int K) {
  if (K < 2 || 2 * K > n) throw std::domain_error("ms_matrix: 2 <= K <= n/2 required");
  const auto d = ols_weights(K);
  auto a = zero(n);
  const double scale = 1.0 / (2.0 * n);
  // off-diagonal: -d_k at |i-j| = k, no wrap
  for (int k = 1; k <= K; ++k)
    for (int i = 1; i + k <= n; ++i) {
      a.at(i, i + k) = -d[static_cast<std::size_t>(k - 1)] * scale;
      a.at(i + k, i) = -d[static_cast<std::size_t>(k - 1)] * scale;
    }
  // diagonal: entry i counts how many S_k sums contain X_i^2
  std::vector<double> head(static_cast<std::size_t>(K));
  double run = 1.0;
  for (int i = 0; i < K; ++i) {
    head[static_cast<std::size_t>(i)] = run;  // 1, 1+d_1, ..., 1+d_1+...+d_{K-1}
    run += d[static_cast<std::size_t>(i)];
  }
  for (int i = 1; i <= n; ++i) {
    double v = 2.0;
    if (i <= K) v = head[static_cast<std::size_t>(i - 1)];
    if (i > n - K) v = head[static_cast<std::size_t>(n - i)];
    a.at(i, i) = v * scale;
  }
  return a;
}

QuadEstimator QuadEstimator::identity_over_n(int n) {
  auto a = zero(n);
  for (int i = 1; i <= n; ++i) a.at(i, i) = 1.0 / n;
  return a;
}

double QuadEstimator::trace() const {
  double t = 0;
  for (int i = 1; i <= n_; ++i) t += at(i, i);
  return t;
}

double QuadEstimator::max_abs() const {
  double m = 0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

double QuadEstimator::apply(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("QuadEstimator::apply: length mismatch");
  double total = 0;
  for (int i = 0; i < n_; ++i) {
    double row = 0;
    const double* ai = a_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n_);
    for (int j = 0; j < n_; ++j) row += ai[j] * x[static_cast<std::size_t>(j)];
    total += x[static_cast<std::size_t>(i)] * row;
  }
  return total;
}

CirculantQuad CirculantQuad::from_coefficients(int n, const std::vector<double>& c) {
  CirculantQuad q;
  q.n = n;
  q.symbol.assign(static_cast<std::size_t>(n / 2 + 1), 0.0);
  double s0 = 0;
  for (double ck : c) s0 += ck;
  q.symbol[0] = s0 / n;
  for (int k = 1; k <= static_cast<int>(c.size()); ++k) {
    const double ck = c[static_cast<std::size_t>(k - 1)];
    if (2 * k == n)
      q.symbol[static_cast<std::size_t>(k)] += -ck / n;  // C_k == C_k^T at lag n/2
    else if (k < n)
      q.symbol[static_cast<std::size_t>(std::min(k, n - k))] += -0.5 * ck / n;
  }
  return q;
}

QuadEstimator CirculantQuad::dense() const {
  auto a = QuadEstimator::zero(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      int d = std::abs(i - j);
      d = std::min(d, n - d);
      a.at(i, j) = symbol[static_cast<std::size_t>(d)];
    }
  return a;
}

QuadEstimator read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open csv file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::runtime_error("matrix csv parse error in " + path);
      }
    }
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  std::vector<double> a;
  a.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n)
      throw std::runtime_error("matrix csv is not square: " + path);
    a.insert(a.end(), row.begin(), row.end());
  }
  return QuadEstimator(n, std::move(a));
}

void write_matrix_csv(const std::string& path, const QuadEstimator& a) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write csv file: " + path);
  char buf[40];
  for (int i = 1; i <= a.n(); ++i) {
    for (int j = 1; j <= a.n(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", a.at(i, j));
      out << buf << (j == a.n() ? "\n" : ",");
    }
  }
}

}  // namespace cpvar
