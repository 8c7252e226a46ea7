#pragma once

#include <string>
#include <vector>

namespace cpvar {

/// Dense symmetric n x n coefficient matrix of a quadratic estimator
/// sigma2_hat = X^T A X. Symmetrized on construction; intended for n up to
/// a few hundred (the compressed CirculantQuad covers larger circulant A).
class QuadEstimator {
public:
  QuadEstimator(int n, std::vector<double> dense_row_major);

  static QuadEstimator zero(int n);

  /// A_k = (1/n)(I - C_k/2 - C_k^T/2); Y_k = X^T A_k X.
  static QuadEstimator basis_matrix(int n, int k);

  /// sum_k c_k A_k, the quadratic form of the estimator sum_k c_k Y_k.
  static QuadEstimator from_coefficients(int n, const std::vector<double>& c);

  /// EVE matrix: from_coefficients with the closed-form OLS weights.
  static QuadEstimator eve_matrix(int n, int K);

  /// MS matrix, normalized so tr A = 1: circulant EVE pattern with the
  /// wrap-around entries removed and the first/last K diagonal entries
  /// adjusted to (1, 1+d_1, ..., 1+d_1+...+d_{K-1})/(2n) and its mirror.
  static QuadEstimator ms_matrix(int n, int K);

  static QuadEstimator identity_over_n(int n);

  int n() const { return n_; }
  double at(int i, int j) const {  // 1-based
    return a_[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_) +
              static_cast<std::size_t>(j - 1)];
  }
  double& at(int i, int j) {
    return a_[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_) +
              static_cast<std::size_t>(j - 1)];
  }
  const std::vector<double>& data() const { return a_; }

  double trace() const;
  double max_abs() const;

  /// X^T A X for a data vector of length n.
  double apply(const std::vector<double>& x) const;

  void symmetrize();

private:
  int n_;
  std::vector<double> a_;
};

/// Circulant quadratic form stored by its symbol: s[d] is the entry at
/// circular distance d, d = 0..floor(n/2). Accepted in place of the dense
/// form for large n.
struct CirculantQuad {
  int n = 0;
  std::vector<double> symbol;

  static CirculantQuad from_coefficients(int n, const std::vector<double>& c);
  QuadEstimator dense() const;
};

QuadEstimator read_matrix_csv(const std::string& path);
void write_matrix_csv(const std::string& path, const QuadEstimator& a);

}  // namespace cpvar
