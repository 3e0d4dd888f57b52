#include "lclogit/coding.hpp"

#include <cmath>
#include <string>

#include "lclogit/common.hpp"

namespace lclogit {

namespace {

double poly_eval(const Eigen::VectorXd& coeffs, double t) {
  double acc = 0.0;
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
    acc = acc * t + coeffs[k];
  }
  return acc;
}

double poly_eval_derivative(const Eigen::VectorXd& coeffs, double t) {
  double acc = 0.0;
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 1; --k) {
    acc = acc * t + coeffs[k] * k;
  }
  return acc;
}

}  // namespace

PolyCoding::PolyCoding(std::vector<double> levels, int max_degree)
    : levels_(std::move(levels)), max_degree_(max_degree) {
  const int n = static_cast<int>(levels_.size());
  if (n == 0) throw Error("polynomial coding: empty level set");
  for (int i = 1; i < n; ++i) {
    if (!(levels_[i] > levels_[i - 1])) {
      throw Error("polynomial coding: levels must be strictly increasing");
    }
  }
  if (max_degree_ < 1 || max_degree_ >= n) {
    throw Error("polynomial coding: max degree " + std::to_string(max_degree_) +
                " not in [1, " + std::to_string(n - 1) + "] for " +
                std::to_string(n) + " levels");
  }

  // Standardize to t in [-1, 1]; keeps the Gram matrix well conditioned even
  // for high degrees over wide level ranges.
  shift_ = 0.5 * (levels_.front() + levels_.back());
  scale_ = 0.5 * (levels_.back() - levels_.front());

  Eigen::VectorXd t(n);
  for (int i = 0; i < n; ++i) t[i] = (levels_[i] - shift_) / scale_;

  // Gram-Schmidt on the monomial basis {1, t, t^2, ...}, with a second
  // orthogonalization pass. Both the value vectors and the coefficient
  // vectors are carried through the elimination.
  std::vector<Eigen::VectorXd> q_values;
  coeffs_.clear();
  for (int d = 0; d <= max_degree_; ++d) {
    Eigen::VectorXd values(n);
    for (int i = 0; i < n; ++i) values[i] = std::pow(t[i], d);
    Eigen::VectorXd coeff = Eigen::VectorXd::Zero(d + 1);
    coeff[d] = 1.0;

    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < d; ++j) {
        const double proj = q_values[j].dot(values);
        values -= proj * q_values[j];
        coeff.head(j + 1) -= proj * coeffs_[j];
      }
    }
    const double norm = values.norm();
    if (norm <= 0.0) throw Error("polynomial coding: degenerate level set");
    values /= norm;
    coeff /= norm;
    q_values.push_back(std::move(values));
    coeffs_.push_back(std::move(coeff));
  }
}

double PolyCoding::code(double x, int degree) const {
  if (degree < 1 || degree > max_degree_) {
    throw Error("polynomial coding: degree " + std::to_string(degree) +
                " out of range");
  }
  return poly_eval(coeffs_[degree], (x - shift_) / scale_);
}

double PolyCoding::derivative(double x, int degree) const {
  if (degree < 1 || degree > max_degree_) {
    throw Error("polynomial coding: degree " + std::to_string(degree) +
                " out of range");
  }
  return poly_eval_derivative(coeffs_[degree], (x - shift_) / scale_) / scale_;
}

Eigen::MatrixXd PolyCoding::matrix() const {
  const int n = static_cast<int>(levels_.size());
  Eigen::MatrixXd m(n, max_degree_);
  for (int d = 1; d <= max_degree_; ++d) {
    for (int i = 0; i < n; ++i) m(i, d - 1) = code(levels_[i], d);
  }
  return m;
}

Eigen::MatrixXd orthogonal_poly_codes(const std::vector<double>& levels,
                                      int max_degree) {
  return PolyCoding(levels, max_degree).matrix();
}

}  // namespace lclogit
