#pragma once

#include <Eigen/Core>
#include <vector>

namespace lclogit {

// Orthogonal polynomial contrasts over a finite, strictly increasing level
// set. Column d (d = 1..max_degree) is a degree-d polynomial evaluated at the
// levels, orthogonal to all lower degrees (including the constant, so every
// column sums to zero) and normalized to unit length. Signs are fixed by a
// positive leading coefficient, which makes the degree-1 column increasing in
// the level value.
//
// The polynomial itself is retained so codes extend off the level grid
// (needed for indifference-point searches and response curves).
class PolyCoding {
 public:
  // Throws Error unless levels are distinct, ascending, and
  // max_degree < levels.size().
  PolyCoding(std::vector<double> levels, int max_degree);

  int max_degree() const { return max_degree_; }
  const std::vector<double>& levels() const { return levels_; }

  // q_degree(x); degree in [1, max_degree].
  double code(double x, int degree) const;

  // d/dx q_degree(x).
  double derivative(double x, int degree) const;

  // levels.size() x max_degree matrix of codes evaluated at the levels.
  Eigen::MatrixXd matrix() const;

 private:
  std::vector<double> levels_;
  int max_degree_;
  double shift_ = 0.0;  // codes are polynomials in t = (x - shift) / scale
  double scale_ = 1.0;
  // coeffs_[d] holds the standardized-basis coefficients of q_d
  // (length d + 1, ascending powers of t).
  std::vector<Eigen::VectorXd> coeffs_;
};

// Convenience wrapper returning just the code matrix.
Eigen::MatrixXd orthogonal_poly_codes(const std::vector<double>& levels,
                                      int max_degree);

}  // namespace lclogit
