#pragma once

#include <cstddef>
#include <vector>

namespace alex {

// Dense row-major matrix; the systems this library solves are small (one row
// per metric vertex), so a direct pivoted factorization is plenty.
class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return a_[i * cols_ + j]; }
  double operator()(int i, int j) const { return a_[i * cols_ + j]; }

  Matrix transposed() const;
  double norm_inf() const;  // max absolute row sum

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

struct LuResult {
  bool singular = false;
  std::vector<double> x;
};

// Solves A x = b by LU with partial pivoting. A must be square.
LuResult lu_solve(Matrix a, std::vector<double> b);

// Infinity-norm condition estimate |A| * |A^-1| via explicit inverse columns.
double condition_estimate(const Matrix& a);

// Ridge-regularized least squares: minimizes |A x - b|^2 + lambda^2 |x|^2.
std::vector<double> ridge_solve(const Matrix& a, const std::vector<double>& b,
                                double lambda);

} // namespace alex
