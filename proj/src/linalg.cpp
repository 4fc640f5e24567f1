#include "alex/linalg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace alex {

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::norm_inf() const {
  double m = 0;
  for (int i = 0; i < rows_; ++i) {
    double row = 0;
    for (int j = 0; j < cols_; ++j) row += std::abs((*this)(i, j));
    m = std::max(m, row);
  }
  return m;
}

namespace {

struct Lu {
  Matrix a;
  std::vector<int> perm;
  bool singular = false;
};

Lu factor(Matrix a) {
  int n = a.rows();
  Lu lu{std::move(a), std::vector<int>(n), false};
  for (int i = 0; i < n; ++i) lu.perm[i] = i;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(lu.a(i, k)) > std::abs(lu.a(piv, k))) piv = i;
    }
    if (std::abs(lu.a(piv, k)) < 1e-300) {
      lu.singular = true;
      return lu;
    }
    if (piv != k) {
      std::swap(lu.perm[piv], lu.perm[k]);
      for (int j = 0; j < n; ++j) std::swap(lu.a(piv, j), lu.a(k, j));
    }
    for (int i = k + 1; i < n; ++i) {
      double f = lu.a(i, k) / lu.a(k, k);
      lu.a(i, k) = f;
      for (int j = k + 1; j < n; ++j) lu.a(i, j) -= f * lu.a(k, j);
    }
  }
  return lu;
}

std::vector<double> lu_apply(const Lu& lu, const std::vector<double>& b) {
  int n = lu.a.rows();
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[lu.perm[i]];
  for (int i = 1; i < n; ++i) {
    for (int j = 0; j < i; ++j) x[i] -= lu.a(i, j) * x[j];
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= lu.a(i, j) * x[j];
    x[i] /= lu.a(i, i);
  }
  return x;
}

} // namespace

LuResult lu_solve(Matrix a, std::vector<double> b) {
  if (a.rows() != a.cols() || a.rows() != static_cast<int>(b.size())) {
    throw std::invalid_argument("lu_solve: shape mismatch");
  }
  Lu lu = factor(std::move(a));
  if (lu.singular) return {true, {}};
  return {false, lu_apply(lu, b)};
}

double condition_estimate(const Matrix& a) {
  int n = a.rows();
  Lu lu = factor(a);
  if (lu.singular) return std::numeric_limits<double>::infinity();
  // |A^-1|_inf via its explicit columns; n is small here.
  Matrix inv(n, n);
  std::vector<double> e(n, 0.0);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    std::vector<double> col = lu_apply(lu, e);
    for (int i = 0; i < n; ++i) inv(i, j) = col[i];
    e[j] = 0.0;
  }
  return a.norm_inf() * inv.norm_inf();
}

std::vector<double> ridge_solve(const Matrix& a, const std::vector<double>& b,
                                double lambda) {
  int n = a.cols();
  Matrix ata(n, n);
  double diag_max = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < a.rows(); ++k) s += a(k, i) * a(k, j);
      ata(i, j) = s;
    }
    diag_max = std::max(diag_max, ata(i, i));
  }
  std::vector<double> atb(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0;
    for (int k = 0; k < a.rows(); ++k) s += a(k, i) * b[k];
    atb[i] = s;
  }
  // regularization relative to the normal matrix scale, strengthened until
  // the factorization goes through
  double reg = std::max(lambda * lambda, 1e-15 * diag_max) + 1e-300;
  for (int attempt = 0; attempt < 60; ++attempt) {
    Matrix m = ata;
    for (int i = 0; i < n; ++i) m(i, i) += reg;
    LuResult r = lu_solve(std::move(m), atb);
    if (!r.singular) return r.x;
    reg *= 100.0;
  }
  throw std::runtime_error("ridge_solve: singular normal equations");
}

} // namespace alex
