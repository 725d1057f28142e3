#pragma once

#include <cstdint>
#include <vector>

#include "segspace/types.hpp"

namespace segspace {

/// Dense real matrix, row major. Sizes here stay small (<= ~64).
struct Mat {
  int rows = 0, cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static Mat identity(int n);
};

Mat matmul(const Mat& A, const Mat& B);
Mat transpose(const Mat& A);
Mat mat_add(const Mat& A, const Mat& B);
Mat mat_sub(const Mat& A, const Mat& B);
Mat mat_scale(double s, const Mat& A);
RVec matvec(const Mat& A, const RVec& x);
double fro_norm(const Mat& A);
double max_abs(const Mat& A);

/// Solves A x = b for symmetric positive definite A via Cholesky.
/// Throws domain_error when A is not positive definite.
RVec solve_spd(const Mat& A, RVec b);

struct SymEig {
  RVec values;   // ascending
  Mat vectors;   // columns are the eigenvectors, same order
};

/// Cyclic Jacobi eigensolver for symmetric matrices.
SymEig sym_eigen(Mat A);

/// Singular values of A, descending (via the eigenvalues of A^T A or A A^T).
RVec singular_values(const Mat& A);

/// Number of singular values above rel_tol * sigma_max.
int numerical_rank(const Mat& A, double rel_tol = 1e-10);

/// Orthonormal basis (columns) of the numerical kernel of A.
Mat kernel_basis(const Mat& A, double rel_tol = 1e-8);

/// lambda_max / lambda_min of an SPD matrix.
double spd_condition(const Mat& A);

/// Quadratic-size integer matrix with exact arithmetic.
struct IMat {
  int size = 0;
  std::vector<long long> a;

  IMat() = default;
  explicit IMat(int n) : size(n), a(static_cast<std::size_t>(n) * n, 0) {}

  long long& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * size + j]; }
  long long operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * size + j]; }

  static IMat identity(int n);
  bool operator==(const IMat& o) const = default;
};

IMat imat_mul(const IMat& A, const IMat& B);
IMat imat_pow(const IMat& A, int e);
Mat imat_to_real(const IMat& A);

/// Characteristic polynomial det(xI - A) of an integer matrix that is lower
/// Hessenberg (entries above the superdiagonal all zero), computed exactly by
/// the Hessenberg recursion on A^T. Coefficients are returned leading first.
std::vector<long long> char_poly_hessenberg(const IMat& A);

/// Gram matrix G_ij = <<v_i, v_j>> of ambient vectors.
Mat gram(const std::vector<CVec>& vecs);

/// Rank of a family of ambient vectors under <<.,.>>.
int ambient_rank(const std::vector<CVec>& vecs, double rel_tol = 1e-8);

}  // namespace segspace
