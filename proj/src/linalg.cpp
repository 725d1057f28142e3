#include "segspace/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace segspace {

Mat Mat::identity(int n) {
  Mat I(n, n);
  for (int i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

Mat matmul(const Mat& A, const Mat& B) {
  Mat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      double aik = A(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < B.cols; ++j) C(i, j) += aik * B(k, j);
    }
  return C;
}

Mat transpose(const Mat& A) {
  Mat T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
  return T;
}

Mat mat_add(const Mat& A, const Mat& B) {
  Mat C = A;
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
  return C;
}

Mat mat_sub(const Mat& A, const Mat& B) {
  Mat C = A;
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] -= B.a[i];
  return C;
}

Mat mat_scale(double s, const Mat& A) {
  Mat C = A;
  for (double& x : C.a) x *= s;
  return C;
}

RVec matvec(const Mat& A, const RVec& x) {
  RVec y(static_cast<std::size_t>(A.rows), 0.0);
  for (int i = 0; i < A.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < A.cols; ++j) s += A(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double fro_norm(const Mat& A) {
  double s = 0.0;
  for (double x : A.a) s += x * x;
  return std::sqrt(s);
}

double max_abs(const Mat& A) {
  double m = 0.0;
  for (double x : A.a) m = std::max(m, std::abs(x));
  return m;
}

RVec solve_spd(const Mat& A, RVec b) {
  int n = A.rows;
  Mat L(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = A(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      if (i == j) {
        if (s <= 0.0) throw domain_error("solve_spd: matrix not positive definite");
        L(i, i) = std::sqrt(s);
      } else {
        L(i, j) = s / L(j, j);
      }
    }
  }
  // forward then backward substitution
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < i; ++k) b[i] -= L(i, k) * b[k];
    b[i] /= L(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int k = i + 1; k < n; ++k) b[i] -= L(k, i) * b[k];
    b[i] /= L(i, i);
  }
  return b;
}

SymEig sym_eigen(Mat A) {
  int n = A.rows;
  Mat V = Mat::identity(n);
  auto off = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += A(i, j) * A(i, j);
    return std::sqrt(2.0 * s);
  };
  double scale = fro_norm(A);
  if (scale == 0.0) scale = 1.0;
  for (int sweep = 0; sweep < 100 && off() > 1e-15 * scale; ++sweep) {
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = A(p, q);
        if (std::abs(apq) <= 1e-18 * scale) continue;
        double tau = (A(q, q) - A(p, p)) / (2.0 * apq);
        double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) { return A(i, i) < A(j, j); });
  SymEig out;
  out.values.resize(n);
  out.vectors = Mat(n, n);
  for (int c = 0; c < n; ++c) {
    out.values[c] = A(order[c], order[c]);
    for (int r = 0; r < n; ++r) out.vectors(r, c) = V(r, order[c]);
  }
  return out;
}

RVec singular_values(const Mat& A) {
  // work with the smaller Gram matrix
  bool wide = A.cols > A.rows;
  Mat At = transpose(A);
  Mat G = wide ? matmul(A, At) : matmul(At, A);
  SymEig e = sym_eigen(G);
  RVec sv;
  for (int i = static_cast<int>(e.values.size()) - 1; i >= 0; --i)
    sv.push_back(std::sqrt(std::max(0.0, e.values[i])));
  // pad with zeros so there are min(rows, cols) values
  while (static_cast<int>(sv.size()) < std::min(A.rows, A.cols)) sv.push_back(0.0);
  return sv;
}

int numerical_rank(const Mat& A, double rel_tol) {
  RVec sv = singular_values(A);
  if (sv.empty() || sv[0] == 0.0) return 0;
  int r = 0;
  for (double s : sv)
    if (s > rel_tol * sv[0]) ++r;
  return r;
}

Mat kernel_basis(const Mat& A, double rel_tol) {
  Mat G = matmul(transpose(A), A);
  SymEig e = sym_eigen(G);
  double smax = std::sqrt(std::max(0.0, e.values.back()));
  double thr = rel_tol * std::max(smax, 1.0);
  int dim = 0;
  for (double v : e.values)
    if (std::sqrt(std::max(0.0, v)) <= thr) ++dim;
  Mat K(A.cols, dim);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < A.cols; ++r) K(r, c) = e.vectors(r, c);
  return K;
}

double spd_condition(const Mat& A) {
  SymEig e = sym_eigen(A);
  double lo = e.values.front(), hi = e.values.back();
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

IMat IMat::identity(int n) {
  IMat I(n);
  for (int i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

IMat imat_mul(const IMat& A, const IMat& B) {
  IMat C(A.size);
  for (int i = 0; i < A.size; ++i)
    for (int k = 0; k < A.size; ++k) {
      long long aik = A(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < A.size; ++j) C(i, j) += aik * B(k, j);
    }
  return C;
}

IMat imat_pow(const IMat& A, int e) {
  IMat r = IMat::identity(A.size), base = A;
  while (e > 0) {
    if (e & 1) r = imat_mul(r, base);
    base = imat_mul(base, base);
    e >>= 1;
  }
  return r;
}

Mat imat_to_real(const IMat& A) {
  Mat R(A.size, A.size);
  for (int i = 0; i < A.size; ++i)
    for (int j = 0; j < A.size; ++j) R(i, j) = static_cast<double>(A(i, j));
  return R;
}

std::vector<long long> char_poly_hessenberg(const IMat& A) {
  int n = A.size;
  for (int i = 0; i < n; ++i)
    for (int j = i + 2; j < n; ++j)
      if (A(i, j) != 0) throw domain_error("char_poly_hessenberg: matrix is not lower Hessenberg");
  // recursion on H = A^T (upper Hessenberg), p_k = det(xI - H_k);
  // polynomials stored constant term first.
  auto H = [&](int i, int j) { return A(j, i); };
  std::vector<std::vector<long long>> p(static_cast<std::size_t>(n) + 1);
  p[0] = {1};
  for (int k = 1; k <= n; ++k) {
    std::vector<long long> cur(static_cast<std::size_t>(k) + 1, 0);
    // (x - h_kk) p_{k-1}
    for (int d = 0; d < k; ++d) {
      cur[d + 1] += p[k - 1][d];
      cur[d] -= H(k - 1, k - 1) * p[k - 1][d];
    }
    long long sub = 1;   // product of subdiagonal entries h_{i+1,i}, i = m..k-1
    for (int m = k - 1; m >= 1; --m) {
      sub *= H(m, m - 1);
      long long coef = H(m - 1, k - 1) * sub;
      if (coef != 0)
        for (int d = 0; d < m; ++d) cur[d] -= coef * p[m - 1][d];
    }
    p[k] = std::move(cur);
  }
  std::vector<long long> out(p[n].rbegin(), p[n].rend());   // leading first
  return out;
}

Mat gram(const std::vector<CVec>& vecs) {
  int m = static_cast<int>(vecs.size());
  Mat G(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) G(i, j) = G(j, i) = inner(vecs[i], vecs[j]);
  return G;
}

int ambient_rank(const std::vector<CVec>& vecs, double rel_tol) {
  SymEig e = sym_eigen(gram(vecs));
  double top = e.values.back();
  if (top <= 0.0) return 0;
  int r = 0;
  for (double v : e.values)
    if (v > rel_tol * rel_tol * top) ++r;   // Gram eigenvalues are sigma^2
  return r;
}

}  // namespace segspace
