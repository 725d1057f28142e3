#include "segspace/orbifold.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

namespace segspace {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_n(int n) {
  if (n < 3) throw domain_error("need n >= 3");
}

double conj_residual_of(const Mat& B, const Mat& R, const Mat& M) {
  Mat MB = matmul(M, B);
  double scale = fro_norm(MB);
  return fro_norm(mat_sub(matmul(B, R), MB)) / std::max(scale, 1e-300);
}

// quantized key for deduplicating orthogonal matrices during enumeration
std::vector<long long> mat_key(const Mat& A) {
  std::vector<long long> k;
  k.reserve(A.a.size());
  for (double x : A.a) k.push_back(std::llround(x * (1LL << 30)));
  return k;
}

int fixed_dim(const Mat& A, double sign) {
  // dim ker(A - sign I)
  Mat D = A;
  for (int i = 0; i < D.rows; ++i) D(i, i) -= sign;
  return D.rows - numerical_rank(D, 1e-8);
}

std::vector<int> proper_divisors(int n) {
  std::vector<int> out;
  for (int j = 1; j < n; ++j)
    if (n % j == 0) out.push_back(j);
  return out;
}

std::string sphere_label(int dim_plus, int dim_minus) {
  std::string s;
  if (dim_plus >= 1) s += "S^" + std::to_string(dim_plus - 1);
  if (dim_minus >= 1) {
    if (!s.empty()) s += " ∪ ";
    s += "S^" + std::to_string(dim_minus - 1);
  }
  return s.empty() ? "∅" : s;
}

// the anchored-quotient label for the fixed sphere of index j (the base
// cases are substituted: a circle for 3, a disc for 4, the small lens for 5)
std::string script_l_label(int j) {
  switch (j) {
    case 2: return "{1}";
    case 3: return "S^1";
    case 4: return "D^2";
    case 5: return "L_10(7,9)";
    default: return "L(" + std::to_string(j) + ")";
  }
}

std::string lens_label(long long q, const std::vector<long long>& p) {
  std::string s = "L_" + std::to_string(q) + "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

std::string odd_list_lens(int q, int last) {
  // L_q(1, 3, ..., last)
  std::vector<long long> p;
  for (int v = 1; v <= last; v += 2) p.push_back(v);
  return lens_label(q, p);
}

std::string quotient_label(int j, int k) {
  std::string plus, minus;
  if (j >= 2) plus = script_l_label(j);
  if (k % 2 == 0) {
    if (j == 1)
      minus = "{1}";
    else if (j == 2)
      minus = "S^1";   // L_4(1) is again a circle
    else if (j % 2 == 0)
      minus = odd_list_lens(2 * j, j - 1);
    else
      minus = "(C_{" + odd_list_lens(j, j - 2) + "} / ([X],1)~([-X],1))";
  }
  if (plus.empty() && minus.empty()) return "∅";
  if (plus.empty()) return minus;
  if (minus.empty()) return plus;
  return plus + " ∪ " + minus;
}

}  // namespace

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

IMat shift_matrix(int n) {
  require_n(n);
  IMat M(n - 1);
  for (int i = 0; i < n - 2; ++i) {
    M(i, 0) = -1;
    M(i, i + 1) = 1;
  }
  M(n - 2, 0) = -1;
  return M;
}

std::vector<long long> char_poly(const IMat& A) { return char_poly_hessenberg(A); }

EigenData eigen_pairs(int n) {
  require_n(n);
  IMat M = shift_matrix(n);
  EigenData e;
  e.n = n;
  for (int k = 1; k <= n - 1; ++k) {
    cplx lambda = std::polar(1.0, 2.0 * kPi * k / n);
    CVec B(static_cast<std::size_t>(n) - 1);
    for (int m = 1; m <= n - 1; ++m)
      B[m - 1] = std::polar(1.0, 2.0 * kPi * k * m / n) - 1.0;
    // residual of M B = lambda B
    double r2 = 0.0, b2 = 0.0;
    for (int i = 0; i < n - 1; ++i) {
      cplx mb = 0.0;
      for (int c = 0; c < n - 1; ++c) mb += static_cast<double>(M(i, c)) * B[c];
      r2 += std::norm(mb - lambda * B[i]);
      b2 += std::norm(B[i]);
    }
    e.max_rel_residual = std::max(e.max_rel_residual, std::sqrt(r2 / b2));
    e.values.push_back(lambda);
    e.vectors.push_back(std::move(B));
  }
  return e;
}

Mat rotation_matrix(int n) { return rotation_power(n, 1); }

Mat rotation_power(int n, int j) {
  require_n(n);
  Mat R(n - 1, n - 1);
  int blocks = (n % 2 == 1) ? (n - 1) / 2 : (n - 2) / 2;
  for (int m = 1; m <= blocks; ++m) {
    double ang = 2.0 * kPi * m * j / n;
    int r = 2 * (m - 1);
    R(r, r) = std::cos(ang);
    R(r, r + 1) = -std::sin(ang);
    R(r + 1, r) = std::sin(ang);
    R(r + 1, r + 1) = std::cos(ang);
  }
  if (n % 2 == 0) R(n - 2, n - 2) = (j % 2 == 0) ? 1.0 : -1.0;
  return R;
}

RotationForm rotation_form(int n) {
  require_n(n);
  EigenData e = eigen_pairs(n);
  RotationForm out;
  out.n = n;
  out.R = rotation_matrix(n);
  int blocks = (n % 2 == 1) ? (n - 1) / 2 : (n - 2) / 2;
  Mat B(n - 1, n - 1), Boff(n - 1, n - 1);
  for (int m = 1; m <= blocks; ++m) {
    const CVec& Bm = e.vectors[m - 1];
    for (int r = 0; r < n - 1; ++r) {
      B(r, 2 * (m - 1)) = Bm[r].real();
      B(r, 2 * (m - 1) + 1) = -Bm[r].imag();
      Boff(r, 2 * (m - 1)) = Bm[r].real();
      Boff(r, 2 * (m - 1) + 1) = -Bm[r].imag() - 1.0;
    }
  }
  if (n % 2 == 0) {
    const CVec& Bh = e.vectors[n / 2 - 1];   // eigenvector for eigenvalue -1
    for (int r = 0; r < n - 1; ++r) {
      B(r, n - 2) = -Bh[r].real();
      Boff(r, n - 2) = -Bh[r].real();
    }
  }
  out.B = B;
  if (numerical_rank(B, 1e-10) != n - 1)
    throw domain_error("rotation_form: basis matrix is singular");
  Mat M = imat_to_real(shift_matrix(n));
  out.conj_residual = conj_residual_of(B, out.R, M);
  out.offset_variant_residual = conj_residual_of(Boff, out.R, M);
  out.offset_variant_conjugates = out.offset_variant_residual <= 1e-10;
  if (out.conj_residual > 1e-10)
    throw domain_error("rotation_form: basis fails to conjugate the shift matrix");
  return out;
}

GroupReport group_structure(int n) {
  require_n(n);
  GroupReport rep;
  rep.n = n;
  Mat R = rotation_matrix(n);
  Mat nu = mat_scale(-1.0, Mat::identity(n - 1));
  std::map<std::vector<long long>, int> seen;
  std::vector<Mat> elems;
  auto push = [&](const Mat& A) {
    auto key = mat_key(A);
    if (seen.emplace(key, static_cast<int>(elems.size())).second) elems.push_back(A);
  };
  push(Mat::identity(n - 1));
  int cap = 8 * n;
  for (std::size_t head = 0; head < elems.size(); ++head) {
    if (static_cast<int>(elems.size()) > cap)
      throw domain_error("group_structure: enumeration exceeded the expected bound");
    push(matmul(elems[head], R));
    push(matmul(elems[head], nu));
  }
  rep.order = static_cast<int>(elems.size());

  auto order_of = [&](const Mat& A) {
    Mat P = A;
    for (int e = 1; e <= rep.order + 1; ++e) {
      if (fro_norm(mat_sub(P, Mat::identity(n - 1))) <= 1e-9 * std::sqrt(double(n - 1)))
        return e;
      P = matmul(P, A);
    }
    return 0;
  };
  Mat nuR = matmul(nu, R);
  rep.nu_generator_cyclic = (order_of(nuR) == rep.order);
  rep.cyclic = rep.nu_generator_cyclic;
  if (!rep.cyclic) {
    for (const Mat& g : elems)
      if (order_of(g) == rep.order) { rep.cyclic = true; break; }
  }
  // is -I a power of R?
  Mat P = R;
  for (int e = 1; e <= 2 * n; ++e) {
    if (fro_norm(mat_sub(P, nu)) <= 1e-9 * std::sqrt(double(n - 1))) {
      rep.nu_in_rotation_powers = true;
      break;
    }
    P = matmul(P, R);
  }
  return rep;
}

LensParams lens_params_odd(int n) {
  require_n(n);
  if (n % 2 == 0) throw domain_error("lens_params_odd: n must be odd");
  LensParams lp;
  lp.q = 2LL * n;
  for (int k = n + 2; k <= 2 * n - 1; k += 2) lp.p.push_back(k);
  lp.free_action = true;
  for (long long pt : lp.p)
    if (std::gcd(pt, lp.q) != 1) lp.free_action = false;
  long long g = lp.q;
  for (long long pt : lp.p) g = std::gcd(g, pt);
  if (g != 1) throw domain_error("lens_params_odd: parameters share a factor with the order");
  // block phases of -R_n against 2 pi p_t / (2n)
  Mat nuR = mat_scale(-1.0, rotation_matrix(n));
  for (std::size_t m = 0; m < lp.p.size(); ++m) {
    int r = static_cast<int>(2 * m);
    double phase = std::atan2(nuR(r + 1, r), nuR(r, r));
    if (phase < 0.0) phase += 2.0 * kPi;
    double want = 2.0 * kPi * static_cast<double>(lp.p[m]) / static_cast<double>(lp.q);
    lp.eigenphase_mismatch = std::max(lp.eigenphase_mismatch, std::abs(phase - want));
  }
  return lp;
}

Stratum fixed_sets(int n, int j) {
  require_n(n);
  if (j < 1 || j >= n || n % j != 0)
    throw domain_error("fixed_sets: j must be a proper divisor of n");
  int k = n / j;
  Stratum s;
  s.j = j;
  s.k = k;

  // route a: rank-nullity on R_n^j -+ I
  Mat Rj = rotation_power(n, j);
  int plus_numeric = fixed_dim(Rj, 1.0);
  int minus_numeric = fixed_dim(Rj, -1.0);

  // route b: count the identity / negated blocks of R_n^j
  int blocks = (n % 2 == 1) ? (n - 1) / 2 : (n - 2) / 2;
  int plus_blocks = 0, minus_blocks = 0;
  for (int m = 1; m <= blocks; ++m) {
    int rem = (m * j) % n;   // block angle is 2 pi (m j mod n) / n
    if (rem == 0) plus_blocks += 2;
    if (2 * rem == n) minus_blocks += 2;
  }
  if (n % 2 == 0) {
    if (j % 2 == 0)
      plus_blocks += 1;
    else
      minus_blocks += 1;
  }
  s.cross_check_ok = (plus_numeric == plus_blocks) && (minus_numeric == minus_blocks);
  s.dim_plus = plus_blocks;
  s.dim_minus = minus_blocks;
  s.spheres = sphere_label(s.dim_plus, s.dim_minus);
  s.quotient = quotient_label(j, k);
  return s;
}

Stratification stratification(int n) {
  require_n(n);
  Stratification out;
  out.n = n;
  std::vector<int> nodes;
  for (int j : proper_divisors(n)) {
    Stratum s = fixed_sets(n, j);
    if (s.dim_plus == 0 && s.dim_minus == 0) continue;   // empty locus
    nodes.push_back(j);
    out.strata.push_back(std::move(s));
  }
  out.total_spheres = "S^" + std::to_string(n - 2);
  out.total_quotient = script_l_label(n);
  nodes.push_back(n);
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = 0; b < nodes.size(); ++b)
      if (nodes[a] < nodes[b] && nodes[b] % nodes[a] == 0)
        out.edges.emplace_back(nodes[a], nodes[b]);
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

std::string stratification_json(const Stratification& s) {
  std::string j = "{\"n\": " + std::to_string(s.n) + ", \"strata\": [";
  for (std::size_t i = 0; i < s.strata.size(); ++i) {
    const Stratum& st = s.strata[i];
    if (i) j += ", ";
    j += "{\"j\": " + std::to_string(st.j) + ", \"k\": " + std::to_string(st.k) +
         ", \"dim_plus\": " + std::to_string(st.dim_plus) +
         ", \"dim_minus\": " + std::to_string(st.dim_minus) + ", \"spheres\": \"" + st.spheres +
         "\", \"quotient\": \"" + st.quotient + "\"}";
  }
  j += "], \"total\": {\"j\": " + std::to_string(s.n) + ", \"spheres\": \"" + s.total_spheres +
       "\", \"quotient\": \"" + s.total_quotient + "\"}, \"edges\": [";
  for (std::size_t i = 0; i < s.edges.size(); ++i) {
    if (i) j += ", ";
    j += "[" + std::to_string(s.edges[i].first) + ", " + std::to_string(s.edges[i].second) + "]";
  }
  j += "]";
  if (s.strata.empty()) j += ", \"note\": \"singular locus is empty (manifold case)\"";
  j += "}";
  return j;
}

std::string stratification_dot(const Stratification& s) {
  std::string d = "digraph strata {\n  rankdir=BT;\n  node [shape=box];\n";
  auto node = [&](int j, const std::string& spheres, const std::string& quotient) {
    d += "  l" + std::to_string(j) + " [label=\"fix^" + std::to_string(j) + "(" +
         std::to_string(s.n) + ") = " + spheres + "\\n" + quotient + "\"];\n";
  };
  for (const Stratum& st : s.strata) node(st.j, st.spheres, st.quotient);
  node(s.n, s.total_spheres, s.total_quotient);
  for (const auto& [m, j] : s.edges)
    d += "  l" + std::to_string(m) + " -> l" + std::to_string(j) + ";\n";
  if (s.strata.empty()) d += "  // singular locus is empty (manifold case)\n";
  d += "}\n";
  return d;
}

FreenessReport freeness_check(int n) {
  require_n(n);
  FreenessReport rep;
  rep.n = n;
  rep.prime = is_prime(n);
  Mat R = rotation_matrix(n);
  Mat nu = mat_scale(-1.0, Mat::identity(n - 1));
  std::map<std::vector<long long>, bool> seen;
  std::vector<Mat> elems;
  auto push = [&](const Mat& A) {
    auto key = mat_key(A);
    if (seen.emplace(key, true).second) elems.push_back(A);
  };
  push(Mat::identity(n - 1));
  for (std::size_t head = 0; head < elems.size(); ++head) {
    if (static_cast<int>(elems.size()) > 8 * n)
      throw domain_error("freeness_check: enumeration exceeded the expected bound");
    push(matmul(elems[head], R));
    push(matmul(elems[head], nu));
  }
  rep.group_order = static_cast<int>(elems.size());
  for (const Mat& g : elems) {
    if (fro_norm(mat_sub(g, Mat::identity(n - 1))) <= 1e-9) continue;
    rep.max_nontrivial_fixed_dim = std::max(rep.max_nontrivial_fixed_dim, fixed_dim(g, 1.0));
  }
  rep.acts_freely = (rep.max_nontrivial_fixed_dim == 0);
  for (int j : proper_divisors(n)) {
    Stratum s = fixed_sets(n, j);
    if (s.dim_plus > 0 || s.dim_minus > 0) rep.nonempty_strata.push_back(j);
  }
  return rep;
}

}  // namespace segspace
