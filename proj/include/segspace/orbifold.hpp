#pragma once

#include <string>
#include <utility>
#include <vector>

#include "segspace/linalg.hpp"
#include "segspace/types.hpp"

namespace segspace {

/// Exact integer matrix of the vertex re-enumeration on anchored real
/// profiles, (x_2,...,x_n) -> (x_3 - x_2, ..., x_n - x_2, -x_2).
IMat shift_matrix(int n);

/// Exact characteristic polynomial, leading coefficient first. For the shift
/// matrix this is the all-ones vector (x^{n-1} + ... + x + 1).
std::vector<long long> char_poly(const IMat& A);

/// Eigenpairs of the shift matrix built in closed form: eigenvalue
/// e^{2 pi i k / n} with eigenvector (e^{k m 2 pi i / n} - 1)_{m=1..n-1}.
struct EigenData {
  int n = 0;
  std::vector<cplx> values;
  std::vector<CVec> vectors;
  double max_rel_residual = 0.0;   // worst ||M B_k - lambda_k B_k|| / ||B_k||
};

EigenData eigen_pairs(int n);

/// Block rotation normal form R_n of the shift matrix together with the real
/// basis B_n (columns Re B_j, -Im B_j, plus a last column for even n) that
/// conjugates them: R_n = B_n^{-1} M B_n. The variant basis with a constant
/// -1 offset added to the sine columns is checked too and recorded; it does
/// not conjugate.
struct RotationForm {
  int n = 0;
  Mat R, B;
  double conj_residual = 0.0;            // ||B R - M B|| / ||M B||
  double offset_variant_residual = 0.0;  // same for the offset sine columns
  bool offset_variant_conjugates = false;
};

RotationForm rotation_form(int n);

/// R_n as a dense matrix, and its j-th power (assembled from block angles).
Mat rotation_matrix(int n);
Mat rotation_power(int n, int j);

/// Structure of the group generated by R_n and the antipodal map.
struct GroupReport {
  int n = 0;
  int order = 0;
  bool cyclic = false;                   // some element generates everything
  bool nu_generator_cyclic = false;      // -R_n alone generates everything
  bool nu_in_rotation_powers = false;    // -I is a power of R_n
};

GroupReport group_structure(int n);

/// Lens-space parameters L_{2n}(n+2, n+4, ..., 2n-1) of the odd-n quotient,
/// with the action free exactly when every parameter is coprime to 2n.
struct LensParams {
  long long q = 0;
  std::vector<long long> p;
  bool free_action = false;
  double eigenphase_mismatch = 0.0;   // block phases of -R_n vs 2 pi p_t / q
};

LensParams lens_params_odd(int n);

/// Fixed locus of the j-th power on the unit sphere: dimensions of the +1
/// and -1 eigenspaces of R_n^j computed both by rank-nullity and by counting
/// rotation blocks, with the sphere and quotient descriptions.
struct Stratum {
  int j = 0, k = 0;
  int dim_plus = 0, dim_minus = 0;
  bool cross_check_ok = false;   // numeric kernel dims equal block counts
  std::string spheres;           // e.g. "S^8 ∪ S^9", "∅" when empty
  std::string quotient;          // e.g. "L(10) ∪ L_20(1,3,5,7,9)"
};

Stratum fixed_sets(int n, int j);

/// All nonempty strata over the proper divisors of n, the top node for the
/// whole sphere, and the divisibility edges between the involved indices.
struct Stratification {
  int n = 0;
  std::vector<Stratum> strata;
  std::string total_spheres;    // S^{n-2}
  std::string total_quotient;   // quotient label of the whole space
  std::vector<std::pair<int, int>> edges;   // (m, j) with m | j
};

Stratification stratification(int n);

std::string stratification_json(const Stratification& s);
std::string stratification_dot(const Stratification& s);

/// Fixed-point freeness of the sphere action: for prime n no nontrivial
/// group element fixes a unit vector; composite n always has a nonempty
/// stratum.
struct FreenessReport {
  int n = 0;
  bool prime = false;
  int group_order = 0;
  int max_nontrivial_fixed_dim = 0;
  bool acts_freely = false;
  std::vector<int> nonempty_strata;   // divisor indices, ascending
};

FreenessReport freeness_check(int n);

bool is_prime(int n);

}  // namespace segspace
