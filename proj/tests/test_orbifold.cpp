#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "segspace/orbifold.hpp"

using namespace segspace;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("shift matrix entries and exact powers") {
  IMat M = shift_matrix(3);
  CHECK(M(0, 0) == -1);
  CHECK(M(0, 1) == 1);
  CHECK(M(1, 0) == -1);
  CHECK(M(1, 1) == 0);
  CHECK(imat_pow(M, 3) == IMat::identity(2));
  for (int n = 3; n <= 40; ++n)
    CHECK(imat_pow(shift_matrix(n), n) == IMat::identity(n - 1));
  CHECK_THROWS_AS(shift_matrix(2), domain_error);
}

TEST_CASE("characteristic polynomial is all ones") {
  CHECK(char_poly(shift_matrix(3)) == std::vector<long long>{1, 1, 1});
  CHECK(char_poly(shift_matrix(4)) == std::vector<long long>{1, 1, 1, 1});
  for (int n = 3; n <= 40; ++n) {
    auto cp = char_poly(shift_matrix(n));
    REQUIRE(static_cast<int>(cp.size()) == n);
    for (long long c : cp) CHECK(c == 1);
  }
}

TEST_CASE("closed-form eigenpairs") {
  EigenData e = eigen_pairs(3);
  CHECK(std::abs(e.values[0] - std::polar(1.0, 2.0 * kPi / 3)) < 1e-15);
  CHECK(std::abs(e.vectors[0][0] - (std::polar(1.0, 2.0 * kPi / 3) - 1.0)) < 1e-15);
  CHECK(std::abs(e.vectors[0][1] - (std::polar(1.0, 4.0 * kPi / 3) - 1.0)) < 1e-15);
  for (int n = 3; n <= 40; ++n) {
    EigenData en = eigen_pairs(n);
    CHECK(en.max_rel_residual <= 1e-12);
    for (const cplx& v : en.values) CHECK(std::abs(v - 1.0) > 1e-3);   // 1 is never an eigenvalue
  }
}

TEST_CASE("rotation normal form") {
  RotationForm r3 = rotation_form(3);
  CHECK(r3.R(0, 0) == doctest::Approx(-0.5));
  CHECK(r3.R(0, 1) == doctest::Approx(-std::sqrt(3.0) / 2));
  CHECK(r3.R(1, 0) == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK(r3.R(1, 1) == doctest::Approx(-0.5));

  RotationForm r4 = rotation_form(4);
  double want[3][3] = {{0, -1, 0}, {1, 0, 0}, {0, 0, -1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(r4.R(i, j) == doctest::Approx(want[i][j]).epsilon(1e-12));

  for (int n = 3; n <= 40; ++n) {
    RotationForm rf = rotation_form(n);
    CHECK(rf.conj_residual <= 1e-10);
    // orthogonality of the block form
    Mat RtR = matmul(transpose(rf.R), rf.R);
    CHECK(fro_norm(mat_sub(RtR, Mat::identity(n - 1))) < 1e-12 * std::sqrt(double(n)));
    // the variant with -1 offsets on the sine columns does not conjugate
    CHECK_FALSE(rf.offset_variant_conjugates);
    CHECK(rf.offset_variant_residual > 1e-3);
  }
}

TEST_CASE("group generated by the rotation form and the antipode") {
  GroupReport g5 = group_structure(5);
  CHECK(g5.order == 10);
  CHECK(g5.cyclic);
  CHECK(g5.nu_generator_cyclic);

  GroupReport g3 = group_structure(3);
  CHECK(g3.order == 6);
  CHECK(g3.cyclic);

  GroupReport g4 = group_structure(4);
  CHECK(g4.order == 8);
  CHECK_FALSE(g4.nu_in_rotation_powers);
  CHECK_FALSE(g4.cyclic);

  for (int n : {6, 7, 9, 12}) {
    GroupReport g = group_structure(n);
    CHECK(g.order == 2 * n);
    CHECK(g.nu_generator_cyclic == (n % 2 == 1));
  }
}

TEST_CASE("lens parameters for odd n") {
  LensParams l5 = lens_params_odd(5);
  CHECK(l5.q == 10);
  CHECK(l5.p == std::vector<long long>{7, 9});
  CHECK(l5.free_action);
  CHECK(l5.eigenphase_mismatch <= 1e-12);

  for (int n : {3, 5, 7, 11, 13}) CHECK(lens_params_odd(n).free_action);

  LensParams l9 = lens_params_odd(9);
  CHECK(l9.q == 18);
  CHECK(l9.p == std::vector<long long>{11, 13, 15, 17});
  CHECK_FALSE(l9.free_action);   // gcd(15, 18) = 3

  CHECK_THROWS_AS(lens_params_odd(4), domain_error);
  for (int n = 3; n <= 39; n += 2) CHECK(lens_params_odd(n).eigenphase_mismatch <= 1e-12);
}

TEST_CASE("fixed loci of the divisor powers") {
  Stratum s10 = fixed_sets(20, 10);
  CHECK(s10.dim_plus == 9);
  CHECK(s10.dim_minus == 10);
  CHECK(s10.spheres == "S^8 ∪ S^9");
  CHECK(s10.cross_check_ok);

  Stratum s4 = fixed_sets(20, 4);
  CHECK(s4.k == 5);
  CHECK(s4.dim_plus == 3);
  CHECK(s4.dim_minus == 0);
  CHECK(s4.spheres == "S^2");

  CHECK(fixed_sets(20, 1).spheres == "S^0");
  CHECK(fixed_sets(20, 2).spheres == "S^0 ∪ S^1");
  CHECK(fixed_sets(20, 5).spheres == "S^3 ∪ S^4");

  CHECK_THROWS_AS(fixed_sets(20, 3), domain_error);
  CHECK_THROWS_AS(fixed_sets(20, 20), domain_error);

  // both counting routes agree everywhere
  for (int n = 4; n <= 60; ++n)
    for (int j = 1; j < n; ++j)
      if (n % j == 0) CHECK(fixed_sets(n, j).cross_check_ok);

  // parity law: odd cofactor gives one sphere, even cofactor two
  for (int n = 4; n <= 40; ++n)
    for (int j = 1; j < n; ++j)
      if (n % j == 0) {
        Stratum s = fixed_sets(n, j);
        if ((n / j) % 2 == 1) {
          CHECK(s.dim_plus == j - 1);
          CHECK(s.dim_minus == 0);
        } else {
          CHECK(s.dim_plus == j - 1);
          CHECK(s.dim_minus == j);
        }
      }
}

TEST_CASE("fixed subspaces nest along divisibility") {
  for (int n : {12, 20, 30}) {
    for (int m = 1; m < n; ++m) {
      if (n % m != 0) continue;
      for (int j = m; j < n; ++j) {
        if (j % m != 0 || n % j != 0 || j == m) continue;
        // ker(R^m - I) sits inside ker(R^j - I)
        Mat Dm = rotation_power(n, m), Dj = rotation_power(n, j);
        for (int i = 0; i < n - 1; ++i) Dm(i, i) -= 1.0;
        for (int i = 0; i < n - 1; ++i) Dj(i, i) -= 1.0;
        Mat U = kernel_basis(Dm), V = kernel_basis(Dj);
        // residual of (I - V V^T) U
        Mat P = matmul(V, transpose(V));
        Mat R = mat_sub(U, matmul(P, U));
        CHECK(fro_norm(R) <= 1e-10 * std::max(1.0, fro_norm(U)));
        // ker(R^m + I) lands in ker(R^j -+ I) according to the parity of j/m
        Mat Am = rotation_power(n, m), Aj = rotation_power(n, j);
        for (int i = 0; i < n - 1; ++i) Am(i, i) += 1.0;
        double sign = ((j / m) % 2 == 0) ? 1.0 : -1.0;   // R^j = (-1)^{j/m} on that kernel
        for (int i = 0; i < n - 1; ++i) Aj(i, i) -= sign;
        Mat Um = kernel_basis(Am), Vj = kernel_basis(Aj);
        Mat Pj = matmul(Vj, transpose(Vj));
        Mat Rm = mat_sub(Um, matmul(Pj, Um));
        CHECK(fro_norm(Rm) <= 1e-10 * std::max(1.0, fro_norm(Um)));
      }
    }
  }
}

TEST_CASE("stratification of n = 20 matches the divisor diagram") {
  Stratification s = stratification(20);
  REQUIRE(s.strata.size() == 5);
  std::set<int> js;
  for (const Stratum& st : s.strata) js.insert(st.j);
  CHECK(js == std::set<int>{1, 2, 4, 5, 10});

  auto at = [&](int j) -> const Stratum& {
    for (const Stratum& st : s.strata)
      if (st.j == j) return st;
    throw std::runtime_error("missing stratum");
  };
  CHECK(at(1).quotient == "{1}");
  CHECK(at(2).quotient == "{1} ∪ S^1");
  CHECK(at(4).quotient == "D^2");
  CHECK(at(5).quotient == "L_10(7,9) ∪ (C_{L_5(1,3)} / ([X],1)~([-X],1))");
  CHECK(at(10).quotient == "L(10) ∪ L_20(1,3,5,7,9)");
  CHECK(s.total_spheres == "S^18");
  CHECK(s.total_quotient == "L(20)");

  std::set<std::pair<int, int>> edges(s.edges.begin(), s.edges.end());
  CHECK(edges.count({1, 2}) == 1);
  CHECK(edges.count({2, 10}) == 1);
  CHECK(edges.count({5, 10}) == 1);
  CHECK(edges.count({10, 20}) == 1);
  CHECK(edges.count({2, 5}) == 0);   // 2 does not divide 5
}

TEST_CASE("stratification of small and prime n") {
  Stratification s4 = stratification(4);
  REQUIRE(s4.strata.size() == 2);
  CHECK(s4.strata[0].j == 1);
  CHECK(s4.strata[0].quotient == "{1}");
  CHECK(s4.strata[1].j == 2);
  CHECK(s4.strata[1].dim_plus == 1);
  CHECK(s4.strata[1].dim_minus == 2);
  CHECK(s4.total_quotient == "D^2");

  Stratification s7 = stratification(7);
  CHECK(s7.strata.empty());
  CHECK(stratification_json(s7).find("singular locus is empty") != std::string::npos);

  Stratification s9 = stratification(9);
  REQUIRE(s9.strata.size() == 1);
  CHECK(s9.strata[0].j == 3);
  CHECK(s9.strata[0].quotient == "S^1");
}

TEST_CASE("emitters are deterministic and well formed") {
  Stratification s = stratification(20);
  std::string j1 = stratification_json(s), j2 = stratification_json(stratification(20));
  CHECK(j1 == j2);
  CHECK(j1.find("\"n\": 20") != std::string::npos);
  CHECK(j1.find("\"quotient\": \"L(10) ∪ L_20(1,3,5,7,9)\"") != std::string::npos);
  std::string dot = stratification_dot(s);
  CHECK(dot.find("digraph strata") != std::string::npos);
  CHECK(dot.find("l10 -> l20") != std::string::npos);
  CHECK(dot.find("fix^20(20) = S^18") != std::string::npos);
}

TEST_CASE("freeness of the sphere action") {
  for (int n : {3, 5, 7, 11, 13}) {
    FreenessReport rep = freeness_check(n);
    CHECK(rep.prime);
    CHECK(rep.acts_freely);
    CHECK(rep.max_nontrivial_fixed_dim == 0);
    CHECK(rep.nonempty_strata.empty());
    CHECK(rep.group_order == 2 * n);
  }
  for (int n : {4, 6, 8, 9, 10, 12, 20}) {
    FreenessReport rep = freeness_check(n);
    CHECK_FALSE(rep.prime);
    CHECK_FALSE(rep.acts_freely);
    CHECK_FALSE(rep.nonempty_strata.empty());
  }
  CHECK(freeness_check(20).nonempty_strata == std::vector<int>{1, 2, 4, 5, 10});
}
