#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "segspace/checks.hpp"
#include "segspace/rng.hpp"
#include "segspace/rulings.hpp"
#include "segspace/segment.hpp"

using namespace segspace;

namespace {
PolyPoint pp(std::initializer_list<cplx> vs) { return PolyPoint(CVec(vs)); }
}  // namespace

TEST_CASE("plane pairing is symmetric, bilinear, positive definite") {
  Rng rng(10);
  for (int trial = 0; trial < 500; ++trial) {
    int n = 3 + static_cast<int>(rng.below(5));
    CVec a(n), b(n), c(n);
    for (int j = 0; j < n; ++j) {
      a[j] = cplx(rng.uniform(-2, 2), rng.uniform(-2, 2));
      b[j] = cplx(rng.uniform(-2, 2), rng.uniform(-2, 2));
      c[j] = cplx(rng.uniform(-2, 2), rng.uniform(-2, 2));
    }
    double s = rng.uniform(-3, 3);
    CHECK(inner(a, b) == doctest::Approx(inner(b, a)));
    CVec sa_plus_c = add(scale(s, a), c);
    CHECK(inner(sa_plus_c, b) == doctest::Approx(s * inner(a, b) + inner(c, b)).epsilon(1e-12));
    CHECK(inner(a, a) >= 0.0);
    if (max_abs(a) > 0.1) CHECK(inner(a, a) > 0.0);
  }
}

TEST_CASE("anchored tangent frame") {
  TangentFrame f = tangent_basis_M(pp({{0, 0}, {1, 0}, {2, 0}}), 2);
  REQUIRE(f.vectors.size() == 3);
  CHECK(rel_err(f.vectors[0], CVec{{0, 0}, {0, 1}, {0, 2}}) < 1e-15);
  CHECK(rel_err(f.vectors[1], CVec{{0, 0}, {1, 0}, {0, 0}}) < 1e-15);
  CHECK(rel_err(f.vectors[2], CVec{{0, 0}, {0, 0}, {1, 0}}) < 1e-15);
  CHECK(inner(f.vectors[0], f.vectors[1]) == doctest::Approx(0.0));

  Rng rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 3 + static_cast<int>(rng.below(6));
    PolyPoint Z = random_M_point(n, rng);
    auto ks = admissible_charts(Z, Space::M);
    TangentFrame fr = tangent_basis_M(Z, ks[rng.below(ks.size())]);
    Mat G = gram(fr.vectors);
    double dmax = 0.0;
    for (int i = 0; i < G.rows; ++i) dmax = std::max(dmax, G(i, i));
    for (int i = 0; i < G.rows; ++i)
      for (int j = 0; j < G.cols; ++j)
        if (i != j) CHECK(std::abs(G(i, j)) <= 1e-12 * dmax);
  }
}

TEST_CASE("translated tangent frame") {
  TangentFrame f = tangent_basis_L(pp({{1, 0}, {2, 0}, {3, 0}}), 2);
  REQUIRE(f.vectors.size() == 5);
  CHECK(rel_err(f.vectors[3], CVec{{1, 0}, {1, 0}, {1, 0}}) < 1e-15);
  CHECK(rel_err(f.vectors[4], CVec{{0, 1}, {0, 1}, {0, 1}}) < 1e-15);
  // generically not orthogonal: <<z e_2, vec(1)>> = Re z
  CHECK(inner(f.vectors[1], f.vectors[3]) == doctest::Approx(1.0));

  Rng rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 3 + static_cast<int>(rng.below(6));
    PolyPoint Zh = random_L_point(n, rng);
    auto ks = admissible_charts(Zh, Space::L);
    TangentFrame fr = tangent_basis_L(Zh, ks[rng.below(ks.size())]);
    CHECK(ambient_rank(fr.vectors) == n + 2);
  }
}

TEST_CASE("containment predicate examples") {
  PolyPoint Z = pp({{0, 0}, {1, 0}, {2, 0}});
  CHECK(segment_in_manifold(Z, pp({{0, 0}, {1, 0}, {3, 0}}), Space::M));
  CHECK_FALSE(segment_in_manifold(pp({{0, 0}, {1, 0}, {1, 0}}),
                                  pp({{0, 0}, {0, 1}, {0, 2}}), Space::M));
  // midpoint of that pair leaves the collinear locus
  CHECK_FALSE(is_n_segment(pp({{0, 0}, {0.5, 0.5}, {0.5, 1.0}})));
  // the ray through -Z crosses 0
  CHECK_FALSE(segment_in_manifold(Z, PolyPoint(scale(-1.0, Z.vertices)), Space::M));
  CHECK(segment_in_manifold(Z, PolyPoint(scale(2.0, Z.vertices)), Space::M));
  CHECK(segment_in_manifold(pp({{0, 0}, {1, 0}, {0, 0}}), pp({{0, 0}, {0, 1}, {0, 0}}),
                            Space::M));
}

TEST_CASE("sampled oracle agrees with the predicate") {
  Rng rng(13);
  int checked = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    int n = 3 + static_cast<int>(rng.below(4));
    PolyPoint Z = random_M_point(n, rng);
    PolyPoint W = random_M_point(n, rng);
    switch (rng.below(4)) {
      case 0: {
        double r = rng.uniform(0.2, 2.0) * (rng.below(2) ? 1.0 : -1.0);
        W = PolyPoint(scale(r, Z.vertices));
        break;
      }
      case 1: {
        cplx a(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        if (std::abs(a) < 0.2) a += cplx(0.0, 0.5);
        W = PolyPoint(scale(a, Z.vertices));
        break;
      }
      case 2: {
        MappingTorusCoord c = psi_inv(Z);
        for (double& x : c.profile) x += rng.uniform(-1.0, 1.0);
        double n2 = 0.0;
        for (double x : c.profile) n2 += x * x;
        if (n2 < 0.01) c.profile[0] += 1.0;
        W = psi(c);
        break;
      }
      default: break;
    }
    CHECK(segment_in_manifold(Z, W, Space::M) == segment_in_manifold_sampled(Z, W, Space::M));
    ++checked;
  }
  CHECK(checked == 10000);

  // translated space: same agreement through the splitting
  for (int trial = 0; trial < 2000; ++trial) {
    int n = 3 + static_cast<int>(rng.below(4));
    PolyPoint Z = random_L_point(n, rng);
    PolyPoint W = rng.below(2) ? random_L_point(n, rng)
                               : join_L(PolyPoint(scale(rng.uniform(-2.0, -0.2),
                                                        split_L(Z).first.vertices)),
                                        Z[0]);
    CHECK(segment_in_manifold(Z, W, Space::L) == segment_in_manifold_sampled(Z, W, Space::L));
  }
}

TEST_CASE("ruling lines of the anchored space") {
  Rng rng(14);
  for (int n = 3; n <= 10; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      PolyPoint Z = random_M_point(n, rng);
      auto lines = ruling_lines_M(Z);
      CHECK(static_cast<int>(lines.size()) == n);
      std::vector<CVec> dirs;
      for (const Line& L : lines) {
        CHECK(rel_err(L.point, Z.vertices) == 0.0);
        dirs.push_back(L.direction);
      }
      Mat G = gram(dirs);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) CHECK(std::abs(G(i, j)) < 1e-10);
      for (const Line& L : lines)
        for (double t : {-1.0, -0.5, 0.5, 1.0})
          CHECK(is_n_segment(PolyPoint(L.at(t)), 1e-10));
    }
  }
  CHECK_THROWS_AS(ruling_lines_M(pp({{1, 0}, {2, 0}, {3, 0}})), membership_error);
}

TEST_CASE("ruling lines of the translated space") {
  Rng rng(15);
  for (int n = 3; n <= 8; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      PolyPoint Zh = random_L_point(n, rng);
      auto lines = ruling_lines_L(Zh);
      CHECK(static_cast<int>(lines.size()) == n + 2);
      std::vector<CVec> dirs;
      for (const Line& L : lines) dirs.push_back(L.direction);
      CHECK(ambient_rank(dirs) == n + 2);
      for (const Line& L : lines)
        for (double t : {-1.5, -0.7, 0.3, 1.1})
          CHECK(is_n_segment(PolyPoint(L.at(t)), 1e-10));
      // the first n+1 directions are mutually orthogonal
      Mat G = gram(std::vector<CVec>(dirs.begin(), dirs.end() - 1));
      for (int i = 0; i < G.rows; ++i)
        for (int j = 0; j < G.cols; ++j)
          if (i != j) CHECK(std::abs(G(i, j)) < 1e-10);
    }
  }
  CHECK_THROWS_AS(ruling_lines_L(pp({{1, 1}, {1, 1}, {1, 1}})), degenerate_error);
}

TEST_CASE("ruling lines at aligned profiles") {
  // profile proportional to (1,...,1): the diagonal directions orthogonalize
  // to something parallel to the profile, forcing the rotation fix
  for (int n : {3, 4, 6}) {
    CVec vs(static_cast<std::size_t>(n), cplx(0.6, 0.8));
    vs[0] = 0.0;
    PolyPoint Z(vs);
    auto lines = ruling_lines_M(Z);
    CHECK(static_cast<int>(lines.size()) == n);
    for (const Line& L : lines)
      for (double t : {-3.0, -1.0, 1.0, 3.0}) CHECK(is_n_segment(PolyPoint(L.at(t)), 1e-10));

    PolyPoint Zh = join_L(Z, cplx(-0.4, 1.2));
    auto llines = ruling_lines_L(Zh);
    CHECK(static_cast<int>(llines.size()) == n + 2);
    std::vector<CVec> dirs;
    for (const Line& L : llines) dirs.push_back(L.direction);
    CHECK(ambient_rank(dirs) == n + 2);
    for (const Line& L : llines)
      for (double t : {-3.0, -1.0, 1.0, 3.0}) CHECK(is_n_segment(PolyPoint(L.at(t)), 1e-10));
  }
  // profile along a single axis
  PolyPoint axis(CVec{{0, 0}, {0, 0}, {1.5, 0}, {0, 0}});
  auto lines = ruling_lines_M(axis);
  CHECK(static_cast<int>(lines.size()) == 4);
  for (const Line& L : lines)
    for (double t : {-2.0, 2.0}) CHECK(is_n_segment(PolyPoint(L.at(t)), 1e-10));
}

TEST_CASE("a diagonal translate of a segment is a segment") {
  Rng rng(16);
  PolyPoint Zh = random_L_point(5, rng);
  Line diag{Zh.vertices, diag_vec(5, {1.0, 0.0})};
  for (double t : {-2.0, -1.0, 1.0, 2.0}) CHECK(is_n_segment(PolyPoint(diag.at(t))));
}

TEST_CASE("flat subspace intersections") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 3 + static_cast<int>(rng.below(4));
    PolyPoint Z = random_M_point(n, rng);
    cplx b(rng.uniform(0.3, 2.0), rng.uniform(0.3, 2.0));

    RulingSubspace cstar = make_subspace(SubspaceKind::CStar, Z, b);
    RulingSubspace rprof = make_subspace(SubspaceKind::RealProfile, Z, b);
    RulingSubspace diag = make_subspace(SubspaceKind::Diagonal, Z, b);

    // with b != 0 the scaled and reprofiled copies miss the anchored space
    for (int s = 0; s < 10; ++s) {
      PolyPoint P = cstar.at(rng.uniform(-2.0, 2.0), rng.uniform(0.1, 2.0));
      CHECK(std::abs(P[0]) > 1e-12);
      PolyPoint Q = rprof.at(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      CHECK(std::abs(Q[0]) > 1e-12);
      CHECK(is_n_segment(P));
      CHECK(is_n_segment(Q));
      CHECK(is_n_segment(diag.at(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))));
    }

    // the scaled and reprofiled copies meet exactly along the real ray of Z
    PolyPoint on_ray(add(scale(1.7, Z.vertices), diag_vec(n, b)));
    CHECK(cstar.contains(on_ray));
    CHECK(rprof.contains(on_ray));
    PolyPoint rotated(add(scale(cplx(0.3, 1.1), Z.vertices), diag_vec(n, b)));
    CHECK(cstar.contains(rotated));
    CHECK_FALSE(rprof.contains(rotated));

    // the diagonal translate meets both copies only at the base point
    CHECK(diag.contains(PolyPoint(add(Z.vertices, diag_vec(n, b)))));
    CHECK(cstar.contains(PolyPoint(add(Z.vertices, diag_vec(n, b)))));
    PolyPoint shifted = diag.at(0.5, 0.0);
    CHECK_FALSE(cstar.contains(shifted));
    CHECK_FALSE(rprof.contains(shifted));
  }
}

TEST_CASE("small-n brute force: the diagonal meets the anchored space once") {
  // solve Z + b + omega in V_n for omega: forced to omega = -b, the point Z
  Rng rng(18);
  PolyPoint Z = random_M_point(4, rng);
  cplx b(0.7, -0.4);
  RulingSubspace diag = make_subspace(SubspaceKind::Diagonal, Z, b);
  int hits = 0;
  for (double s = -2.0; s <= 2.0; s += 0.01)
    for (double t : {-0.4, 0.0, 0.4}) {
      PolyPoint P = diag.at(s, t);
      if (std::abs(P[0]) < 1e-9) {
        ++hits;
        CHECK(rel_err(P.vertices, Z.vertices) < 1e-9);
      }
    }
  CHECK(hits == 1);   // s = -0.7, t = 0.4 only
}
