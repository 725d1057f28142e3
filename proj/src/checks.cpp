#include "segspace/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "segspace/geodesics.hpp"
#include "segspace/linalg.hpp"
#include "segspace/orbifold.hpp"
#include "segspace/rulings.hpp"
#include "segspace/segment.hpp"

namespace segspace {

namespace {

constexpr double kPi = 3.14159265358979323846;

RVec random_profile(int len, Rng& rng) {
  RVec x(static_cast<std::size_t>(len));
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (double& v : x) {
      v = rng.uniform(-2.0, 2.0);
      n2 += v * v;
    }
  } while (n2 < 0.01);
  return x;
}

}  // namespace

PolyPoint random_M_point(int n, Rng& rng) {
  MappingTorusCoord c;
  c.profile = random_profile(n - 1, rng);
  c.theta = rng.uniform(0.0, kPi * (1.0 - 1e-12));
  return psi(c);
}

PolyPoint random_L_point(int n, Rng& rng) {
  PolyPoint Z = random_M_point(n, rng);
  cplx b(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
  return join_L(Z, b);
}

CheckReport run_checks(int n, std::uint64_t seed) {
  if (n < 3) throw domain_error("run_checks: need n >= 3");
  CheckReport rep;
  rep.n = n;
  rep.seed = seed;
  Rng rng(seed + static_cast<std::uint64_t>(n) * 0x9e37);

  auto add = [&](const std::string& name, double residual, double threshold) {
    CheckItem it{name, residual, threshold, residual <= threshold};
    rep.all_pass = rep.all_pass && it.pass;
    rep.items.push_back(std::move(it));
  };

  {  // mapping-torus round trip
    double worst = 0.0;
    for (int s = 0; s < 300; ++s) {
      PolyPoint Z = random_M_point(n, rng);
      worst = std::max(worst, rel_err(psi(psi_inv(Z)).vertices, Z.vertices));
    }
    add("psi_round_trip", worst, 1e-12);
  }
  {  // chart round trips in both spaces
    double worst = 0.0;
    for (int s = 0; s < 300; ++s) {
      PolyPoint Z = random_M_point(n, rng);
      auto ks = admissible_charts(Z, Space::M);
      int k = ks[rng.below(ks.size())];
      worst = std::max(worst, rel_err(chart_to_point(point_to_chart(Z, k, Space::M)).vertices,
                                      Z.vertices));
      PolyPoint Zh = random_L_point(n, rng);
      ks = admissible_charts(Zh, Space::L);
      k = ks[rng.below(ks.size())];
      worst = std::max(worst, rel_err(chart_to_point(point_to_chart(Zh, k, Space::L)).vertices,
                                      Zh.vertices));
    }
    add("chart_round_trip", worst, 1e-12);
  }
  {  // split / join and witness reconstruction
    double worst = 0.0;
    for (int s = 0; s < 200; ++s) {
      PolyPoint Zh = random_L_point(n, rng);
      auto [Z, b] = split_L(Zh);
      worst = std::max(worst, rel_err(join_L(Z, b).vertices, Zh.vertices));
      worst = std::max(worst, rel_err(segment_witness(Zh).reconstruct(), Zh.vertices));
    }
    add("split_join_identity", worst, 1e-12);
  }
  {  // membership is an affine invariant
    int bad = 0;
    for (int s = 0; s < 200; ++s) {
      PolyPoint Z = random_L_point(n, rng);
      cplx a(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
      if (std::abs(a) < 0.1) a += 1.0;
      cplx b(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
      PolyPoint W = join_L(PolyPoint(scale(a, Z.vertices)), b);
      if (!is_n_segment(W)) ++bad;
      CVec generic(Z.vertices);
      generic[static_cast<std::size_t>(rng.below(generic.size()))] +=
          cplx(0.0, 1.0) * (1.0 + rng.unit());
      PolyPoint G(generic);
      if (is_n_segment(G) != is_n_segment(PolyPoint(scale(a, G.vertices)))) ++bad;
    }
    add("membership_affine_invariance", bad, 0.5);
  }
  {  // frames: orthogonal on the anchored space, full rank on the translated one
    double worst = 0.0;
    int rank_bad = 0;
    for (int s = 0; s < 100; ++s) {
      PolyPoint Z = random_M_point(n, rng);
      auto ks = admissible_charts(Z, Space::M);
      TangentFrame f = tangent_basis_M(Z, ks[rng.below(ks.size())]);
      Mat G = gram(f.vectors);
      double diag_scale = 0.0;
      for (int i = 0; i < G.rows; ++i) diag_scale = std::max(diag_scale, G(i, i));
      for (int i = 0; i < G.rows; ++i)
        for (int j = 0; j < G.cols; ++j)
          if (i != j) worst = std::max(worst, std::abs(G(i, j)) / diag_scale);
      PolyPoint Zh = random_L_point(n, rng);
      ks = admissible_charts(Zh, Space::L);
      TangentFrame fl = tangent_basis_L(Zh, ks[rng.below(ks.size())]);
      if (ambient_rank(fl.vectors) != n + 2) ++rank_bad;
    }
    add("frame_M_orthogonality", worst, 1e-12);
    add("frame_L_rank", rank_bad, 0.5);
  }
  {  // ruling lines: counts, orthogonality, membership, tangency
    double gram_off = 0.0, member = 0.0, span_resid = 0.0;
    int count_bad = 0, rank_bad = 0;
    for (int s = 0; s < 25; ++s) {
      PolyPoint Z = random_M_point(n, rng);
      auto lines = ruling_lines_M(Z);
      if (static_cast<int>(lines.size()) != n) ++count_bad;
      std::vector<CVec> dirs;
      for (const Line& L : lines) dirs.push_back(L.direction);
      Mat G = gram(dirs);
      for (int i = 0; i < G.rows; ++i)
        for (int j = 0; j < G.cols; ++j)
          if (i != j) gram_off = std::max(gram_off, std::abs(G(i, j)));
      auto ks = admissible_charts(Z, Space::M);
      TangentFrame f = tangent_basis_M(Z, ks[0]);
      Mat A(2 * n, n);   // frame vectors as real columns
      for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) {
          A(2 * r, c) = f.vectors[c][r].real();
          A(2 * r + 1, c) = f.vectors[c][r].imag();
        }
      for (const Line& L : lines) {
        for (int t = 1; t <= 20; ++t)
          if (!is_n_segment(PolyPoint(L.at(-2.0 + 4.0 * t / 21.0)), 1e-10))
            member = std::max(member, 1.0);
        // least-squares residual of the direction against the tangent frame
        RVec b(static_cast<std::size_t>(2 * n));
        for (int r = 0; r < n; ++r) {
          b[2 * r] = L.direction[r].real();
          b[2 * r + 1] = L.direction[r].imag();
        }
        Mat At = transpose(A);
        RVec coef = solve_spd(matmul(At, A), matvec(At, b));
        RVec fit = matvec(A, coef);
        double r2 = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i) r2 += (fit[i] - b[i]) * (fit[i] - b[i]);
        span_resid = std::max(span_resid, std::sqrt(r2));
      }
      PolyPoint Zh = random_L_point(n, rng);
      auto llines = ruling_lines_L(Zh);
      if (static_cast<int>(llines.size()) != n + 2) ++count_bad;
      std::vector<CVec> ldirs;
      for (const Line& L : llines) ldirs.push_back(L.direction);
      if (ambient_rank(ldirs) != n + 2) ++rank_bad;
      for (const Line& L : llines)
        for (int t = 1; t <= 20; ++t)
          if (!is_n_segment(PolyPoint(L.at(-2.0 + 4.0 * t / 21.0)), 1e-10))
            member = std::max(member, 1.0);
      auto lks = admissible_charts(Zh, Space::L);
      TangentFrame fl = tangent_basis_L(Zh, lks[0]);
      Mat Al(2 * n, n + 2);
      for (int c = 0; c < n + 2; ++c)
        for (int r = 0; r < n; ++r) {
          Al(2 * r, c) = fl.vectors[c][r].real();
          Al(2 * r + 1, c) = fl.vectors[c][r].imag();
        }
      Mat Alt = transpose(Al);
      Mat AltAl = matmul(Alt, Al);
      for (const Line& L : llines) {
        RVec b(static_cast<std::size_t>(2 * n));
        for (int r = 0; r < n; ++r) {
          b[2 * r] = L.direction[r].real();
          b[2 * r + 1] = L.direction[r].imag();
        }
        RVec coef = solve_spd(AltAl, matvec(Alt, b));
        RVec fit = matvec(Al, coef);
        double r2 = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i) r2 += (fit[i] - b[i]) * (fit[i] - b[i]);
        span_resid = std::max(span_resid, std::sqrt(r2));
      }
    }
    add("ruling_count", count_bad, 0.5);
    add("ruling_M_orthogonality", gram_off, 1e-10);
    add("ruling_membership", member, 0.5);
    add("ruling_tangent_span", span_resid, 1e-10);
    add("ruling_L_rank", rank_bad, 0.5);
  }
  {  // containment predicate against the sampled oracle
    int disagree = 0;
    for (int s = 0; s < 300; ++s) {
      PolyPoint Z = random_M_point(n, rng);
      PolyPoint W = random_M_point(n, rng);
      switch (rng.below(4)) {
        case 0: {   // ray through Z
          double r = rng.uniform(0.2, 2.0) * (rng.below(2) ? 1.0 : -1.0);
          W = PolyPoint(scale(r, Z.vertices));
          break;
        }
        case 1: {   // complex multiple
          cplx a(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
          if (std::abs(a) < 0.2) a += cplx(0.0, 0.5);
          W = PolyPoint(scale(a, Z.vertices));
          break;
        }
        case 2: {   // same line, reshuffled profile
          MappingTorusCoord c = psi_inv(Z);
          for (double& x : c.profile) x += rng.uniform(-1.0, 1.0);
          double n2 = 0.0;
          for (double x : c.profile) n2 += x * x;
          if (n2 < 0.01) c.profile[0] += 1.0;
          W = psi(c);
          break;
        }
        default: break;   // independent random point
      }
      if (segment_in_manifold(Z, W, Space::M) !=
          segment_in_manifold_sampled(Z, W, Space::M))
        ++disagree;
    }
    add("containment_predicate_vs_oracle", disagree, 0.5);
  }
  {  // induced metric positive definite
    int bad = 0;
    Rng mrng(seed ^ 0xabcdef);
    ChartJet jet{Space::M, n};
    for (int s = 0; s < 200; ++s) {
      RVec q(static_cast<std::size_t>(n));
      q[0] = mrng.uniform(-2.0, 2.0);
      q[1] = mrng.uniform(-2.0, 2.0);
      if (std::hypot(q[0], q[1]) < 0.1) q[0] += 0.5;
      for (int i = 2; i < n; ++i) q[i] = mrng.uniform(-2.0, 2.0);
      SymEig e = sym_eigen(induced_metric(jet, q));
      if (e.values.front() <= 0.0) ++bad;
    }
    add("metric_positive_definite", bad, 0.5);
  }
  {  // geodesic conservation and frame orthogonality along the flow
    RVec q0(static_cast<std::size_t>(n), 0.0), v0(q0);
    q0[0] = 1.0;
    q0[1] = 0.25;
    for (int i = 2; i < n; ++i) q0[i] = 0.3 + 0.1 * i;
    v0[0] = 0.4;
    v0[1] = 1.0;
    for (int i = 2; i < n; ++i) v0[i] = 0.5 - 0.07 * i;
    GeodesicTrajectory tr = integrate_geodesic(Space::M, n, q0, v0, 0.5, 1e-3);
    ResidualsM res = residuals_M(tr);
    add("geodesic_conservation",
        std::max({res.drift_speed, res.drift_angular, res.drift_momentum_max}), 1e-7);
    add("geodesic_frame_orthogonality", res.frame_residual, 1e-10);
  }
  {  // exact shift-matrix facts
    IMat M = shift_matrix(n);
    int bad = (imat_pow(M, n) == IMat::identity(n - 1)) ? 0 : 1;
    auto cp = char_poly(M);
    for (long long c : cp)
      if (c != 1) ++bad;
    if (static_cast<int>(cp.size()) != n) ++bad;
    add("shift_matrix_exact", bad, 0.5);
    add("eigen_pair_residual", eigen_pairs(n).max_rel_residual, 1e-10);
    RotationForm rf = rotation_form(n);
    add("conjugation_residual", rf.conj_residual, 1e-10);
    if (n % 2 == 1) add("eigenphase_match", lens_params_odd(n).eigenphase_mismatch, 1e-12);
  }
  {  // fixed loci: the two counting routes agree
    int bad = 0;
    for (int j = 1; j < n; ++j)
      if (n % j == 0 && !fixed_sets(n, j).cross_check_ok) ++bad;
    add("fixed_sets_cross_method", bad, 0.5);
    GroupReport gr = group_structure(n);
    add("group_order", std::abs(gr.order - 2 * n), 0.5);
  }
  Stratification st = stratification(n);
  for (const Stratum& s : st.strata) rep.strata_nodes.push_back(s.j);
  rep.strata_nodes.push_back(n);
  return rep;
}

std::string check_reports_json(const std::vector<CheckReport>& reports) {
  std::string s = "{\"reports\": [";
  char buf[64];
  for (std::size_t r = 0; r < reports.size(); ++r) {
    const CheckReport& rep = reports[r];
    if (r) s += ", ";
    s += "{\"n\": " + std::to_string(rep.n) + ", \"seed\": " + std::to_string(rep.seed) +
         ", \"all_pass\": " + (rep.all_pass ? "true" : "false") + ", \"strata\": [";
    for (std::size_t i = 0; i < rep.strata_nodes.size(); ++i) {
      if (i) s += ", ";
      s += std::to_string(rep.strata_nodes[i]);
    }
    s += "], \"invariants\": [";
    for (std::size_t i = 0; i < rep.items.size(); ++i) {
      const CheckItem& it = rep.items[i];
      if (i) s += ", ";
      std::snprintf(buf, sizeof buf, "%.6g", it.residual);
      s += "{\"name\": \"" + it.name + "\", \"residual\": " + buf;
      std::snprintf(buf, sizeof buf, "%.6g", it.threshold);
      s += std::string(", \"threshold\": ") + buf + ", \"pass\": " + (it.pass ? "true" : "false") +
           "}";
    }
    s += "]}";
  }
  s += "], \"all_pass\": ";
  bool all = true;
  for (const CheckReport& rep : reports) all = all && rep.all_pass;
  s += all ? "true" : "false";
  s += "}";
  return s;
}

}  // namespace segspace
