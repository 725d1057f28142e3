#include "segspace/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "segspace/rng.hpp"

namespace segspace {

namespace {

cplx z_of(const RVec& q) { return {q[0], q[1]}; }

double sq(double x) { return x * x; }

// conserved quantities of the anchored geodesic flow, from position/velocity
void record_conserved(const ChartJet& jet, const RVec& q, const RVec& qdot,
                      double& k0, double& k1, RVec& kj) {
  CVec vel = jet.velocity(q, qdot);
  k0 = norm2(vel);
  cplx z = z_of(q), zdot(qdot[0], qdot[1]);
  double s2 = 1.0;
  for (int j = 3; j <= jet.n; ++j) s2 += sq(q[j - 1]);
  k1 = s2 * (z.real() * zdot.imag() - z.imag() * zdot.real());
  kj.assign(static_cast<std::size_t>(jet.n) - 2, 0.0);
  double zn2 = std::norm(z);
  for (int j = 3; j <= jet.n; ++j) kj[j - 3] = qdot[j - 1] * zn2;
}

struct Deriv {
  RVec dq, dv;
};

Deriv flow(const ChartJet& jet, const RVec& q, const RVec& qdot) {
  return {qdot, geodesic_acceleration(jet, q, qdot)};
}

void push_step(GeodesicTrajectory& tr, const ChartJet& jet, double t, const RVec& q,
               const RVec& v, const RVec& a) {
  tr.t.push_back(t);
  tr.q.push_back(q);
  tr.qdot.push_back(v);
  tr.qddot.push_back(a);
  double k0, k1;
  RVec kj;
  record_conserved(jet, q, v, k0, k1, kj);
  tr.k0.push_back(k0);
  tr.k1.push_back(k1);
  tr.kj.push_back(std::move(kj));
}

}  // namespace

CVec ChartJet::value(const RVec& q) const {
  cplx z = z_of(q);
  CVec F(static_cast<std::size_t>(n), 0.0);
  F[1] = z;
  for (int j = 3; j <= n; ++j) F[j - 1] = q[j - 1] * z;
  if (space == Space::L) {
    cplx b(q[n], q[n + 1]);
    for (auto& f : F) f += b;
  }
  return F;
}

CVec ChartJet::partial(const RVec& q, int i) const {
  CVec P(static_cast<std::size_t>(n), 0.0);
  if (i == 0 || i == 1) {
    cplx unit = (i == 0) ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
    P[1] = unit;
    for (int j = 3; j <= n; ++j) P[j - 1] = q[j - 1] * unit;
  } else if (i < n) {
    P[i] = z_of(q);   // coordinate i is r_{i+1}
  } else {
    P = diag_vec(n, i == n ? cplx(1.0, 0.0) : cplx(0.0, 1.0));
  }
  return P;
}

CVec ChartJet::second_partial(int i, int j) const {
  CVec P(static_cast<std::size_t>(n), 0.0);
  if (i > j) std::swap(i, j);
  if (i <= 1 && j >= 2 && j < n) {
    P[j] = (i == 0) ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
  }
  return P;
}

CVec ChartJet::velocity(const RVec& q, const RVec& qdot) const {
  CVec V(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < dim(); ++i) {
    if (qdot[i] == 0.0) continue;
    CVec P = partial(q, i);
    for (int m = 0; m < n; ++m) V[m] += qdot[i] * P[m];
  }
  return V;
}

CVec ChartJet::acceleration(const RVec& q, const RVec& qdot, const RVec& qddot) const {
  CVec A(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < dim(); ++i) {
    if (qddot[i] != 0.0) {
      CVec P = partial(q, i);
      for (int m = 0; m < n; ++m) A[m] += qddot[i] * P[m];
    }
  }
  // mixed x/r and y/r terms are the only curvature of the embedding
  for (int j = 3; j <= n; ++j) {
    cplx zdot(qdot[0], qdot[1]);
    A[j - 1] += 2.0 * qdot[j - 1] * zdot;
  }
  return A;
}

std::vector<CVec> ChartJet::frame(const RVec& q) const {
  cplx z = z_of(q);
  CVec Z(static_cast<std::size_t>(n), 0.0);
  Z[1] = z;
  for (int j = 3; j <= n; ++j) Z[j - 1] = q[j - 1] * z;
  std::vector<CVec> f;
  f.push_back(scale(cplx(0.0, 1.0), Z));
  for (int slot = 2; slot <= n; ++slot) {
    CVec e(static_cast<std::size_t>(n), 0.0);
    e[slot - 1] = z;
    f.push_back(std::move(e));
  }
  if (space == Space::L) {
    f.push_back(diag_vec(n, cplx(1.0, 0.0)));
    f.push_back(diag_vec(n, cplx(0.0, 1.0)));
  }
  return f;
}

Mat induced_metric(const ChartJet& jet, const RVec& q) {
  int d = jet.dim();
  std::vector<CVec> partials;
  partials.reserve(d);
  for (int i = 0; i < d; ++i) partials.push_back(jet.partial(q, i));
  Mat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) g(i, j) = g(j, i) = inner(partials[i], partials[j]);
  return g;
}

Mat induced_metric(const ChartCoord& c) {
  int n = c.n();
  if (n < 3) throw domain_error("induced_metric: need n >= 3");
  if (c.k < 2 || c.k > n) throw domain_error("induced_metric: chart index out of range");
  // the embedding z (0, r_2, ..., 1@k, ..., r_n) [+ b] has the same pairings
  // for every k, so evaluate the canonical jet on reordered coordinates and
  // permute the matrix back into the chart's layout
  ChartJet jet{c.space, n};
  int d = jet.dim();
  std::vector<int> to_canonical(static_cast<std::size_t>(d));   // chart slot -> jet slot
  {
    int xi = c.k - 2;                     // position of x in the chart layout
    to_canonical[xi] = 0;
    to_canonical[xi + 1] = 1;
    int next = 2;
    for (int i = 0; i < n; ++i) {
      if (i == xi || i == xi + 1) continue;
      to_canonical[i] = next++;
    }
    if (c.space == Space::L) {
      to_canonical[n] = n;
      to_canonical[n + 1] = n + 1;
    }
  }
  RVec q(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i) q[to_canonical[i]] = c.coords[i];
  Mat g0 = induced_metric(jet, q);
  Mat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = g0(to_canonical[i], to_canonical[j]);
  return g;
}

RVec geodesic_acceleration(const ChartJet& jet, const RVec& q, const RVec& qdot) {
  int d = jet.dim();
  std::vector<CVec> partials;
  partials.reserve(d);
  for (int i = 0; i < d; ++i) partials.push_back(jet.partial(q, i));
  Mat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) g(i, j) = g(j, i) = inner(partials[i], partials[j]);
  // quadratic velocity term: only the mixed x/r_j and y/r_j second partials survive
  CVec curve(static_cast<std::size_t>(jet.n), 0.0);
  cplx zdot(qdot[0], qdot[1]);
  for (int j = 3; j <= jet.n; ++j) curve[j - 1] = 2.0 * qdot[j - 1] * zdot;
  RVec rhs(static_cast<std::size_t>(d), 0.0);
  for (int k = 0; k < d; ++k) rhs[k] = -inner(curve, partials[k]);
  return solve_spd(g, std::move(rhs));
}

cplx GeodesicTrajectory::lambda_at(std::size_t i) const {
  if (space != Space::L) return 0.0;
  return {q[i][n], q[i][n + 1]};
}

GeodesicTrajectory integrate_geodesic(Space space, int n, const RVec& q0, const RVec& v0,
                                      double t_final, double dt, const IntegrateOptions& opt) {
  ChartJet jet{space, n};
  int d = jet.dim();
  if (static_cast<int>(q0.size()) != d || static_cast<int>(v0.size()) != d)
    throw domain_error("integrate_geodesic: state size mismatch");
  if (dt <= 0.0 || t_final <= 0.0) throw domain_error("integrate_geodesic: need dt, T > 0");
  if (std::abs(z_of(q0)) <= opt.chart_exit_radius)
    throw chart_error("integrate_geodesic: initial point outside the chart", {});
  double v2 = 0.0;
  for (double v : v0) v2 += v * v;
  if (v2 == 0.0) throw domain_error("integrate_geodesic: zero initial velocity");

  GeodesicTrajectory tr;
  tr.space = space;
  tr.n = n;
  tr.dt = dt;
  auto steps = static_cast<std::size_t>(std::llround(t_final / dt));
  if (steps == 0) steps = 1;

  RVec q = q0, v = v0;
  push_step(tr, jet, 0.0, q, v, geodesic_acceleration(jet, q, v));
  for (std::size_t s = 1; s <= steps; ++s) {
    // classical fourth-order step on (q, v); a substep can land on the
    // degenerate z = 0 locus, which surfaces as a failed Cholesky factorization
    try {
      Deriv k1 = flow(jet, q, v);
      RVec q2(q), v2s(v);
      for (int i = 0; i < d; ++i) { q2[i] += 0.5 * dt * k1.dq[i]; v2s[i] += 0.5 * dt * k1.dv[i]; }
      Deriv k2 = flow(jet, q2, v2s);
      RVec q3(q), v3(v);
      for (int i = 0; i < d; ++i) { q3[i] += 0.5 * dt * k2.dq[i]; v3[i] += 0.5 * dt * k2.dv[i]; }
      Deriv k3 = flow(jet, q3, v3);
      RVec q4(q), v4(v);
      for (int i = 0; i < d; ++i) { q4[i] += dt * k3.dq[i]; v4[i] += dt * k3.dv[i]; }
      Deriv k4 = flow(jet, q4, v4);
      for (int i = 0; i < d; ++i) {
        q[i] += dt / 6.0 * (k1.dq[i] + 2.0 * (k2.dq[i] + k3.dq[i]) + k4.dq[i]);
        v[i] += dt / 6.0 * (k1.dv[i] + 2.0 * (k2.dv[i] + k3.dv[i]) + k4.dv[i]);
      }
    } catch (const domain_error&) {
      tr.status = TrajStatus::ChartExit;
      return tr;
    }
    if (std::abs(z_of(q)) <= opt.chart_exit_radius) {
      tr.status = TrajStatus::ChartExit;
      return tr;
    }
    if (spd_condition(induced_metric(jet, q)) > opt.max_condition) {
      tr.status = TrajStatus::MetricIllConditioned;
      return tr;
    }
    push_step(tr, jet, static_cast<double>(s) * dt, q, v, geodesic_acceleration(jet, q, v));
  }
  return tr;
}

GeodesicTrajectory sample_curve(Space space, int n, const std::function<RVec(double)>& q,
                                const std::function<RVec(double)>& qdot,
                                const std::function<RVec(double)>& qddot, double t_final,
                                double dt) {
  ChartJet jet{space, n};
  GeodesicTrajectory tr;
  tr.space = space;
  tr.n = n;
  tr.dt = dt;
  auto steps = static_cast<std::size_t>(std::llround(t_final / dt));
  for (std::size_t s = 0; s <= steps; ++s) {
    double t = static_cast<double>(s) * dt;
    push_step(tr, jet, t, q(t), qdot(t), qddot(t));
  }
  return tr;
}

double ResidualsM::worst() const {
  return std::max({drift_speed, drift_angular, drift_momentum_max, radial_accel_max,
                   frame_residual});
}

ResidualsM residuals_M(const GeodesicTrajectory& traj) {
  if (traj.space != Space::M) throw domain_error("residuals_M: trajectory is not anchored");
  ChartJet jet = traj.jet();
  ResidualsM r;
  r.drift_momentum.assign(static_cast<std::size_t>(traj.n) - 2, 0.0);
  for (std::size_t i = 0; i < traj.steps(); ++i) {
    r.drift_speed = std::max(r.drift_speed, std::abs(traj.k0[i] - traj.k0[0]));
    r.drift_angular = std::max(r.drift_angular, std::abs(traj.k1[i] - traj.k1[0]));
    for (std::size_t j = 0; j < r.drift_momentum.size(); ++j)
      r.drift_momentum[j] = std::max(r.drift_momentum[j], std::abs(traj.kj[i][j] - traj.kj[0][j]));
    cplx z = traj.z_at(i), zdd(traj.qddot[i][0], traj.qddot[i][1]);
    r.radial_accel_max = std::max(r.radial_accel_max, std::abs(dot2(zdd, z)));
    CVec acc = jet.acceleration(traj.q[i], traj.qdot[i], traj.qddot[i]);
    for (const CVec& v : jet.frame(traj.q[i]))
      r.frame_residual = std::max(r.frame_residual, std::abs(inner(acc, v)));
  }
  for (double d : r.drift_momentum) r.drift_momentum_max = std::max(r.drift_momentum_max, d);
  return r;
}

double ResidualsL::worst() const {
  return std::max({res_rotation, res_scale, res_profile_max, res_translation, drift_speed});
}

ResidualsL residuals_L(const GeodesicTrajectory& traj) {
  if (traj.space != Space::L) throw domain_error("residuals_L: trajectory is not translated");
  ChartJet jet = traj.jet();
  int n = traj.n;
  ResidualsL r;
  for (std::size_t i = 0; i < traj.steps(); ++i) {
    const RVec& q = traj.q[i];
    const RVec& qd = traj.qdot[i];
    const RVec& qdd = traj.qddot[i];
    CVec acc = jet.acceleration(q, qd, qdd);
    std::vector<CVec> frame = jet.frame(q);
    double p_rot = inner(acc, frame[0]);
    double p_scale = inner(acc, frame[1]);
    r.res_rotation = std::max(r.res_rotation, std::abs(p_rot));
    r.res_scale = std::max(r.res_scale, std::abs(p_scale));
    for (int j = 3; j <= n; ++j)
      r.res_profile_max = std::max(r.res_profile_max, std::abs(inner(acc, frame[j - 1])));
    double p_one = inner(acc, frame[n]);
    double p_i = inner(acc, frame[n + 1]);
    r.res_translation = std::max({r.res_translation, std::abs(p_one), std::abs(p_i)});
    r.drift_speed = std::max(r.drift_speed, std::abs(traj.k0[i] - traj.k0[0]));

    // expanded per-coordinate forms of the same conditions
    cplx z = traj.z_at(i), zd(qd[0], qd[1]), zdd(qdd[0], qdd[1]);
    cplx ldd(qdd[n], qdd[n + 1]), ld(qd[n], qd[n + 1]);
    double sum_r = 0.0, sum_r2 = 0.0, sum_rd = 0.0, sum_rrd = 0.0, sum_rdd = 0.0;
    for (int j = 3; j <= n; ++j) {
      double rj = q[j - 1], rjd = qd[j - 1], rjdd = qdd[j - 1];
      sum_r += rj;
      sum_r2 += rj * rj;
      sum_rd += rjd;
      sum_rrd += rj * rjd;
      sum_rdd += rjdd;
    }
    cplx iz = cplx(0.0, 1.0) * z;
    double expanded_rot = (1.0 + sum_r2) * dot2(zdd, iz) + 2.0 * sum_rrd * dot2(zd, iz) +
                          (1.0 + sum_r) * dot2(ldd, iz);
    r.gap_rotation = std::max(r.gap_rotation, std::abs(expanded_rot - p_rot));
    for (int j = 3; j <= n; ++j) {
      double rj = q[j - 1], rjd = qd[j - 1], rjdd = qdd[j - 1];
      double expanded = dot2(z, rjdd * z + 2.0 * rjd * zd + (rj - 1.0) * zdd);
      double definitional = inner(acc, frame[j - 1]);
      // the expanded form already substituted the scale condition, so it
      // equals the frame pairing minus that pairing's value
      r.gap_profile = std::max(r.gap_profile, std::abs(expanded - (definitional - p_scale)));
    }
    cplx expanded_diag = (1.0 + sum_r) * zdd + 2.0 * sum_rd * zd + sum_rdd * z +
                         static_cast<double>(n) * ldd;
    r.gap_translation = std::max({r.gap_translation, std::abs(expanded_diag.real() - p_one),
                                  std::abs(expanded_diag.imag() - p_i)});
    double expanded_speed = 0.0;
    {
      double zn2 = std::norm(z), zdn2 = std::norm(zd);
      double cross = dot2(z, zd);
      expanded_speed = 0.0;
      for (int j = 3; j <= n; ++j) {
        double rj = q[j - 1], rjd = qd[j - 1];
        expanded_speed += rjd * rjd * zn2 + 2.0 * rjd * rj * cross;
      }
      expanded_speed += (1.0 + sum_r2) * zdn2;
      // cross terms against the diagonal velocity, as printed (single factor)
      expanded_speed += sum_rd * dot2(z, ld) + (1.0 + sum_r) * dot2(zd, ld) +
                        static_cast<double>(n) * std::norm(ld);
    }
    r.gap_speed = std::max(r.gap_speed, std::abs(expanded_speed - traj.k0[i]));
  }
  return r;
}

bool check_lift_condition(const LiftSpec& spec) {
  double lhs = 1.0, rhs = 0.0;
  for (std::size_t j = 0; j < spec.amplitudes.size(); ++j) {
    double a2 = sq(spec.amplitudes[j]);
    if (spec.follows_r[j])
      rhs += a2;
    else
      lhs += a2;
  }
  return std::abs(lhs - rhs) <= 1e-12;
}

bool is_straight(const GeodesicTrajectory& traj, double tol) {
  ChartJet jet = traj.jet();
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.steps(); ++i)
    worst = std::max(worst, norm(jet.acceleration(traj.q[i], traj.qdot[i], traj.qddot[i])));
  return worst <= tol;
}

LiftResult lift_M3_to_Mn(const GeodesicTrajectory& beta, const LiftSpec& spec, double beta_tol) {
  if (beta.space != Space::M || beta.n != 3)
    throw domain_error("lift_M3_to_Mn: base curve must live on the 3-vertex space");
  if (spec.amplitudes.size() != spec.follows_r.size() || spec.amplitudes.empty())
    throw domain_error("lift_M3_to_Mn: malformed lift spec");
  LiftResult out;
  if (!residuals_M(beta).pass(beta_tol)) {
    out.status = LiftStatus::BetaNotGeodesic;
    return out;
  }
  if (is_straight(beta)) {
    out.status = LiftStatus::BetaStraight;   // the hypothesis wants a curved base
    return out;
  }
  int n = spec.target_n();
  ChartJet jet{Space::M, n};
  GeodesicTrajectory tr;
  tr.space = Space::M;
  tr.n = n;
  tr.dt = beta.dt;
  for (std::size_t i = 0; i < beta.steps(); ++i) {
    double rb = beta.q[i][2], rbd = beta.qdot[i][2], rbdd = beta.qddot[i][2];
    RVec q(static_cast<std::size_t>(n), 0.0), qd(q), qdd(q);
    for (int c = 0; c < 2; ++c) {
      q[c] = beta.q[i][c];
      qd[c] = beta.qdot[i][c];
      qdd[c] = beta.qddot[i][c];
    }
    for (int j = 3; j <= n; ++j) {
      double a = spec.amplitudes[j - 3];
      bool fr = spec.follows_r[j - 3];
      q[j - 1] = a * (fr ? rb : 1.0);
      qd[j - 1] = fr ? a * rbd : 0.0;
      qdd[j - 1] = fr ? a * rbdd : 0.0;
    }
    push_step(tr, jet, beta.t[i], q, qd, qdd);
  }
  out.traj = std::move(tr);
  return out;
}

DiagonalLiftResult lift_M_to_L(const GeodesicTrajectory& gamma, const std::vector<cplx>& lambda_poly,
                               double tol) {
  if (gamma.space != Space::M) throw domain_error("lift_M_to_L: base curve must be anchored");
  if (!residuals_M(gamma).pass(tol))
    throw domain_error("lift_M_to_L: base curve does not verify as a geodesic");
  int n = gamma.n;
  ChartJet mjet{Space::M, n};
  ChartJet jet{Space::L, n};
  auto eval = [&](double t, int deriv) {
    cplx s = 0.0;
    for (std::size_t k = deriv; k < lambda_poly.size(); ++k) {
      double coef = 1.0;
      for (int d = 0; d < deriv; ++d) coef *= static_cast<double>(k - d);
      s += lambda_poly[k] * coef * std::pow(t, static_cast<double>(k - deriv));
    }
    return s;
  };
  DiagonalLiftResult out;
  GeodesicTrajectory tr;
  tr.space = Space::L;
  tr.n = n;
  tr.dt = gamma.dt;
  for (std::size_t i = 0; i < gamma.steps(); ++i) {
    double t = gamma.t[i];
    cplx l0 = eval(t, 0), l1 = eval(t, 1), l2 = eval(t, 2);
    out.max_lambda_accel = std::max(out.max_lambda_accel, std::abs(l2));
    RVec q = gamma.q[i], qd = gamma.qdot[i], qdd = gamma.qddot[i];
    q.push_back(l0.real());
    q.push_back(l0.imag());
    qd.push_back(l1.real());
    qd.push_back(l1.imag());
    qdd.push_back(l2.real());
    qdd.push_back(l2.imag());
    push_step(tr, jet, t, q, qd, qdd);
    CVec acc = mjet.acceleration(gamma.q[i], gamma.qdot[i], gamma.qddot[i]);
    out.max_diag_pairing =
        std::max({out.max_diag_pairing, std::abs(inner(acc, diag_vec(n, cplx(1.0, 0.0)))),
                  std::abs(inner(acc, diag_vec(n, cplx(0.0, 1.0))))});
  }
  out.traj = std::move(tr);
  out.verdict = out.max_lambda_accel <= tol && out.max_diag_pairing <= tol;
  return out;
}

SurveyReport geodesic_survey(Space space, int n, int trials, double t_final, double dt,
                             std::uint64_t seed) {
  SurveyReport rep;
  rep.space = space;
  rep.n = n;
  rep.trials = trials;
  rep.t_final = t_final;
  rep.dt = dt;
  rep.seed = seed;
  Rng rng(seed);
  ChartJet jet{space, n};
  int d = jet.dim();
  for (int trial = 0; trial < trials; ++trial) {
    RVec q0(static_cast<std::size_t>(d), 0.0), v0(q0);
    do {
      q0[0] = rng.uniform(-1.5, 1.5);
      q0[1] = rng.uniform(-1.5, 1.5);
    } while (std::hypot(q0[0], q0[1]) < 0.4);
    for (int i = 2; i < d; ++i) q0[i] = rng.uniform(-1.0, 1.0);
    double v2 = 0.0;
    for (int i = 0; i < d; ++i) {
      v0[i] = rng.uniform(-1.0, 1.0);
      v2 += v0[i] * v0[i];
    }
    for (int i = 0; i < d; ++i) v0[i] /= std::sqrt(v2);
    GeodesicTrajectory tr = integrate_geodesic(space, n, q0, v0, t_final, dt);
    SurveyTrial st;
    st.index = static_cast<std::uint64_t>(trial);
    st.status = tr.status;
    if (tr.status != TrajStatus::Completed) {
      ++rep.halted_count;
    } else {
      st.straight = is_straight(tr);
      for (std::size_t i = 0; i < tr.steps(); ++i) {
        st.max_drift = std::max(st.max_drift, std::abs(tr.k0[i] - tr.k0[0]));
        st.max_drift = std::max(st.max_drift, std::abs(tr.k1[i] - tr.k1[0]));
        for (std::size_t j = 0; j < tr.kj[i].size(); ++j)
          st.max_drift = std::max(st.max_drift, std::abs(tr.kj[i][j] - tr.kj[0][j]));
      }
      (st.straight ? rep.straight_count : rep.curved_count)++;
      rep.max_drift = std::max(rep.max_drift, st.max_drift);
    }
    rep.per_trial.push_back(st);
  }
  return rep;
}

std::string trajectory_csv(const GeodesicTrajectory& traj) {
  std::string s = "t,x,y";
  for (int j = 3; j <= traj.n; ++j) s += ",r" + std::to_string(j);
  if (traj.space == Space::L) s += ",u,v";
  s += ",k0,k1";
  for (int j = 3; j <= traj.n; ++j) s += ",k" + std::to_string(j);
  s += "\n";
  char buf[40];
  auto emit = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    s += buf;
  };
  for (std::size_t i = 0; i < traj.steps(); ++i) {
    emit(traj.t[i]);
    for (double x : traj.q[i]) {
      s += ',';
      emit(x);
    }
    s += ',';
    emit(traj.k0[i]);
    s += ',';
    emit(traj.k1[i]);
    for (double x : traj.kj[i]) {
      s += ',';
      emit(x);
    }
    s += '\n';
  }
  return s;
}

std::string survey_json(const SurveyReport& r) {
  char buf[96];
  std::string s = "{";
  s += "\"space\": \"" + std::string(r.space == Space::M ? "M" : "L") + "\"";
  s += ", \"n\": " + std::to_string(r.n);
  s += ", \"trials\": " + std::to_string(r.trials);
  std::snprintf(buf, sizeof buf, ", \"t_final\": %.17g, \"dt\": %.17g", r.t_final, r.dt);
  s += buf;
  s += ", \"seed\": " + std::to_string(r.seed);
  s += ", \"straight\": " + std::to_string(r.straight_count);
  s += ", \"curved\": " + std::to_string(r.curved_count);
  s += ", \"halted\": " + std::to_string(r.halted_count);
  std::snprintf(buf, sizeof buf, ", \"max_drift\": %.17g", r.max_drift);
  s += buf;
  s += ", \"trials_detail\": [";
  for (std::size_t i = 0; i < r.per_trial.size(); ++i) {
    const SurveyTrial& t = r.per_trial[i];
    if (i) s += ", ";
    s += "{\"trial\": " + std::to_string(t.index);
    s += ", \"straight\": " + std::string(t.straight ? "true" : "false");
    std::snprintf(buf, sizeof buf, ", \"max_drift\": %.17g", t.max_drift);
    s += buf;
    s += ", \"status\": \"";
    s += (t.status == TrajStatus::Completed
              ? "completed"
              : (t.status == TrajStatus::ChartExit ? "chart_exit" : "metric_ill_conditioned"));
    s += "\"}";
  }
  s += "]}";
  return s;
}

}  // namespace segspace
