#include "segspace/rulings.hpp"

#include <algorithm>
#include <cmath>

#include "segspace/segment.hpp"

namespace segspace {

namespace {

void require_in_M(const PolyPoint& Z, double tol, const char* who) {
  double scale = max_abs(Z.vertices);
  if (scale == 0.0 || std::abs(Z[0]) > tol * scale || !is_n_segment(Z, tol))
    throw membership_error(std::string(who) + ": point is not an anchored segment");
}

void require_in_L(const PolyPoint& Z, double tol, const char* who) {
  if (!is_n_segment(Z, tol))
    throw membership_error(std::string(who) + ": point is not an n-segment");
  double reach = 0.0;
  for (int j = 1; j < Z.n(); ++j) reach = std::max(reach, std::abs(Z[j] - Z[0]));
  if (reach <= tol * std::max(1.0, max_abs(Z.vertices)))
    throw degenerate_error(std::string(who) + ": diagonal point");
}

// Z = zeta (0, c_2, ..., c_n) with zeta unit: returns (zeta, c).
std::pair<cplx, RVec> anchored_rep(const PolyPoint& Z) {
  int k = 1;
  for (int j = 2; j < Z.n(); ++j)
    if (std::abs(Z[j]) > std::abs(Z[k])) k = j;
  cplx zeta = std::polar(1.0, theta(Z[k]));
  RVec c(static_cast<std::size_t>(Z.n()) - 1);
  for (int j = 1; j < Z.n(); ++j) c[j - 1] = dot2(Z[j], zeta);
  return {zeta, c};
}

double rdot(const RVec& a, const RVec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double rnorm(const RVec& a) { return std::sqrt(rdot(a, a)); }

// Orthonormal basis of R^m whose first vector is u1 (unit), completed by
// Gram-Schmidt over the canonical seed basis.
std::vector<RVec> complete_onb(const RVec& u1) {
  std::size_t m = u1.size();
  std::vector<RVec> basis{u1};
  for (std::size_t s = 0; s < m && basis.size() < m; ++s) {
    RVec v(m, 0.0);
    v[s] = 1.0;
    for (const RVec& b : basis) {
      double p = rdot(v, b);
      for (std::size_t i = 0; i < m; ++i) v[i] -= p * b[i];
    }
    double nv = rnorm(v);
    if (nv > 1e-8) {
      for (double& x : v) x /= nv;
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

// Ambient vector zeta (0, d_2, ..., d_n).
CVec profile_vec(int n, cplx zeta, const RVec& d) {
  CVec v(static_cast<std::size_t>(n), 0.0);
  for (int j = 1; j < n; ++j) v[j] = zeta * d[j - 1];
  return v;
}

CVec normalized(CVec v) {
  double nv = norm(v);
  for (auto& z : v) z /= nv;
  return v;
}

// Does the affine segment (1-t) A + t B, t in (0,1), pass through 0 (up to tol)?
bool crosses_zero(const CVec& A, const CVec& B, double tol) {
  CVec D = sub(B, A);
  double d2 = norm2(D);
  if (d2 == 0.0) return false;
  double t = -inner(A, D) / d2;
  if (t <= 0.0 || t >= 1.0) return false;
  CVec P(A.size());
  for (std::size_t j = 0; j < A.size(); ++j) P[j] = A[j] + t * D[j];
  double scale = std::max(norm(A), norm(B));
  return norm(P) <= tol * std::max(scale, 1e-300);
}

CVec remove_diagonal(const CVec& V) {
  cplx mean = 0.0;
  for (const cplx& z : V) mean += z;
  mean /= static_cast<double>(V.size());
  CVec r(V.size());
  for (std::size_t j = 0; j < V.size(); ++j) r[j] = V[j] - mean;
  return r;
}

// least-squares complex factor lambda with W ~ lambda Z, plus the relative residual
std::pair<cplx, double> complex_fit(const CVec& W, const CVec& Z) {
  cplx num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < Z.size(); ++j) {
    num += W[j] * std::conj(Z[j]);
    den += std::norm(Z[j]);
  }
  cplx lambda = num / den;
  double r2 = 0.0;
  for (std::size_t j = 0; j < Z.size(); ++j) r2 += std::norm(W[j] - lambda * Z[j]);
  double scale = std::max(norm(W), std::abs(lambda) * std::sqrt(den));
  return {lambda, std::sqrt(r2) / std::max(scale, 1e-300)};
}

bool all_on_line(const CVec& W, cplx zeta, double tol) {
  double scale = std::max(max_abs(W), 1e-300);
  for (const cplx& w : W) {
    cplx q = w * std::conj(zeta);
    if (std::abs(q.imag()) > tol * scale) return false;
  }
  return true;
}

bool in_M_predicate(const PolyPoint& Z, const PolyPoint& W, double tol) {
  auto [zeta, c] = anchored_rep(Z);
  (void)c;
  bool in_rprofile = all_on_line(W.vertices, zeta, tol);
  auto [lambda, resid] = complex_fit(W.vertices, Z.vertices);
  bool in_cstar = resid <= tol && std::abs(lambda) > tol;
  if (!in_rprofile && !in_cstar) return false;
  if (in_cstar && std::abs(lambda.imag()) <= tol * std::abs(lambda) && lambda.real() <= 0.0)
    return false;   // the ray r Z with r <= 0 leaves the manifold through 0
  return true;
}

}  // namespace

TangentFrame tangent_basis_M(const PolyPoint& Z, int k, double tol) {
  require_in_M(Z, tol, "tangent_basis_M");
  if (k < 2 || k > Z.n()) throw domain_error("tangent_basis_M: chart index out of range");
  cplx zeta = Z[k - 1];
  if (std::abs(zeta) <= tol * std::max(max_abs(Z.vertices), 1e-300))
    throw chart_error("tangent_basis_M: vertex " + std::to_string(k) + " vanishes",
                      admissible_charts(Z, Space::M, tol));
  TangentFrame f;
  f.space = Space::M;
  f.base = Z;
  f.vectors.push_back(scale(cplx(0.0, 1.0), Z.vertices));
  for (int slot = 2; slot <= Z.n(); ++slot) {
    CVec e(static_cast<std::size_t>(Z.n()), 0.0);
    e[slot - 1] = zeta;
    f.vectors.push_back(std::move(e));
  }
  return f;
}

TangentFrame tangent_basis_L(const PolyPoint& Zhat, int k, double tol) {
  require_in_L(Zhat, tol, "tangent_basis_L");
  auto [Z, b] = split_L(Zhat, tol);
  (void)b;
  TangentFrame f = tangent_basis_M(Z, k, tol);
  f.space = Space::L;
  f.base = Zhat;
  f.vectors.push_back(diag_vec(Zhat.n(), cplx(1.0, 0.0)));
  f.vectors.push_back(diag_vec(Zhat.n(), cplx(0.0, 1.0)));
  return f;
}

bool segment_in_manifold(const PolyPoint& Z, const PolyPoint& W, Space space, double tol) {
  if (Z.n() != W.n()) throw domain_error("segment_in_manifold: size mismatch");
  if (space == Space::M) {
    require_in_M(Z, tol, "segment_in_manifold");
    require_in_M(W, tol, "segment_in_manifold");
    return in_M_predicate(Z, W, tol);
  }
  require_in_L(Z, tol, "segment_in_manifold");
  require_in_L(W, tol, "segment_in_manifold");
  auto [Za, zb] = split_L(Z, tol);
  auto [Wa, wb] = split_L(W, tol);
  (void)zb;
  (void)wb;
  return in_M_predicate(Za, Wa, tol);
}

bool segment_in_manifold_sampled(const PolyPoint& Z, const PolyPoint& W, Space space,
                                 int samples, double tol) {
  if (Z.n() != W.n()) throw domain_error("segment_in_manifold_sampled: size mismatch");
  for (int i = 1; i <= samples; ++i) {
    double t = static_cast<double>(i) / (samples + 1);
    CVec P(Z.vertices.size());
    for (std::size_t j = 0; j < P.size(); ++j) P[j] = (1.0 - t) * Z[j] + t * W[j];
    if (!is_n_segment(PolyPoint(std::move(P)), tol)) return false;
  }
  // a grid cannot see the one-point failure mode, so check the crossing of
  // the deleted locus in closed form
  if (space == Space::M) {
    if (crosses_zero(Z.vertices, W.vertices, tol)) return false;
  } else {
    if (crosses_zero(remove_diagonal(Z.vertices), remove_diagonal(W.vertices), tol))
      return false;
  }
  return true;
}

std::vector<Line> ruling_lines_M(const PolyPoint& Z, double tol) {
  require_in_M(Z, tol, "ruling_lines_M");
  auto [zeta, c] = anchored_rep(Z);
  RVec chat = c;
  double nc = rnorm(chat);
  for (double& x : chat) x /= nc;
  std::vector<RVec> u = complete_onb(chat);
  // the direction parallel to the profile would run the line through 0;
  // mixing the first two basis vectors at 45 degrees keeps orthogonality
  // and moves every direction off the profile ray
  RVec v1(u[0].size()), v2(u[0].size());
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < u[0].size(); ++i) {
    v1[i] = (u[0][i] + u[1][i]) * inv_sqrt2;
    v2[i] = (u[0][i] - u[1][i]) * inv_sqrt2;
  }
  u[0] = v1;
  u[1] = v2;
  std::vector<Line> lines;
  for (const RVec& d : u)
    lines.push_back({Z.vertices, profile_vec(Z.n(), zeta, d)});
  lines.push_back({Z.vertices, normalized(scale(cplx(0.0, 1.0), Z.vertices))});
  return lines;
}

std::vector<Line> ruling_lines_L(const PolyPoint& Zhat, double tol) {
  require_in_L(Zhat, tol, "ruling_lines_L");
  auto [Z, b] = split_L(Zhat, tol);
  (void)b;
  auto [zeta, c] = anchored_rep(Z);
  int n = Zhat.n();
  RVec chat = c;
  double nc = rnorm(chat);
  for (double& x : chat) x /= nc;
  std::vector<RVec> u = complete_onb(chat);

  // orthonormal basis of the span of profile and diagonal directions
  std::vector<CVec> w;
  for (const RVec& d : u) w.push_back(profile_vec(n, zeta, d));
  for (cplx one : {cplx(1.0, 0.0), cplx(0.0, 1.0)}) {
    CVec v = diag_vec(n, one);
    for (const CVec& prev : w) {
      double p = inner(v, prev);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= p * prev[j];
    }
    w.push_back(normalized(std::move(v)));
  }

  // profile component of a direction in this span; the first ambient
  // coordinate of the profile part is 0, so the diagonal part is v[0]
  auto profile_of = [&](const CVec& v) {
    RVec d(static_cast<std::size_t>(n) - 1);
    for (int j = 1; j < n; ++j) d[j - 1] = dot2(v[j] - v[0], zeta);
    return d;
  };
  auto perp_part = [&](const RVec& d) {
    double p = rdot(d, chat);
    double s = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      double x = d[i] - p * chat[i];
      s += x * x;
    }
    return std::sqrt(s);
  };
  auto offender = [&](const CVec& v) {
    RVec d = profile_of(v);
    return rnorm(d) > 1e-8 && perp_part(d) <= 1e-8;
  };
  auto clean = [&](const CVec& v) { return perp_part(profile_of(v)) > 1e-8; };

  // a direction parallel to the profile would cross the diagonal; rotate each
  // such vector against a clean partner by 45 degrees
  for (std::size_t kk = 0; kk < w.size(); ++kk) {
    if (!offender(w[kk])) continue;
    std::size_t partner = w.size();
    for (std::size_t m = 0; m < w.size(); ++m)
      if (m != kk && clean(w[m])) { partner = m; break; }
    if (partner == w.size())
      throw domain_error("ruling_lines_L: no clean partner direction");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CVec p = w[kk], q = w[partner];
    for (std::size_t j = 0; j < p.size(); ++j) {
      cplx pj = p[j], qj = q[j];
      w[kk][j] = (pj + qj) * inv_sqrt2;
      w[partner][j] = (pj - qj) * inv_sqrt2;
    }
  }

  std::vector<Line> lines;
  for (const CVec& d : w) lines.push_back({Zhat.vertices, d});
  lines.push_back({Zhat.vertices, normalized(scale(cplx(0.0, 1.0), Z.vertices))});
  return lines;
}

RulingSubspace make_subspace(SubspaceKind kind, const PolyPoint& Z, cplx b) {
  require_in_M(Z, kCollinearTol, "make_subspace");
  RulingSubspace s;
  s.kind = kind;
  s.anchor = Z;
  s.base = b;
  switch (kind) {
    case SubspaceKind::CStar: s.excluded = "lambda = 0"; break;
    case SubspaceKind::RealProfile: s.excluded = "profile = 0"; break;
    case SubspaceKind::Diagonal: s.excluded = "(none)"; break;
  }
  return s;
}

PolyPoint RulingSubspace::at(double s, double t) const {
  int n = anchor.n();
  switch (kind) {
    case SubspaceKind::CStar: {
      cplx lambda(s, t);
      if (lambda == cplx(0.0, 0.0)) throw domain_error("RulingSubspace: lambda = 0 excluded");
      return PolyPoint(add(scale(lambda, anchor.vertices), diag_vec(n, base)));
    }
    case SubspaceKind::RealProfile: {
      auto [zeta, c] = anchored_rep(anchor);
      RVec d = c;
      d[0] += s;
      if (d.size() > 1) d[1] += t;
      if (rnorm(d) == 0.0) throw domain_error("RulingSubspace: zero profile excluded");
      return PolyPoint(add(profile_vec(n, zeta, d), diag_vec(n, base)));
    }
    case SubspaceKind::Diagonal:
    default:
      return PolyPoint(add(anchor.vertices, diag_vec(n, base + cplx(s, t))));
  }
}

bool RulingSubspace::contains(const PolyPoint& P, double tol) const {
  if (P.n() != anchor.n()) return false;
  CVec Q = sub(P.vertices, diag_vec(P.n(), base));
  switch (kind) {
    case SubspaceKind::CStar: {
      auto [lambda, resid] = complex_fit(Q, anchor.vertices);
      return resid <= tol && std::abs(lambda) > tol;
    }
    case SubspaceKind::RealProfile: {
      auto [zeta, c] = anchored_rep(anchor);
      (void)c;
      double scale = std::max(max_abs(Q), 1e-300);
      if (std::abs(Q[0]) > tol * scale) return false;
      return all_on_line(Q, zeta, tol) && max_abs(Q) > tol * scale;
    }
    case SubspaceKind::Diagonal:
    default: {
      CVec D = sub(Q, anchor.vertices);
      double scale = std::max({max_abs(P.vertices), max_abs(anchor.vertices), 1.0});
      for (const cplx& d : D)
        if (std::abs(d - D[0]) > tol * scale) return false;
      return true;
    }
  }
}

}  // namespace segspace
