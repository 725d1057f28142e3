#include "segspace/segment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace segspace {

namespace {

struct LineFit {
  double s1 = 0.0;        // largest singular value of the difference matrix
  double off_line = 0.0;  // residual orthogonal to the dominant direction
  cplx dir{1.0, 0.0};     // unit dominant direction
};

// Fits the best line through the vertices. The dominant direction comes from
// the 2x2 Gram matrix of the differences z_j - z_1 (well conditioned when the
// point is near-collinear); the small singular value is then re-accumulated
// in the data space, since the Gram eigenvalue formula cancels away half the
// digits exactly in the collinear case of interest.
LineFit fit_line(const PolyPoint& Z) {
  double a = 0.0, b = 0.0, c = 0.0;
  for (int j = 1; j < Z.n(); ++j) {
    cplx d = Z[j] - Z[0];
    a += d.real() * d.real();
    b += d.real() * d.imag();
    c += d.imag() * d.imag();
  }
  double mean = 0.5 * (a + c);
  double disc = std::sqrt(std::max(0.0, 0.25 * (a - c) * (a - c) + b * b));
  double l1 = mean + disc;
  LineFit fit;
  if (l1 <= 0.0) return fit;   // diagonal point
  fit.s1 = std::sqrt(l1);
  cplx v1(b, l1 - a), v2(l1 - c, b);
  cplx v = std::abs(v1) >= std::abs(v2) ? v1 : v2;
  if (std::abs(v) == 0.0) v = cplx(1.0, 0.0);   // isotropic spread
  fit.dir = v / std::abs(v);
  double r2 = 0.0;
  for (int j = 1; j < Z.n(); ++j) {
    cplx d = Z[j] - Z[0];
    double t = d.imag() * fit.dir.real() - d.real() * fit.dir.imag();
    r2 += t * t;
  }
  fit.off_line = std::sqrt(r2);
  return fit;
}

// Unit direction of the segment through the vertices. Requires a non-diagonal point.
cplx segment_direction(const PolyPoint& Z, double tol) {
  LineFit fit = fit_line(Z);
  if (fit.s1 <= tol * std::max(1.0, max_abs(Z.vertices)))
    throw degenerate_error("segment has zero length (diagonal point)");
  return fit.dir;
}

}  // namespace

bool is_n_segment(const PolyPoint& Z, double tol) {
  if (tol < 0.0) throw domain_error("is_n_segment: negative tolerance");
  LineFit fit = fit_line(Z);
  if (fit.s1 == 0.0) return true;   // diagonal point
  return fit.off_line <= tol * fit.s1;
}

double theta(cplx z) {
  if (z == cplx(0.0, 0.0)) throw domain_error("theta: z = 0");
  if (z.imag() > 0.0) return std::arg(z);
  if (z.imag() < 0.0) return std::arg(-z);
  return z.real() > 0.0 ? 0.0 : std::acos(-1.0);
}

PolyPoint psi(const MappingTorusCoord& c) {
  if (c.profile.size() < 2) throw domain_error("psi: profile needs at least 2 entries");
  bool all_zero = true;
  for (double x : c.profile)
    if (x != 0.0) { all_zero = false; break; }
  if (all_zero) throw domain_error("psi: zero profile");
  cplx rot = std::polar(1.0, c.theta);
  CVec out(c.profile.size() + 1);
  out[0] = 0.0;
  for (std::size_t j = 0; j < c.profile.size(); ++j) out[j + 1] = rot * c.profile[j];
  return PolyPoint(std::move(out));
}

MappingTorusCoord psi_inv(const PolyPoint& Z, double tol) {
  double scale = max_abs(Z.vertices);
  if (scale == 0.0) throw domain_error("psi_inv: zero point");
  if (std::abs(Z[0]) > tol * scale || !is_n_segment(Z, tol))
    throw membership_error("psi_inv: point is not an anchored segment");
  int k = 1;
  for (int j = 2; j < Z.n(); ++j)
    if (std::abs(Z[j]) > std::abs(Z[k])) k = j;
  double ang = theta(Z[k]);
  cplx rot = std::polar(1.0, -ang);
  MappingTorusCoord c;
  c.profile.resize(Z.n() - 1);
  for (int j = 1; j < Z.n(); ++j) c.profile[j - 1] = (rot * Z[j]).real();
  c.theta = ang;
  double pi = std::acos(-1.0);
  if (c.theta >= pi) {           // fold the glued face (X, pi) ~ (-X, 0)
    for (double& x : c.profile) x = -x;
    c.theta = 0.0;
  }
  return c;
}

std::pair<PolyPoint, cplx> split_L(const PolyPoint& Zhat, double tol) {
  if (!is_n_segment(Zhat, tol))
    throw membership_error("split_L: input is not an n-segment");
  CVec out(Zhat.vertices.size());
  out[0] = 0.0;
  for (int j = 1; j < Zhat.n(); ++j) out[j] = Zhat[j] - Zhat[0];
  return {PolyPoint(std::move(out)), Zhat[0]};
}

PolyPoint join_L(const PolyPoint& Z, cplx b) {
  CVec out(Z.vertices.size());
  for (int j = 0; j < Z.n(); ++j) out[j] = Z[j] + b;
  return PolyPoint(std::move(out));
}

std::vector<int> ends(const PolyPoint& Z, double tol) {
  if (!is_n_segment(Z, tol)) throw membership_error("ends: input is not an n-segment");
  cplx dir = segment_direction(Z, tol);
  RVec t(Z.vertices.size());
  for (int j = 0; j < Z.n(); ++j) t[j] = dot2(Z[j], dir);
  double tmin = *std::min_element(t.begin(), t.end());
  double tmax = *std::max_element(t.begin(), t.end());
  double tie = tol * std::max(tmax - tmin, 1e-300);
  std::vector<int> out;
  for (int j = 0; j < Z.n(); ++j)
    if (t[j] - tmin <= tie) out.push_back(j + 1);
  for (int j = 0; j < Z.n(); ++j)
    if (tmax - t[j] <= tie) out.push_back(j + 1);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PolyPoint normalize_ends(const PolyPoint& Z, double tol) {
  if (!is_n_segment(Z, tol))
    throw membership_error("normalize_ends: input is not an n-segment");
  cplx dir = segment_direction(Z, tol);
  int jmin = 0, jmax = 0;
  for (int j = 1; j < Z.n(); ++j) {
    if (dot2(Z[j], dir) < dot2(Z[jmin], dir)) jmin = j;
    if (dot2(Z[j], dir) > dot2(Z[jmax], dir)) jmax = j;
  }
  cplx zm = Z[jmin], zM = Z[jmax];
  CVec out(Z.vertices.size());
  for (int j = 0; j < Z.n(); ++j) out[j] = (Z[j] - zm) / (zM - zm);
  return PolyPoint(std::move(out));
}

SegmentWitness segment_witness(const PolyPoint& Zhat, double tol) {
  auto [Z, b] = split_L(Zhat, tol);
  SegmentWitness w;
  w.base = b;
  w.profile.assign(Zhat.vertices.size(), 0.0);
  if (max_abs(Z.vertices) == 0.0) {   // diagonal: zero profile, direction 1
    w.direction = 1.0;
    return w;
  }
  MappingTorusCoord c = psi_inv(Z, tol);
  w.direction = std::polar(1.0, c.theta);
  for (std::size_t j = 0; j < c.profile.size(); ++j) w.profile[j + 1] = c.profile[j];
  return w;
}

PolyPoint chart_to_point(const ChartCoord& c) {
  int n = c.n();
  if (n < 3) throw domain_error("chart_to_point: need n >= 3");
  if (c.k < 2 || c.k > n) throw domain_error("chart_to_point: chart index out of range");
  double x = c.coords[c.k - 2], y = c.coords[c.k - 1];
  cplx z(x, y);
  if (z == cplx(0.0, 0.0))
    throw chart_error("chart_to_point: z = 0 is outside every chart", {});
  CVec out(static_cast<std::size_t>(n), 0.0);
  int ci = 0;
  for (int slot = 2; slot <= n; ++slot) {
    if (slot == c.k) {
      out[slot - 1] = z;
      ci += 2;
    } else {
      out[slot - 1] = z * c.coords[ci];
      ci += 1;
    }
  }
  if (c.space == Space::L) {
    cplx b(c.coords[n], c.coords[n + 1]);
    for (auto& v : out) v += b;
  }
  return PolyPoint(std::move(out));
}

std::vector<int> admissible_charts(const PolyPoint& Z, Space space, double tol) {
  cplx base = (space == Space::L) ? Z[0] : cplx(0.0, 0.0);
  double scale = 0.0;
  for (int j = 1; j < Z.n(); ++j) scale = std::max(scale, std::abs(Z[j] - base));
  std::vector<int> ks;
  for (int k = 2; k <= Z.n(); ++k)
    if (std::abs(Z[k - 1] - base) > tol * std::max(scale, 1e-300)) ks.push_back(k);
  return ks;
}

ChartCoord point_to_chart(const PolyPoint& Z, int k, Space space, double tol) {
  if (k < 2 || k > Z.n()) throw domain_error("point_to_chart: chart index out of range");
  if (!is_n_segment(Z, tol))
    throw membership_error("point_to_chart: input is not an n-segment");
  cplx b = 0.0;
  PolyPoint A = Z;
  if (space == Space::L) {
    auto sp = split_L(Z, tol);
    A = sp.first;
    b = sp.second;
  } else if (std::abs(Z[0]) > tol * std::max(max_abs(Z.vertices), 1e-300)) {
    throw membership_error("point_to_chart: first vertex must be 0");
  }
  cplx z = A[k - 1];
  double scale = max_abs(A.vertices);
  if (std::abs(z) <= tol * std::max(scale, 1e-300))
    throw chart_error("point_to_chart: vertex " + std::to_string(k) + " vanishes",
                      admissible_charts(Z, space, tol));
  ChartCoord c;
  c.space = space;
  c.k = k;
  c.coords.reserve(static_cast<std::size_t>(Z.n()) + (space == Space::L ? 2 : 0));
  double zn2 = std::norm(z);
  for (int slot = 2; slot <= Z.n(); ++slot) {
    if (slot == k) {
      c.coords.push_back(z.real());
      c.coords.push_back(z.imag());
    } else {
      // ratio A_slot / z is real for collinear anchored points
      c.coords.push_back(dot2(A[slot - 1], z) / zn2);
    }
  }
  if (space == Space::L) {
    c.coords.push_back(b.real());
    c.coords.push_back(b.imag());
  }
  return c;
}

PolyPoint polypoint_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("n") || !j.contains("vertices"))
    throw domain_error("polypoint json needs fields \"n\" and \"vertices\"");
  int n = j.at("n").get<int>();
  const auto& vs = j.at("vertices");
  if (!vs.is_array() || static_cast<int>(vs.size()) != n)
    throw domain_error("polypoint json: vertex count does not match n");
  CVec out;
  out.reserve(vs.size());
  for (const auto& v : vs) {
    if (!v.is_array() || v.size() != 2)
      throw domain_error("polypoint json: each vertex must be [re, im]");
    out.emplace_back(v[0].get<double>(), v[1].get<double>());
  }
  return PolyPoint(std::move(out));
}

std::string polypoint_to_json(const PolyPoint& Z) {
  std::string s = "{\"n\": " + std::to_string(Z.n()) + ", \"vertices\": [";
  char buf[64];
  for (int j = 0; j < Z.n(); ++j) {
    if (j) s += ", ";
    std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", Z[j].real(), Z[j].imag());
    s += buf;
  }
  s += "]}";
  return s;
}

}  // namespace segspace
