#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace segspace {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;   // points and tangent vectors of C^n
using RVec = std::vector<double>;

enum class Space { M, L };

// Precondition violations on plain values.
struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input is not a member of the manifold it was claimed to lie in.
struct membership_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Zero-length (diagonal) segment where a direction is required.
struct degenerate_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Point outside a chart's domain; carries the chart indices that would work.
struct chart_error : std::runtime_error {
  std::vector<int> admissible;
  chart_error(const std::string& what, std::vector<int> ks)
      : std::runtime_error(what), admissible(std::move(ks)) {}
};

/// An n-gon as a point of C^n, one complex coordinate per labeled vertex.
struct PolyPoint {
  CVec vertices;

  PolyPoint() = default;
  explicit PolyPoint(CVec vs) : vertices(std::move(vs)) {
    if (vertices.size() < 3)
      throw domain_error("PolyPoint needs at least 3 vertices");
    for (const cplx& z : vertices)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw domain_error("PolyPoint has a non-finite vertex");
  }

  int n() const { return static_cast<int>(vertices.size()); }
  const cplx& operator[](std::size_t j) const { return vertices[j]; }
  cplx& operator[](std::size_t j) { return vertices[j]; }
};

// Real pairing of a, b in C ~ R^2.
inline double dot2(cplx a, cplx b) {
  return a.real() * b.real() + a.imag() * b.imag();
}

// <<Z,W>> = sum_j dot2(z_j, w_j): the inner product of C^n viewed as R^{2n}.
inline double inner(const CVec& a, const CVec& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += dot2(a[j], b[j]);
  return s;
}

inline double norm2(const CVec& a) { return inner(a, a); }
inline double norm(const CVec& a) { return std::sqrt(norm2(a)); }

inline double max_abs(const CVec& a) {
  double m = 0.0;
  for (const cplx& z : a) m = std::max(m, std::abs(z));
  return m;
}

inline CVec add(const CVec& a, const CVec& b) {
  CVec r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j] + b[j];
  return r;
}

inline CVec sub(const CVec& a, const CVec& b) {
  CVec r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j] - b[j];
  return r;
}

inline CVec scale(cplx s, const CVec& a) {
  CVec r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) r[j] = s * a[j];
  return r;
}

// (b, b, ..., b): the diagonal point of C^n over b.
inline CVec diag_vec(int n, cplx b) { return CVec(static_cast<std::size_t>(n), b); }

inline double rel_err(const CVec& got, const CVec& want) {
  double scale = std::max(1e-300, norm(want));
  return norm(sub(got, want)) / scale;
}

/// Decomposition Z = a*X + (b,...,b) of an n-segment: unit direction a with
/// angle in [0, pi), real profile X with first coordinate 0, translation b.
struct SegmentWitness {
  cplx base = 0.0;
  cplx direction = 1.0;
  RVec profile;   // length n, profile[0] == 0

  CVec reconstruct() const {
    CVec r(profile.size());
    for (std::size_t j = 0; j < profile.size(); ++j)
      r[j] = direction * profile[j] + base;
    return r;
  }
};

/// Coordinates (X, theta) of the mapping-torus model of the space of
/// segments anchored at 0: X a nonzero real (n-1)-vector, theta in [0, pi).
/// The glued pair (X, pi) is always folded to (-X, 0).
struct MappingTorusCoord {
  RVec profile;   // length n-1
  double theta = 0.0;
};

/// Chart coordinates around a point whose k-th vertex is normalized to 1.
/// Layout: (r_2,...,r_{k-1}, x, y, r_{k+1},...,r_n) and for the translated
/// space two extra slots (u, v) for the base point b = u + iv.
struct ChartCoord {
  Space space = Space::M;
  int k = 2;
  RVec coords;

  int n() const {
    return static_cast<int>(coords.size()) - (space == Space::L ? 2 : 0);
  }
};

}  // namespace segspace
