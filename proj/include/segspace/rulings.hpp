#pragma once

#include <string>
#include <vector>

#include "segspace/linalg.hpp"
#include "segspace/segment.hpp"
#include "segspace/types.hpp"

namespace segspace {

/// Basis of the tangent space at a point, as ambient vectors. The anchored
/// space gets the n pairwise orthogonal vectors {iZ, z e_2, ..., z e_n}; the
/// translated space appends the two diagonal directions (1,...,1), (i,...,i)
/// and is merely linearly independent.
struct TangentFrame {
  Space space = Space::M;
  PolyPoint base;
  std::vector<CVec> vectors;
};

TangentFrame tangent_basis_M(const PolyPoint& Z, int k, double tol = kCollinearTol);
TangentFrame tangent_basis_L(const PolyPoint& Zhat, int k, double tol = kCollinearTol);

/// An ambient straight line t -> point + t * direction.
struct Line {
  CVec point;
  CVec direction;
  CVec at(double t) const {
    CVec r(point.size());
    for (std::size_t j = 0; j < point.size(); ++j) r[j] = point[j] + t * direction[j];
    return r;
  }
};

/// Closed-form test that the whole segment (1-t) Z + t W, t in [0,1], stays
/// inside the manifold: W must lie in the scaled copy or in the real-profile
/// copy attached to Z, away from the ray {r Z : r <= 0} (translated test for
/// the space of unanchored segments).
bool segment_in_manifold(const PolyPoint& Z, const PolyPoint& W, Space space,
                         double tol = kCollinearTol);

/// Independent oracle: collinearity on a uniform grid of interior sample
/// points, plus a closed-form check that the segment does not cross the
/// deleted locus (the zero point, resp. the diagonal) between samples.
bool segment_in_manifold_sampled(const PolyPoint& Z, const PolyPoint& W, Space space,
                                 int samples = 64, double tol = kCollinearTol);

/// n straight lines through Z contained in the anchored space, with pairwise
/// orthogonal directions spanning the tangent space.
std::vector<Line> ruling_lines_M(const PolyPoint& Z, double tol = kCollinearTol);

/// n+2 straight lines through Zhat contained in the translated space, with
/// directions of full rank (the n+1 profile/diagonal ones mutually orthogonal).
std::vector<Line> ruling_lines_L(const PolyPoint& Zhat, double tol = kCollinearTol);

enum class SubspaceKind { CStar, RealProfile, Diagonal };

/// One of the three flat pieces attached to a point Z + b: all complex
/// multiples of Z, all real reprofilings of Z, or all diagonal translates.
struct RulingSubspace {
  SubspaceKind kind = SubspaceKind::CStar;
  PolyPoint anchor;          // the anchored part Z (first coordinate 0)
  cplx base = 0.0;           // translation b
  std::string excluded;      // description of the removed set

  /// Parameterized sample; the meaning of (s, t) depends on the kind:
  /// CStar: lambda = s + it; RealProfile: profile shift s * d1 + t * d2 along
  /// two fixed seed directions; Diagonal: omega = s + it.
  PolyPoint at(double s, double t) const;

  bool contains(const PolyPoint& P, double tol = kCollinearTol) const;
};

RulingSubspace make_subspace(SubspaceKind kind, const PolyPoint& Z, cplx b);

}  // namespace segspace
