#pragma once

#include <string>
#include <utility>
#include <vector>

#include "segspace/types.hpp"

namespace segspace {

/// Default relative tolerance for collinearity and membership decisions.
inline constexpr double kCollinearTol = 1e-10;

/// True when all vertices of Z lie on one line of the plane, decided by the
/// second singular value of the 2 x (n-1) matrix of differences z_j - z_1
/// relative to the first. Points with all vertices equal count as segments.
bool is_n_segment(const PolyPoint& Z, double tol = kCollinearTol);

/// Angle of the line through 0 spanned by z: 0 for positive reals, pi for
/// negative reals, arg(z) above the real axis, arg(-z) below it.
double theta(cplx z);

/// Mapping-torus chart: (X, theta) -> (0, e^{i theta} X_1, ..., e^{i theta} X_{n-1}).
PolyPoint psi(const MappingTorusCoord& c);

/// Inverse chart. Picks the coordinate of largest modulus to read the angle
/// and folds an angle of pi back to (-X, 0).
MappingTorusCoord psi_inv(const PolyPoint& Z, double tol = kCollinearTol);

/// Splits a segment into anchored part and translation,
/// (z_1, ..., z_n) -> ((0, z_2 - z_1, ..., z_n - z_1), z_1).
std::pair<PolyPoint, cplx> split_L(const PolyPoint& Zhat, double tol = kCollinearTol);

/// Inverse of split_L.
PolyPoint join_L(const PolyPoint& Z, cplx b);

/// 1-based indices of the vertices at the two extremes of the segment
/// (several vertices may share an extreme). Rejects diagonal input.
std::vector<int> ends(const PolyPoint& Z, double tol = kCollinearTol);

/// Affine representative with the least-index extreme vertices moved to 0
/// and 1: (Z - z_m) / (z_M - z_m).
PolyPoint normalize_ends(const PolyPoint& Z, double tol = kCollinearTol);

/// Full decomposition Z = a X + b of a segment (direction angle in [0, pi)).
SegmentWitness segment_witness(const PolyPoint& Zhat, double tol = kCollinearTol);

/// Chart point -> ambient point, z (0, r_2, ..., 1@k, ..., r_n) [+ b].
PolyPoint chart_to_point(const ChartCoord& c);

/// Ambient point -> chart coordinates around vertex k. Throws chart_error
/// listing the admissible k when vertex k (relative to the base) vanishes.
ChartCoord point_to_chart(const PolyPoint& Z, int k, Space space,
                          double tol = kCollinearTol);

/// Chart indices k usable for Z (vertices nonzero relative to the base).
std::vector<int> admissible_charts(const PolyPoint& Z, Space space,
                                   double tol = kCollinearTol);

/// JSON of the exact shape {"n": 5, "vertices": [[re, im], ...]}.
PolyPoint polypoint_from_json(const std::string& text);
std::string polypoint_to_json(const PolyPoint& Z);

}  // namespace segspace
