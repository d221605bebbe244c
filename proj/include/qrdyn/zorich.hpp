#pragma once

#include "qrdyn/geometry.hpp"
#include "qrdyn/vec3.hpp"

namespace qrdyn {

class DynMap;

/// Result of folding a coordinate into the fundamental square period.
/// fold is 4-periodic and continuous in the folded value; the parity counts
/// reflections mod 2.
struct FoldResult {
    double folded;  // in [-1, 1]
    int parity;     // 0 or 1
};

/// Folds t into [-1, 3) mod 4 and reflects (1, 3) across 1. Ties at the
/// reflection boundaries (t = 1 mod 2) take parity from the left.
FoldResult fold(double t);

struct SquareIndex {
    int m = 0, n = 0;
};

/// Point of the fundamental beam [-1,3] x [-1,1] x R of the inverse branch.
struct BeamPoint {
    Vec3 p;
};

/// Square-to-pyramid map (u1, u2) -> (u1, u2, 1 - max(|u1|, |u2|)).
Vec3 pyramid_h(double u1, double u2);

/// The Zorich map. Throws std::range_error for x3 > 700 (exp overflow).
Vec3 zorich_eval(const Vec3& x);

/// Inverse branch mapping R^3 minus the origin onto the fundamental beam:
/// {y3 >= 0} to [-1,1]^2 x R and {y3 < 0} to [1,3] x [-1,1] x R. Total and
/// a right inverse of zorich_eval everywhere.
BeamPoint zorich_inverse(const Vec3& y);

/// min/max of |pyramid_h| over the square, located by grid scan plus local
/// refinement to 1e-8.
struct ModulusConstants {
    double c1, c2;
    std::array<double, 2> argmin, argmax;
};
const ModulusConstants& modulus_constants();

enum class ZorichGenerator { T1, T2, Rpi };

/// Generators of the automorphy group: the two translations by 4 and the
/// half-turn about the vertical line through (1,1).
Vec3 automorphy_group_apply(ZorichGenerator g, const Vec3& x);

/// Image under f of the four triangles joining the edges of the square
/// [2m-1,2m+1] x [2n-1,2n+1] x {s} to its center. Exact on maps that are
/// piecewise linear on the slice; refuses the interpolation band of the
/// ramped map (0 < s < T).
TriMesh slice_mesh(const DynMap& f, SquareIndex sq, double s);

}  // namespace qrdyn
