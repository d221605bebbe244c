#pragma once

#include <vector>

#include "qrdyn/dynmap.hpp"
#include "qrdyn/geometry.hpp"
#include "qrdyn/growth.hpp"
#include "qrdyn/zorich.hpp"

namespace qrdyn {

struct OrbitRecord {
    enum class Outcome { escaped, bounded, overflow };
    Vec3 start;
    std::vector<Vec3> points;  // points[0] = start
    Outcome outcome;
    int steps;  // iterate count at escape/overflow, k_max if bounded
};

/// Iterates f until |f^k(x)| > bailout, the evaluation overflows (recorded,
/// not thrown), or k_max is reached.
OrbitRecord orbit(const DynMap& f, const Vec3& x, int k_max, double bailout);

/// Iterated maximum modulus levels R_0 = R, R_{k+1} = Mhat(R_k). Saturates at
/// 1e300 once a level exceeds the evaluation range. Throws if a computable
/// level fails to increase.
struct ThresholdSequence {
    double R;
    std::vector<double> levels;
};

ThresholdSequence threshold_sequence(const DynMap& f, double R, int k,
                                     std::size_t samples = 4096, int refine_steps = 12);

/// True iff |f^k(x)| >= levels[k] for all k <= min(k_max, len-1); overflow
/// counts as escaped.
bool classify_fast_escape(const DynMap& f, const Vec3& x, const ThresholdSequence& ts,
                          int k_max = 24);

/// Directions on the shell |x| = r adjacent (nearest-neighbour graph) to an
/// oppositely classified direction, refined by 20 bisection steps along the
/// connecting geodesic. Empty when the whole shell classifies alike.
std::vector<Direction> julia_proxy_shell(const DynMap& f, double r, std::size_t grid_n,
                                         const ThresholdSequence& ts, int k_max = 24);

struct LimitingDirections {
    DirectionSet set;
    bool empty_status = false;  // no proxy points at any shell
};

/// Union of julia_proxy_shell over the top half of the shells (largest
/// radii). An empty result is a status, not an error.
LimitingDirections limiting_directions(const DynMap& f, const std::vector<double>& shells,
                                       std::size_t grid_n, const ThresholdSequence& ts,
                                       int k_max = 24);

struct CoveringReport {
    bool passed = false;
    bool vertex_bounds_ok = false;
    bool rays_ok = false;
    bool voxel_ok = false;
    double vertex_margin = 0.0;   // min relative slack of the ring bounds
    int min_ray_hits = 0;
    double translate_err = 0.0;   // max |P_{m+1} - P_{m-1} - (4,0,0)| vertexwise
    double ring_lo = 0.0, ring_hi = 0.0;
    TriMesh mesh;                 // the union P, for export
};

/// Builds P as the union of the ramped-map slice meshes of the three squares
/// m-1, m, m+1 in row n at height s and verifies the ring bounds on the
/// vertices, ray parity from the origin (1000 directions), and grid
/// separation (flood fill at res^3).
CoveringReport covering_verification(int n_row, int m_center, double s, const Ramp& ramp,
                                     double alpha, int rays = 1000, int res = 128);

}  // namespace qrdyn
