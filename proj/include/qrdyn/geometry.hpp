#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qrdyn/vec3.hpp"

namespace qrdyn {

/// Closed spherical cap: directions within half_angle of center.
struct Cap {
    Direction center;
    double half_angle;  // radians, in (0, pi)

    Cap(const Direction& c, double h) : center(c), half_angle(h) {
        if (!(h > 0.0 && h < M_PI))
            throw std::invalid_argument("Cap: half_angle must be in (0, pi)");
    }
    bool contains(const Direction& d) const {
        return angular_distance(d, center) <= half_angle;
    }
};

/// Open cone of directions within `opening` of `axis`, based at `apex`.
struct Sector {
    Vec3 apex;
    Direction axis;
    double opening;  // radians, in (0, pi]

    Sector(const Vec3& a, const Direction& ax, double op) : apex(a), axis(ax), opening(op) {
        if (!(op > 0.0 && op <= M_PI))
            throw std::invalid_argument("Sector: opening must be in (0, pi]");
    }
};

/// Membership is strict; x = apex is rejected (no direction there).
bool sector_contains(const Sector& s, const Vec3& x);

struct TriMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;

    /// Throws if an index is out of range or a triangle is degenerate
    /// (area below 1e-14).
    void validate() const;
    void append(const TriMesh& other);
};

/// Finite sample of directions with the shell radii they were found at.
/// Samples are deduplicated to 1e-9 rad on insert.
class DirectionSet {
  public:
    void insert(const Direction& d, double shell_radius);
    const std::vector<Direction>& samples() const { return samples_; }
    const std::vector<double>& sample_radii() const { return radii_; }
    /// Distinct shell radii, strictly increasing.
    std::vector<double> shell_radii() const;
    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }

  private:
    std::vector<Direction> samples_;
    std::vector<double> radii_;
};

/// Deterministic spherical Fibonacci lattice of n points.
std::vector<Direction> fibonacci_sphere(std::size_t n);

/// Prefix-nested low-discrepancy direction sequence (van der Corput height,
/// golden-angle azimuth): the first n points of the sequence for any larger
/// count are exactly direction_sequence(n). Used by the sphere extremum
/// search so that enlarging the sample budget never loses a point.
std::vector<Direction> direction_sequence(std::size_t n);

/// Number of triangles of `mesh` crossed by the open ray origin + t*dir, t > 0.
/// Hits within 1e-12 of a triangle edge trigger a deterministic 1e-9 direction
/// perturbation and a retry (at most 8).
int ray_mesh_hits(const Vec3& origin, const Direction& dir, const TriMesh& mesh);

/// True iff a 6-connected flood fill from the origin voxel, blocked by voxels
/// meeting the mesh, cannot reach the boundary of the cube [-r_out, r_out]^3
/// sampled at res^3. Throws if the origin voxel itself is blocked or the mesh
/// is not contained in the ball of radius r_out.
bool voxel_separation(const TriMesh& mesh, double r_out, int res);

/// Analytic target set on S^2: a union of closed caps, or an explicit
/// sample set. A hemisphere is the cap of half-angle pi/2.
struct SphereSet {
    std::vector<Cap> caps;
    std::vector<Direction> points;

    static SphereSet hemisphere(const Direction& pole) {
        return SphereSet{{Cap(pole, M_PI / 2)}, {}};
    }
    static SphereSet cap_union(std::vector<Cap> cs) { return SphereSet{std::move(cs), {}}; }
    static SphereSet of_points(std::vector<Direction> pts) { return SphereSet{{}, std::move(pts)}; }

    bool empty() const { return caps.empty() && points.empty(); }
    /// Angular distance from p to the set; closed-form for caps.
    double distance(const Direction& p) const;
    /// Deterministic dense sampling of the set (interior lattice plus a
    /// boundary ring per cap) used for the sup over the set side.
    std::vector<Direction> sample(std::size_t approx_n) const;
};

/// Symmetric Hausdorff distance in the angular metric between the samples of
/// A and the set B. Throws if A is empty.
double hausdorff_sphere(const DirectionSet& A, const SphereSet& B);
double hausdorff_sphere(const DirectionSet& A, const DirectionSet& B);

}  // namespace qrdyn
