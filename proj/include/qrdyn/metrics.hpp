#pragma once

#include <vector>

#include "qrdyn/geometry.hpp"
#include "qrdyn/vec3.hpp"

namespace qrdyn {

/// Proper subdomain of R^3 with an analytic boundary distance: an open
/// half-space {n.x < b}, the open cone of a sector, or the complement of a
/// closed cone.
class DomainDescriptor {
  public:
    enum class Kind { half_space, sector, cone_complement };

    static DomainDescriptor half_space(const Vec3& normal, double offset);
    static DomainDescriptor sector_domain(const Sector& s);
    static DomainDescriptor cone_complement(const Sector& s);

    bool contains(const Vec3& x) const;
    /// Exact Euclidean distance to the boundary; throws std::domain_error
    /// for points outside the domain.
    double boundary_distance(const Vec3& x) const;

    Kind kind() const { return kind_; }
    std::string name() const;

  private:
    DomainDescriptor(Kind k, Vec3 n, double b, std::optional<Sector> s)
        : kind_(k), normal_(n), offset_(b), sector_(s) {}
    Kind kind_;
    Vec3 normal_;
    double offset_;
    std::optional<Sector> sector_;
};

using Polyline = std::vector<Vec3>;

/// Distance-ratio metric j_U(x,y) = log(1 + |x-y| / min(d(x), d(y))).
double j_metric(const DomainDescriptor& U, const Vec3& x, const Vec3& y);

/// Quasihyperbolic length of the polyline: adaptive Simpson quadrature of
/// the density 1/d(., boundary), splitting while the density varies by more
/// than 10% across an interval. Absolute error <= tol. An upper bound for
/// k_U between the endpoints.
double k_path_integral(const DomainDescriptor& U, const Polyline& path, double tol = 1e-6);

/// Upper bound for k_U(x,y): coordinate descent over a polyline with at most
/// 64 movable vertices, started from the straight segment, three jittered
/// restarts, best value reported.
double k_upper_bound(const DomainDescriptor& U, const Vec3& x, const Vec3& y,
                     double tol = 1e-6);

/// C(eta) * log(ratio) with C = 1 for eta >= pi/2 and C = 1/sin(eta) below.
double sector_k_bound(double eta, double ratio);

}  // namespace qrdyn
