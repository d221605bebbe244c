#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qrdyn/geometry.hpp"
#include "qrdyn/vec3.hpp"

namespace qrdyn {

/// Smoothstep ramp: psi = 0 below 0, 1 above T, 3t^2 - 2t^3 in between
/// (t = x3/T). Monotone and C^1.
struct Ramp {
    double T = 2.0;

    explicit Ramp(double T_ = 2.0) : T(T_) {
        if (!(T > 0.0)) throw std::invalid_argument("Ramp: T must be positive");
    }
    double psi(double t) const {
        if (t <= 0.0) return 0.0;
        if (t >= T) return 1.0;
        const double s = t / T;
        return 3.0 * s * s - 2.0 * s * s * s;
    }
};

/// x + psi(x3) * Z(x): the identity below {x3 = 0}, Z + Id above {x3 = T}.
Vec3 ns_eval(const Vec3& x, const Ramp& ramp);

/// Membership in U_alpha = {x3 > max(alpha, (x1^2+x2^2)^(1/4))}.
bool ualpha_contains(const Vec3& x, double alpha);

/// Bijection of R^3 fixing the origin that carries the cone over a spherical
/// cap onto the upper half-space. Radii and azimuth about the cap axis are
/// preserved; the polar angle from the cap center maps piecewise linearly
/// with slopes lambda_in = (pi/2)/eta and lambda_out = (pi/2)/(pi - eta).
class SectorMap {
  public:
    explicit SectorMap(const Cap& cap);

    Vec3 eval(const Vec3& x) const;
    Vec3 inverse(const Vec3& y) const;

    double angle_map(double phi) const;
    double angle_map_inverse(double phi) const;
    /// Singular values {1, g'(phi), sin(g(phi))/sin(phi)} of the differential
    /// at polar angle phi (away from the axis and the cone boundary).
    std::array<double, 3> singular_values(double phi) const;

    const Cap& cap() const { return cap_; }
    double lambda_in() const { return lam_in_; }
    double lambda_out() const { return lam_out_; }

  private:
    Cap cap_;
    Rotation rot_;
    double lam_in_, lam_out_;
};

/// Uniform evaluable-map abstraction: the Zorich map, the ramped half-space
/// map, cap conjugations of an inner map, cap-glued combinations, and the
/// (scaled) identity.
class DynMap {
  public:
    enum class Kind { identity, scaled_identity, zorich, ns, conjugated, glued };

    static DynMap identity();
    static DynMap scaled_identity(double factor);
    static DynMap zorich_map();
    static DynMap ns_map(double T = 2.0);
    static DynMap conjugated(const Cap& cap, DynMap inner);
    /// Each pair is (cap, inner map); closed caps must be pairwise disjoint
    /// with margin 1e-9 rad.
    static DynMap glued(std::vector<std::pair<Cap, DynMap>> pieces);

    Vec3 eval(const Vec3& x) const;

    Kind kind() const { return kind_; }
    const Ramp& ramp() const { return ramp_; }
    double scale_factor() const { return scale_; }
    struct Piece {
        Cap cap;
        SectorMap sector_map;
        std::shared_ptr<const DynMap> inner;
    };
    const std::vector<Piece>& pieces() const { return pieces_; }

    std::string kind_name() const;

  private:
    DynMap() = default;
    Kind kind_ = Kind::identity;
    Ramp ramp_{2.0};
    double scale_ = 1.0;
    std::vector<Piece> pieces_;
};

/// Evaluation through the sector conjugation f_S^{-1} . inner . f_S, with the
/// exact identity shortcut outside the closed cone of the cap.
Vec3 conjugated_eval(const Cap& cap, const SectorMap& sm, const DynMap& inner, const Vec3& x);

struct DilatationStats {
    double max_k;
    double mean_k;
    Vec3 argmax;
    std::size_t count;
};

/// Central finite-difference dilatation probe. K at a probe point is
/// max(|Df|^3 / det, det / l^3) with l the smallest singular value. Probe
/// points must stay clear of non-differentiability loci by >= 10h.
/// Throws if det <= 0 at any probe, naming the location.
DilatationStats dilatation_probe(const std::function<Vec3(const Vec3&)>& f,
                                 const std::vector<Vec3>& points, double h);
DilatationStats dilatation_probe(const DynMap& f, const std::vector<Vec3>& points, double h);

}  // namespace qrdyn
