#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qrdyn {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    constexpr double norm2() const { return x * x + y * y + z * z; }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }

    std::array<double, 3> to_array() const { return {x, y, z}; }
    static Vec3 from_array(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Unit vector on S^2. Construction checks the norm to 1e-12.
class Direction {
  public:
    explicit Direction(const Vec3& u) : u_(u) {
        if (std::abs(u.norm() - 1.0) > 1e-12)
            throw std::domain_error("Direction: vector is not unit length");
    }
    const Vec3& vec() const { return u_; }
    double x() const { return u_.x; }
    double y() const { return u_.y; }
    double z() const { return u_.z; }

    /// Skips the unit check; caller guarantees |u| = 1.
    static Direction unchecked(const Vec3& u) { return Direction(u, 0); }

  private:
    Direction(const Vec3& u, int) : u_(u) {}
    Vec3 u_;
};

/// sigma(x) = x / |x|; the origin has no direction.
inline Direction sigma(const Vec3& x) {
    double n = x.norm();
    if (!(n > 0.0)) throw std::domain_error("sigma: zero vector has no direction");
    return Direction::unchecked(x / n);
}

/// Angle in [0, pi] between two unit vectors. Clamps the cosine before acos.
inline double angular_distance(const Direction& p, const Direction& q) {
    double c = dot(p.vec(), q.vec());
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return std::acos(c);
}

/// Proper rotation, row-major 3x3.
struct Rotation {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    Vec3 apply(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
    /// Applies the inverse (= transpose).
    Vec3 apply_inverse(const Vec3& v) const {
        return {m[0] * v.x + m[3] * v.y + m[6] * v.z,
                m[1] * v.x + m[4] * v.y + m[7] * v.z,
                m[2] * v.x + m[5] * v.y + m[8] * v.z};
    }
    bool is_identity() const {
        static const std::array<double, 9> id{1, 0, 0, 0, 1, 0, 0, 0, 1};
        return m == id;
    }
};

/// Rotation taking c to the north pole (0,0,1). Antipodal input rotates
/// by pi about e1 so the result is deterministic.
Rotation rotation_to_pole(const Direction& c);

}  // namespace qrdyn
