#include "qrdyn/dynmap.hpp"

#include <cmath>
#include <sstream>

#include "qrdyn/zorich.hpp"

namespace qrdyn {

Vec3 ns_eval(const Vec3& x, const Ramp& ramp) {
    if (!x.finite()) throw std::domain_error("ns_eval: non-finite input");
    if (x.z <= 0.0) return x;  // identity half-space, bit-exact
    const double psi = ramp.psi(x.z);
    const Vec3 z = zorich_eval(x);
    return {x.x + psi * z.x, x.y + psi * z.y, x.z + psi * z.z};
}

bool ualpha_contains(const Vec3& x, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("ualpha_contains: alpha must be positive");
    return x.z > std::max(alpha, std::pow(x.x * x.x + x.y * x.y, 0.25));
}

SectorMap::SectorMap(const Cap& cap)
    : cap_(cap),
      rot_(rotation_to_pole(cap.center)),
      lam_in_((M_PI / 2) / cap.half_angle),
      lam_out_((M_PI / 2) / (M_PI - cap.half_angle)) {}

double SectorMap::angle_map(double phi) const {
    if (phi <= cap_.half_angle) return lam_in_ * phi;
    return M_PI / 2 + lam_out_ * (phi - cap_.half_angle);
}

double SectorMap::angle_map_inverse(double phi) const {
    if (phi <= M_PI / 2) return phi / lam_in_;
    return cap_.half_angle + (phi - M_PI / 2) / lam_out_;
}

namespace {

Vec3 from_polar(double r, double phi, double cz, double sz) {
    const double sp = std::sin(phi);
    return {r * sp * cz, r * sp * sz, r * std::cos(phi)};
}

}  // namespace

Vec3 SectorMap::eval(const Vec3& x) const {
    const Vec3 y = rot_.apply(x);
    const double r = y.norm();
    if (r == 0.0) return {0, 0, 0};
    const double rho = std::hypot(y.x, y.y);
    const double phi = std::atan2(rho, y.z);
    const double cz = rho > 0.0 ? y.x / rho : 1.0;
    const double sz = rho > 0.0 ? y.y / rho : 0.0;
    return from_polar(r, angle_map(phi), cz, sz);
}

Vec3 SectorMap::inverse(const Vec3& y) const {
    const double r = y.norm();
    if (r == 0.0) return {0, 0, 0};
    const double rho = std::hypot(y.x, y.y);
    const double phi = std::atan2(rho, y.z);
    const double cz = rho > 0.0 ? y.x / rho : 1.0;
    const double sz = rho > 0.0 ? y.y / rho : 0.0;
    return rot_.apply_inverse(from_polar(r, angle_map_inverse(phi), cz, sz));
}

std::array<double, 3> SectorMap::singular_values(double phi) const {
    const double g = angle_map(phi);
    const double gp = phi < cap_.half_angle ? lam_in_ : lam_out_;
    return {1.0, gp, std::sin(g) / std::sin(phi)};
}

DynMap DynMap::identity() {
    DynMap m;
    m.kind_ = Kind::identity;
    return m;
}

DynMap DynMap::scaled_identity(double factor) {
    if (!(factor > 0.0)) throw std::invalid_argument("scaled_identity: factor must be positive");
    DynMap m;
    m.kind_ = Kind::scaled_identity;
    m.scale_ = factor;
    return m;
}

DynMap DynMap::zorich_map() {
    DynMap m;
    m.kind_ = Kind::zorich;
    return m;
}

DynMap DynMap::ns_map(double T) {
    DynMap m;
    m.kind_ = Kind::ns;
    m.ramp_ = Ramp(T);
    return m;
}

DynMap DynMap::conjugated(const Cap& cap, DynMap inner) {
    DynMap m;
    m.kind_ = Kind::conjugated;
    m.ramp_ = inner.ramp_;
    m.pieces_.push_back({cap, SectorMap(cap), std::make_shared<DynMap>(std::move(inner))});
    return m;
}

DynMap DynMap::glued(std::vector<std::pair<Cap, DynMap>> pieces) {
    DynMap m;
    m.kind_ = Kind::glued;
    for (std::size_t i = 0; i < pieces.size(); ++i)
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            const double sep = angular_distance(pieces[i].first.center, pieces[j].first.center);
            if (!(sep > pieces[i].first.half_angle + pieces[j].first.half_angle + 1e-9))
                throw std::invalid_argument("glued: closed caps overlap (margin 1e-9 rad)");
        }
    for (auto& [cap, inner] : pieces) {
        m.ramp_ = inner.ramp_;
        m.pieces_.push_back({cap, SectorMap(cap), std::make_shared<DynMap>(std::move(inner))});
    }
    return m;
}

Vec3 conjugated_eval(const Cap& cap, const SectorMap& sm, const DynMap& inner, const Vec3& x) {
    if (!(x.norm() > 0.0)) return {0, 0, 0};
    if (angular_distance(sigma(x), cap.center) >= cap.half_angle) return x;
    return sm.inverse(inner.eval(sm.eval(x)));
}

Vec3 DynMap::eval(const Vec3& x) const {
    switch (kind_) {
        case Kind::identity:
            return x;
        case Kind::scaled_identity:
            return x * scale_;
        case Kind::zorich:
            return zorich_eval(x);
        case Kind::ns:
            return ns_eval(x, ramp_);
        case Kind::conjugated:
            return conjugated_eval(pieces_[0].cap, pieces_[0].sector_map, *pieces_[0].inner, x);
        case Kind::glued: {
            if (!(x.norm() > 0.0)) return {0, 0, 0};
            const Direction s = sigma(x);
            for (const auto& p : pieces_)
                if (p.cap.contains(s)) return conjugated_eval(p.cap, p.sector_map, *p.inner, x);
            return x;
        }
    }
    throw std::logic_error("DynMap::eval: unknown kind");
}

std::string DynMap::kind_name() const {
    switch (kind_) {
        case Kind::identity: return "identity";
        case Kind::scaled_identity: return "scaled_identity";
        case Kind::zorich: return "zorich";
        case Kind::ns: return "ns";
        case Kind::conjugated: return "conjugated";
        case Kind::glued: return "glued";
    }
    return "?";
}

namespace {

// eigenvalues of a symmetric 3x3 matrix, descending (analytic method)
std::array<double, 3> sym_eigenvalues(const std::array<double, 9>& a) {
    const double p1 = a[1] * a[1] + a[2] * a[2] + a[5] * a[5];
    if (p1 == 0.0) {
        std::array<double, 3> e{a[0], a[4], a[8]};
        std::sort(e.begin(), e.end(), std::greater<>());
        return e;
    }
    const double q = (a[0] + a[4] + a[8]) / 3.0;
    const double p2 = (a[0] - q) * (a[0] - q) + (a[4] - q) * (a[4] - q) +
                      (a[8] - q) * (a[8] - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    // B = (A - qI)/p, r = det(B)/2
    const double b0 = (a[0] - q) / p, b4 = (a[4] - q) / p, b8 = (a[8] - q) / p;
    const double b1 = a[1] / p, b2 = a[2] / p, b5 = a[5] / p;
    const double detb = b0 * (b4 * b8 - b5 * b5) - b1 * (b1 * b8 - b5 * b2) +
                        b2 * (b1 * b5 - b4 * b2);
    const double r = std::clamp(detb / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    return {e1, 3.0 * q - e1 - e3, e3};
}

double det3(const std::array<double, 9>& j) {
    return j[0] * (j[4] * j[8] - j[5] * j[7]) - j[1] * (j[3] * j[8] - j[5] * j[6]) +
           j[2] * (j[3] * j[7] - j[4] * j[6]);
}

}  // namespace

DilatationStats dilatation_probe(const std::function<Vec3(const Vec3&)>& f,
                                 const std::vector<Vec3>& points, double h) {
    if (points.empty()) throw std::invalid_argument("dilatation_probe: no probe points");
    if (!(h > 0.0)) throw std::invalid_argument("dilatation_probe: step must be positive");
    double maxk = -1.0, sum = 0.0;
    Vec3 argmax;
    for (const auto& p : points) {
        std::array<double, 9> J{};
        for (int c = 0; c < 3; ++c) {
            Vec3 dp = p, dm = p;
            (c == 0 ? dp.x : c == 1 ? dp.y : dp.z) += h;
            (c == 0 ? dm.x : c == 1 ? dm.y : dm.z) -= h;
            const Vec3 fp = f(dp), fm = f(dm);
            J[0 + c] = (fp.x - fm.x) / (2 * h);
            J[3 + c] = (fp.y - fm.y) / (2 * h);
            J[6 + c] = (fp.z - fm.z) / (2 * h);
        }
        const double det = det3(J);
        if (!(det > 0.0)) {
            std::ostringstream os;
            os << "dilatation_probe: non-positive Jacobian determinant " << det << " at ("
               << p.x << ", " << p.y << ", " << p.z << ")";
            throw std::runtime_error(os.str());
        }
        // J^T J, row-major symmetric
        std::array<double, 9> g{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) g[3 * i + j] += J[3 * k + i] * J[3 * k + j];
        const auto ev = sym_eigenvalues(g);
        const double s1 = std::sqrt(std::max(0.0, ev[0]));
        const double s3 = std::sqrt(std::max(0.0, ev[2]));
        const double k = std::max(s1 * s1 * s1 / det, det / (s3 * s3 * s3));
        sum += k;
        if (k > maxk) {
            maxk = k;
            argmax = p;
        }
    }
    return {maxk, sum / points.size(), argmax, points.size()};
}

DilatationStats dilatation_probe(const DynMap& f, const std::vector<Vec3>& points, double h) {
    return dilatation_probe([&f](const Vec3& x) { return f.eval(x); }, points, h);
}

}  // namespace qrdyn

