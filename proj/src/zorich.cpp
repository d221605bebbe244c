#include "qrdyn/zorich.hpp"

#include <cmath>

#include "qrdyn/dynmap.hpp"

namespace qrdyn {

FoldResult fold(double t) {
    if (!std::isfinite(t)) throw std::domain_error("fold: non-finite input");
    double r = std::remainder(t, 4.0);  // exact, in [-2, 2]
    if (r < -1.0) r += 4.0;             // now in [-1, 3)
    if (r == -1.0) return {-1.0, 1};    // parity from the left (t -> 3^-)
    if (r <= 1.0) return {r, 0};
    return {2.0 - r, 1};
}

Vec3 pyramid_h(double u1, double u2) {
    if (std::abs(u1) > 1.0 || std::abs(u2) > 1.0)
        throw std::domain_error("pyramid_h: input outside [-1,1]^2");
    return {u1, u2, 1.0 - std::max(std::abs(u1), std::abs(u2))};
}

Vec3 zorich_eval(const Vec3& x) {
    if (!x.finite()) throw std::domain_error("zorich_eval: non-finite input");
    if (x.z > 700.0) throw std::range_error("zorich_eval: exp overflow (x3 > 700)");
    const FoldResult f1 = fold(x.x), f2 = fold(x.y);
    const double mx = std::max(std::abs(f1.folded), std::abs(f2.folded));
    const double sign = ((f1.parity + f2.parity) % 2 == 0) ? 1.0 : -1.0;
    const double e = std::exp(x.z);
    return {e * f1.folded, e * f2.folded, e * sign * (1.0 - mx)};
}

BeamPoint zorich_inverse(const Vec3& y) {
    if (!(y.norm() > 0.0))
        throw std::domain_error("zorich_inverse: the origin is the omitted value");
    const double mx = std::max(std::abs(y.x), std::abs(y.y));
    if (y.z >= 0.0) {
        const double s = y.z + mx;
        return {{y.x / s, y.y / s, std::log(s)}};
    }
    const double s = -y.z + mx;
    return {{2.0 - y.x / s, y.y / s, std::log(s)}};
}

namespace {

double hmod(double u1, double u2) {
    const double m = std::max(std::abs(u1), std::abs(u2));
    const double w = 1.0 - m;
    return std::sqrt(u1 * u1 + u2 * u2 + w * w);
}

// local pattern refinement of an extremum of hmod on the square
std::array<double, 2> refine(double u1, double u2, double step, bool maximize) {
    double best = hmod(u1, u2);
    while (step > 1e-10) {
        bool moved = false;
        const double cand[8][2] = {{step, 0}, {-step, 0}, {0, step},  {0, -step},
                                   {step, step},  {step, -step}, {-step, step}, {-step, -step}};
        for (const auto& c : cand) {
            double a = std::clamp(u1 + c[0], -1.0, 1.0);
            double b = std::clamp(u2 + c[1], -1.0, 1.0);
            double v = hmod(a, b);
            if (maximize ? v > best : v < best) {
                best = v;
                u1 = a;
                u2 = b;
                moved = true;
            }
        }
        if (!moved) step *= 0.5;
    }
    return {u1, u2};
}

ModulusConstants compute_modulus_constants() {
    const int n = 2001;
    double c1 = 1e308, c2 = -1.0;
    std::array<double, 2> amin{0, 0}, amax{0, 0};
    for (int i = 0; i < n; ++i) {
        const double u1 = -1.0 + 2.0 * i / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double u2 = -1.0 + 2.0 * j / (n - 1);
            const double v = hmod(u1, u2);
            if (v < c1) {
                c1 = v;
                amin = {u1, u2};
            }
            if (v > c2) {
                c2 = v;
                amax = {u1, u2};
            }
        }
    }
    amin = refine(amin[0], amin[1], 2.0 / (n - 1), false);
    amax = refine(amax[0], amax[1], 2.0 / (n - 1), true);
    return {hmod(amin[0], amin[1]), hmod(amax[0], amax[1]), amin, amax};
}

}  // namespace

const ModulusConstants& modulus_constants() {
    static const ModulusConstants mc = compute_modulus_constants();
    return mc;
}

Vec3 automorphy_group_apply(ZorichGenerator g, const Vec3& x) {
    switch (g) {
        case ZorichGenerator::T1:
            return {x.x + 4.0, x.y, x.z};
        case ZorichGenerator::T2:
            return {x.x, x.y + 4.0, x.z};
        case ZorichGenerator::Rpi:
            return {2.0 - x.x, 2.0 - x.y, x.z};
    }
    throw std::invalid_argument("automorphy_group_apply: unknown generator");
}

TriMesh slice_mesh(const DynMap& f, SquareIndex sq, double s) {
    switch (f.kind()) {
        case DynMap::Kind::zorich:
        case DynMap::Kind::identity:
            break;
        case DynMap::Kind::ns:
            if (s > 0.0 && s < f.ramp().T)
                throw std::domain_error(
                    "slice_mesh: map is not piecewise linear on 0 < s < T");
            break;
        default:
            throw std::domain_error("slice_mesh: map is not piecewise linear on slices");
    }
    const double x0 = 2.0 * sq.m, y0 = 2.0 * sq.n;
    const Vec3 pts[5] = {{x0 - 1, y0 - 1, s},
                         {x0 + 1, y0 - 1, s},
                         {x0 + 1, y0 + 1, s},
                         {x0 - 1, y0 + 1, s},
                         {x0, y0, s}};
    TriMesh mesh;
    for (const auto& p : pts) mesh.vertices.push_back(f.eval(p));
    mesh.triangles = {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
    mesh.validate();
    return mesh;
}

}  // namespace qrdyn
