#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "qrdyn/dynmap.hpp"
#include "qrdyn/zorich.hpp"

using namespace qrdyn;

namespace {
Direction dir(double x, double y, double z) {
    Vec3 v{x, y, z};
    return Direction::unchecked(v / v.norm());
}
}  // namespace

TEST_CASE("ramp shape") {
    const Ramp r(2.0);
    CHECK(r.psi(-1.0) == 0.0);
    CHECK(r.psi(0.0) == 0.0);
    CHECK(r.psi(1.0) == 0.5);
    CHECK(r.psi(2.0) == 1.0);
    CHECK(r.psi(5.0) == 1.0);
    for (double t = 0.0; t < 2.0; t += 0.05) CHECK(r.psi(t) <= r.psi(t + 0.05));
    CHECK_THROWS_AS(Ramp(0.0), std::invalid_argument);
}

TEST_CASE("ramped map regimes") {
    const Ramp ramp(2.0);
    const Vec3 below = ns_eval({0, 0, -5}, ramp);
    CHECK(below == Vec3{0, 0, -5});

    const Vec3 at_t = ns_eval({0, 0, 2}, ramp);
    CHECK(at_t.z == doctest::Approx(2.0 + std::exp(2.0)).epsilon(1e-15));

    const Vec3 mid = ns_eval({0, 0, 1}, ramp);
    CHECK(mid.z == doctest::Approx(1.0 + 0.5 * M_E).epsilon(1e-15));
}

TEST_CASE("identity half-space is bit-exact, upper regime is the exact sum") {
    const Ramp ramp(2.0);
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-10, 10), lo(-10, 0), hi(2, 40);
    for (int i = 0; i < 10000; ++i) {
        const Vec3 x{u(rng), u(rng), lo(rng)};
        CHECK(ns_eval(x, ramp) == x);
    }
    for (int i = 0; i < 10000; ++i) {
        const Vec3 x{u(rng), u(rng), hi(rng)};
        const Vec3 f = ns_eval(x, ramp), z = zorich_eval(x);
        CHECK(f.x == x.x + z.x);
        CHECK(f.y == x.y + z.y);
        CHECK(f.z == x.z + z.z);
    }
}

TEST_CASE("triangle and ring bounds on the parabolic region") {
    const Ramp ramp(2.0);
    const auto& mc = modulus_constants();
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> us(4.0 + 1e-9, 40.0), u01(0, 1), ua(0, 2 * M_PI);
    for (int i = 0; i < 2000; ++i) {
        const double s = us(rng);
        const double rho = 0.999 * s * s * std::sqrt(u01(rng));
        const double th = ua(rng);
        const Vec3 x{rho * std::cos(th), rho * std::sin(th), s};
        REQUIRE(ualpha_contains(x, 4.0));
        const double fn = ns_eval(x, ramp).norm();
        const double zn = zorich_eval(x).norm();
        const double xn = x.norm();
        CHECK(zn - xn <= fn * (1 + 1e-9));
        CHECK(fn <= (zn + xn) * (1 + 1e-9));
        CHECK(mc.c1 * std::exp(s) / 2 <= fn);
        CHECK(fn <= 2 * mc.c2 * std::exp(s));
    }
}

TEST_CASE("translation covariance on representable inputs") {
    const Ramp ramp(2.0);
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> k(-10240, 10240);
    std::uniform_real_distribution<double> hz(2, 30);
    for (int i = 0; i < 5000; ++i) {
        // dyadic lattice points keep x + 4 exactly representable
        const Vec3 x{k(rng) / 1024.0, k(rng) / 1024.0, hz(rng)};
        const Vec3 a = ns_eval({x.x + 4.0, x.y, x.z}, ramp);
        const Vec3 b = ns_eval(x, ramp) + Vec3{4, 0, 0};
        CHECK(a == b);
    }
}

TEST_CASE("parabolic region membership") {
    CHECK(ualpha_contains({0, 0, 10}, 4.0));
    CHECK_FALSE(ualpha_contains({0, 0, 3}, 4.0));
    CHECK_FALSE(ualpha_contains({100, 0, 4.1}, 4.0));
    CHECK_THROWS_AS(ualpha_contains({0, 0, 1}, 0.0), std::invalid_argument);
}

TEST_CASE("sector map of the flat cap is the identity") {
    const SectorMap sm(Cap(dir(0, 0, 1), M_PI / 2));
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int i = 0; i < 2000; ++i) {
        const Vec3 x{u(rng), u(rng), u(rng)};
        CHECK((sm.eval(x) - x).norm() <= 1e-12 * std::max(1.0, x.norm()));
    }
}

TEST_CASE("sector map of the quarter cap") {
    const SectorMap sm(Cap(dir(0, 0, 1), M_PI / 4));
    const Vec3 img = sm.eval({1, 0, 1});
    CHECK(img.x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(img.z) <= 1e-12);  // boundary ray lands on the equator plane
    CHECK((sm.eval({0, 0, 1}) - Vec3{0, 0, 1}).norm() <= 1e-12);
    CHECK(sm.eval({0, 0, 0}) == Vec3{0, 0, 0});
}

TEST_CASE("sector map preserves radii and inverts") {
    std::mt19937_64 rng(25);
    std::uniform_real_distribution<double> u(-5, 5);
    const SectorMap sm(Cap(dir(1, 1, 0), 0.9));
    for (int i = 0; i < 5000; ++i) {
        const Vec3 x{u(rng), u(rng), u(rng)};
        const Vec3 y = sm.eval(x);
        CHECK(std::abs(y.norm() - x.norm()) <= 1e-12 * std::max(1.0, x.norm()));
        CHECK((sm.inverse(y) - x).norm() <= 1e-10 * std::max(1.0, x.norm()));
    }
    // cone boundary maps into the plane {x3 = 0}
    const Rotation r = rotation_to_pole(dir(1, 1, 0));
    std::uniform_real_distribution<double> ua(0, 2 * M_PI), ur(0.1, 10);
    for (int i = 0; i < 1000; ++i) {
        const double th = ua(rng), rr = ur(rng);
        const Vec3 in_pole{std::sin(0.9) * std::cos(th), std::sin(0.9) * std::sin(th),
                           std::cos(0.9)};
        const Vec3 x = r.apply_inverse(in_pole) * rr;
        CHECK(std::abs(sm.eval(x).z) <= 1e-10 * rr);
    }
}

TEST_CASE("conjugated map identity outside the cone") {
    const Cap cap(dir(1, 0, 0), M_PI / 4);
    const DynMap fd = DynMap::conjugated(cap, DynMap::ns_map(2.0));
    CHECK(fd.eval({-1, 0, 0}) == Vec3{-1, 0, 0});
    CHECK(fd.eval({0, 1, 0}) == Vec3{0, 1, 0});
    CHECK(fd.eval({0, 0, 0}) == Vec3{0, 0, 0});

    const DynMap flat = DynMap::conjugated(Cap(dir(0, 0, 1), M_PI / 2), DynMap::ns_map(2.0));
    CHECK(flat.eval({0, 0, -1}) == Vec3{0, 0, -1});
    const Vec3 up = flat.eval({0, 0, 2});
    CHECK(up.z == doctest::Approx(2.0 + std::exp(2.0)).epsilon(1e-12));
}

TEST_CASE("glued maps dispatch by direction and stay continuous at the rim") {
    const Cap c1(dir(1, 0, 0), M_PI / 6), c2(dir(-1, 0, 0), M_PI / 6);
    const DynMap g = DynMap::glued({{c1, DynMap::ns_map(2.0)}, {c2, DynMap::ns_map(2.0)}});
    CHECK(g.eval({0, 1, 0}) == Vec3{0, 1, 0});

    const DynMap single = DynMap::glued({{Cap(dir(0, 0, 1), M_PI / 2), DynMap::ns_map(2.0)}});
    CHECK(single.eval({0, 0, -1}) == Vec3{0, 0, -1});

    // boundary direction: identity from both sides
    const double eta = M_PI / 6;
    const Vec3 rim_dir{std::cos(eta), std::sin(eta), 0};
    CHECK(g.eval(rim_dir * 2.0) == rim_dir * 2.0);
    const Vec3 just_out{std::cos(eta + 1e-8), std::sin(eta + 1e-8), 0};
    CHECK(g.eval(just_out * 2.0) == just_out * 2.0);
    const Vec3 just_in{std::cos(eta - 1e-8), std::sin(eta - 1e-8), 0};
    CHECK((g.eval(just_in * 2.0) - just_in * 2.0).norm() <= 1e-12);

    CHECK_THROWS_AS(DynMap::glued({{Cap(dir(1, 0, 0), 1.0), DynMap::ns_map(2.0)},
                                   {Cap(dir(0, 1, 0), 1.0), DynMap::ns_map(2.0)}}),
                    std::invalid_argument);
}

TEST_CASE("conjugated image directions stay in the cap while upstairs") {
    // containment of the image sector: checked whenever the inner image
    // remains in the closed upper half-space
    const Cap cap(dir(1, 0, 0), M_PI / 4);
    const SectorMap sm(cap);
    const DynMap inner = DynMap::ns_map(2.0);
    const DynMap fd = DynMap::conjugated(cap, inner);
    std::mt19937_64 rng(26);
    std::uniform_real_distribution<double> u(-1, 1), ut(0.2, 3.0);
    int checked = 0;
    for (int i = 0; i < 5000 && checked < 1000; ++i) {
        Vec3 v{1.0, 0.6 * u(rng), 0.6 * u(rng)};
        if (angular_distance(sigma(v), cap.center) >= cap.half_angle) continue;
        const Vec3 x = v / v.norm() * ut(rng) * 3.0;
        const Vec3 upstairs = inner.eval(sm.eval(x));
        if (upstairs.z < 0.0 || !(upstairs.norm() > 0.0)) continue;
        const Vec3 img = fd.eval(x);
        CHECK(angular_distance(sigma(img), cap.center) <= cap.half_angle + 1e-12);
        ++checked;
    }
    CHECK(checked >= 500);
}

TEST_CASE("dilatation probe basics") {
    std::mt19937_64 rng(27);
    std::uniform_real_distribution<double> u(-2, 2);
    std::vector<Vec3> pts;
    for (int i = 0; i < 100; ++i) pts.push_back({u(rng), u(rng), u(rng)});
    const auto id = dilatation_probe(DynMap::identity(), pts, 1e-5);
    CHECK(std::abs(id.max_k - 1.0) <= 1e-9);
    CHECK(std::abs(id.mean_k - 1.0) <= 1e-9);

    // orientation-reversing map is reported with its location
    CHECK_THROWS_AS(dilatation_probe([](const Vec3& v) { return Vec3{v.x, v.y, -v.z}; }, pts,
                                     1e-5),
                    std::runtime_error);
}

TEST_CASE("scaled identity map") {
    const DynMap two = DynMap::scaled_identity(2.0);
    CHECK(two.eval({1, 2, 3}) == Vec3{2, 4, 6});
    CHECK_THROWS_AS(DynMap::scaled_identity(-1.0), std::invalid_argument);
}
