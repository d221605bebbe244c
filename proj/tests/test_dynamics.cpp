#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qrdyn/dynamics.hpp"

using namespace qrdyn;

namespace {
Direction dir(double x, double y, double z) {
    Vec3 v{x, y, z};
    return Direction::unchecked(v / v.norm());
}
}  // namespace

TEST_CASE("orbits") {
    const DynMap f = DynMap::ns_map(2.0);
    const auto fixed = orbit(f, {0, 0, -2}, 10, 1e6);
    CHECK(fixed.outcome == OrbitRecord::Outcome::bounded);
    for (const auto& p : fixed.points) CHECK(p == Vec3{0, 0, -2});

    const auto fast = orbit(f, {0, 0, 20}, 5, 1e6);
    CHECK(fast.outcome == OrbitRecord::Outcome::escaped);
    CHECK(fast.steps == 1);

    const auto idle = orbit(DynMap::identity(), {1, 1, 1}, 5, 10.0);
    CHECK(idle.outcome == OrbitRecord::Outcome::bounded);

    const auto ovf = orbit(f, {0, 0, 650}, 5, 1e308);
    CHECK(ovf.outcome == OrbitRecord::Outcome::overflow);
    CHECK(ovf.steps == 2);  // first image height ~ e^650 exceeds the eval guard
}

TEST_CASE("threshold sequences") {
    const auto z1 = threshold_sequence(DynMap::zorich_map(), 10.0, 1);
    REQUIRE(z1.levels.size() == 2);
    CHECK(z1.levels[1] >= std::exp(10.0));
    CHECK(z1.levels[1] <= std::sqrt(2.0) * std::exp(10.0));

    const auto z2 = threshold_sequence(DynMap::zorich_map(), 1.0, 2);
    CHECK(z2.levels[1] >= M_E * (1 - 1e-9));
    CHECK(z2.levels[1] <= std::sqrt(2.0) * M_E);
    CHECK(z2.levels[2] >= std::exp(z2.levels[1]) * (1 - 1e-9));
    CHECK(z2.levels[2] <= std::sqrt(2.0) * std::exp(z2.levels[1]));

    CHECK_THROWS_AS(threshold_sequence(DynMap::identity(), 1.0, 2), std::domain_error);

    // saturation: once levels leave the evaluation range they cap at 1e300
    const auto zs = threshold_sequence(DynMap::zorich_map(), 10.0, 4);
    CHECK(zs.levels[3] == 1e300);
    CHECK(zs.levels[4] == 1e300);
}

TEST_CASE("fast escape classification") {
    const DynMap f = DynMap::ns_map(2.0);
    const auto ts = threshold_sequence(f, 10.0, 8);
    CHECK_FALSE(classify_fast_escape(f, {0, 0, -3}, ts));  // fixed point below
    CHECK(classify_fast_escape(f, {0, 0, 30}, ts));
    CHECK_FALSE(classify_fast_escape(f, {11, 0, -1}, ts));  // stuck below level 1
}

TEST_CASE("proxy shells") {
    // nothing escapes under the identity: no transitions anywhere
    ThresholdSequence manual{10.0, {10.0, 1e4, 1e300}};
    const auto none = julia_proxy_shell(DynMap::identity(), 50.0, 1000, manual);
    CHECK(none.empty());

    const DynMap f = DynMap::ns_map(2.0);
    const auto ts = threshold_sequence(f, 10.0, 8);
    const auto shell = julia_proxy_shell(f, 50.0, 2000, ts);
    CHECK(!shell.empty());
    for (const auto& d : shell) CHECK(d.z() >= -1e-3);

    CHECK_THROWS_AS(julia_proxy_shell(f, 50.0, 100, ts), std::invalid_argument);
}

TEST_CASE("proxy transitions of a glued map stay inside its cap") {
    const Cap cap(dir(1, 0, 0), M_PI / 4);
    const DynMap g = DynMap::glued({{cap, DynMap::ns_map(2.0)}});
    const auto ts = threshold_sequence(g, 10.0, 8);
    const auto shell = julia_proxy_shell(g, 50.0, 4000, ts);
    CHECK(!shell.empty());
    for (const auto& d : shell)
        CHECK(angular_distance(d, cap.center) <= cap.half_angle + 1e-3);
}

TEST_CASE("limiting directions of the ramped map approximate the hemisphere") {
    const DynMap f = DynMap::ns_map(2.0);
    const auto ts = threshold_sequence(f, 10.0, 8);
    const auto res = limiting_directions(f, {50, 100, 200}, 4000, ts);
    REQUIRE(!res.empty_status);
    const auto hemi = SphereSet::hemisphere(dir(0, 0, 1));
    CHECK(hausdorff_sphere(res.set, hemi) <= 0.2);
    for (const auto& d : res.set.samples()) CHECK(hemi.distance(d) <= 1e-3);
    // the set remembers which shells produced it
    CHECK(res.set.shell_radii().size() == 2);  // top half of three shells

    CHECK_THROWS_AS(limiting_directions(f, {50, 100}, 4000, ts), std::invalid_argument);
}

TEST_CASE("limiting directions of a conjugated map approximate its cap") {
    const Cap cap(dir(1, 0, 0), M_PI / 4);
    const DynMap fd = DynMap::conjugated(cap, DynMap::ns_map(2.0));
    const auto ts = threshold_sequence(fd, 10.0, 8);
    const auto res = limiting_directions(fd, {50, 100, 200}, 8000, ts);
    REQUIRE(!res.empty_status);
    const auto target = SphereSet::cap_union({cap});
    CHECK(hausdorff_sphere(res.set, target) <= 0.15);
    for (const auto& d : res.set.samples()) CHECK(target.distance(d) <= 1e-3);
}

TEST_CASE("limiting directions of the identity are an empty status") {
    ThresholdSequence manual{10.0, {10.0, 1e4, 1e300}};
    const auto res = limiting_directions(DynMap::identity(), {50, 100, 200}, 1000, manual);
    CHECK(res.empty_status);
    CHECK(res.set.empty());
}

TEST_CASE("estimates are stable under grid refinement") {
    const DynMap f = DynMap::ns_map(2.0);
    const auto ts = threshold_sequence(f, 10.0, 8);
    const auto coarse = limiting_directions(f, {30, 40, 50}, 2000, ts);
    const auto fine = limiting_directions(f, {30, 40, 50}, 4000, ts);
    REQUIRE(!coarse.empty_status);
    REQUIRE(!fine.empty_status);
    const double pitch = std::sqrt(4.0 * M_PI / 2000.0);
    CHECK(hausdorff_sphere(coarse.set, fine.set) <= 2.0 * pitch);
}

TEST_CASE("covering verification") {
    const auto rep = covering_verification(0, 0, 10.0, Ramp(2.0), 4.0);
    CHECK(rep.passed);
    CHECK(rep.vertex_bounds_ok);
    CHECK(rep.rays_ok);
    CHECK(rep.voxel_ok);
    CHECK(rep.translate_err <= 1e-9);
    CHECK(rep.vertex_margin >= 0.01);
    CHECK(rep.mesh.triangles.size() == 12);

    CHECK_THROWS_AS(covering_verification(0, 0, 1.0, Ramp(2.0), 4.0), std::domain_error);
    // corners outside the parabolic region: s below alpha
    CHECK_THROWS_AS(covering_verification(0, 0, 3.0, Ramp(2.0), 4.0), std::domain_error);
}
