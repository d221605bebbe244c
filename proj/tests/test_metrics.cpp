#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "qrdyn/metrics.hpp"

using namespace qrdyn;

namespace {
Direction dir(double x, double y, double z) {
    Vec3 v{x, y, z};
    return Direction::unchecked(v / v.norm());
}
}  // namespace

TEST_CASE("boundary distances") {
    const auto lower = DomainDescriptor::half_space({0, 0, 1}, 0.0);  // {x3 < 0}
    CHECK(lower.boundary_distance({0, 0, -2}) == 2.0);
    CHECK_THROWS_AS(lower.boundary_distance({0, 0, 1}), std::domain_error);

    const auto narrow = DomainDescriptor::sector_domain(Sector({0, 0, 0}, dir(0, 0, 1), M_PI / 6));
    CHECK(narrow.boundary_distance({0, 0, 5}) == doctest::Approx(2.5).epsilon(1e-12));

    const auto wide = DomainDescriptor::sector_domain(Sector({0, 0, 0}, dir(0, 0, 1), 3 * M_PI / 4));
    CHECK(wide.boundary_distance({0, 0, 5}) == doctest::Approx(5.0).epsilon(1e-12));

    CHECK_THROWS_AS(narrow.boundary_distance({5, 0, 0}), std::domain_error);
    CHECK_THROWS_AS(narrow.boundary_distance({0, 0, 0}), std::domain_error);

    const auto comp = DomainDescriptor::cone_complement(Sector({0, 0, 0}, dir(0, 0, 1), M_PI / 6));
    CHECK(comp.boundary_distance({0, 0, -3}) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK_THROWS_AS(comp.boundary_distance({0, 0, 3}), std::domain_error);
}

TEST_CASE("boundary distance is 1-Lipschitz") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-10, 10);
    const auto doms = {DomainDescriptor::half_space({0, 0, -1}, 0.0),
                       DomainDescriptor::sector_domain(Sector({0, 0, 0}, dir(0, 0, 1), 0.9)),
                       DomainDescriptor::cone_complement(Sector({0, 0, 0}, dir(0, 0, 1), 2.0))};
    for (const auto& d : doms) {
        int done = 0;
        for (int i = 0; i < 20000 && done < 2000; ++i) {
            const Vec3 x{u(rng), u(rng), u(rng)}, y{u(rng), u(rng), u(rng)};
            if (!d.contains(x) || !d.contains(y)) continue;
            CHECK(std::abs(d.boundary_distance(x) - d.boundary_distance(y)) <=
                  (x - y).norm() * (1 + 1e-12));
            ++done;
        }
        CHECK(done > 500);
    }
}

TEST_CASE("distance ratio metric") {
    const auto upper = DomainDescriptor::half_space({0, 0, -1}, 0.0);  // {x3 > 0}
    CHECK(j_metric(upper, {0, 0, 1}, {0, 0, 3}) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    CHECK(j_metric(upper, {0, 0, 1}, {0, 0, 1}) == 0.0);
    CHECK(j_metric(upper, {0, 0, 1}, {0, 0, std::exp(2.0)}) ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(j_metric(upper, {0, 0, 1}, {0, 0, -1}), std::domain_error);

    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(-5, 5), w(0.01, 10);
    for (int i = 0; i < 2000; ++i) {
        const Vec3 x{u(rng), u(rng), w(rng)}, y{u(rng), u(rng), w(rng)};
        CHECK(j_metric(upper, x, y) == j_metric(upper, y, x));
    }
}

TEST_CASE("quasihyperbolic path integrals") {
    const auto upper = DomainDescriptor::half_space({0, 0, -1}, 0.0);
    const double e2 = std::exp(2.0);
    const double v = k_path_integral(upper, {{0, 0, 1}, {0, 0, e2}}, 1e-8);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-7));

    const auto sect = DomainDescriptor::sector_domain(Sector({0, 0, 0}, dir(0, 0, 1), M_PI / 6));
    const double s = k_path_integral(sect, {{0, 0, 1}, {0, 0, M_E}}, 1e-8);
    CHECK(s == doctest::Approx(2.0).epsilon(1e-7));  // 1/sin(pi/6) * log(e)

    CHECK(k_path_integral(upper, {{0, 0, 1}}, 1e-8) == 0.0);
    CHECK_THROWS_AS(k_path_integral(upper, {{0, 0, 1}, {0, 0, 0}}, 1e-8), std::domain_error);
}

TEST_CASE("axis integral matches the sector bound") {
    for (double eta : {M_PI / 6, M_PI / 4, M_PI / 2, 2.5}) {
        const auto dom = DomainDescriptor::sector_domain(Sector({0, 0, 0}, dir(0, 0, 1), eta));
        for (double ratio : {2.0, M_E, 7.5}) {
            const double got = k_path_integral(dom, {{0, 0, 1}, {0, 0, ratio}}, 1e-9);
            const double want = sector_k_bound(eta, ratio);
            CHECK(std::abs(got - want) <= 1e-6 * want);
        }
    }
}

TEST_CASE("sector bound values") {
    CHECK(sector_k_bound(M_PI / 2, M_E) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sector_k_bound(M_PI / 6, std::exp(2.0)) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(sector_k_bound(1.0, 1.0) == 0.0);
    CHECK_THROWS_AS(sector_k_bound(0.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(sector_k_bound(1.0, 0.5), std::invalid_argument);
}

TEST_CASE("k upper bound on aligned half-space points") {
    const auto upper = DomainDescriptor::half_space({0, 0, -1}, 0.0);
    const double v = k_upper_bound(upper, {0, 0, 1}, {0, 0, std::exp(2.0)});
    CHECK(v >= 2.0 - 1e-3);
    CHECK(v <= 2.0 + 1e-2);
    CHECK(k_upper_bound(upper, {1, 2, 3}, {1, 2, 3}) == 0.0);

    const auto half_cone = DomainDescriptor::sector_domain(Sector({0, 0, 0}, dir(0, 0, 1), M_PI / 2));
    CHECK(k_upper_bound(half_cone, {0, 0, 1}, {0, 0, M_E}) <= 1.0 + 1e-3);
}

TEST_CASE("upper bound dominates the distance ratio metric") {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> u(-4, 4), w(0.05, 6);
    const auto upper = DomainDescriptor::half_space({0, 0, -1}, 0.0);
    for (int i = 0; i < 40; ++i) {
        const Vec3 x{u(rng), u(rng), w(rng)}, y{u(rng), u(rng), w(rng)};
        CHECK(k_upper_bound(upper, x, y) >= j_metric(upper, x, y) - 1e-9);
    }
    const auto sect = DomainDescriptor::sector_domain(Sector({0, 0, 0}, dir(0, 0, 1), 1.2));
    std::uniform_real_distribution<double> ux(-0.4, 0.4), uz(0.8, 5);
    for (int i = 0; i < 25; ++i) {
        const Vec3 x{ux(rng), ux(rng), uz(rng)}, y{ux(rng), ux(rng), uz(rng)};
        CHECK(k_upper_bound(sect, x, y) >= j_metric(sect, x, y) - 1e-9);
    }
    const auto comp = DomainDescriptor::cone_complement(Sector({0, 0, 0}, dir(0, 0, 1), 2.6));
    std::uniform_real_distribution<double> dz(-6, -2);
    for (int i = 0; i < 25; ++i) {
        const Vec3 x{ux(rng), ux(rng), dz(rng)}, y{ux(rng), ux(rng), dz(rng)};
        CHECK(k_upper_bound(comp, x, y) >= j_metric(comp, x, y) - 1e-9);
    }
}
