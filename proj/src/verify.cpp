#include "qrdyn/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "qrdyn/dynamics.hpp"
#include "qrdyn/dynmap.hpp"
#include "qrdyn/geometry.hpp"
#include "qrdyn/growth.hpp"
#include "qrdyn/metrics.hpp"
#include "qrdyn/zorich.hpp"

namespace qrdyn {

namespace {

using clock_t_ = std::chrono::steady_clock;

CheckResult finish(const std::string& name, bool pass, const std::string& detail,
                   clock_t_::time_point t0, double budget_ms = 0.0) {
    CheckResult r;
    r.name = name;
    r.ms = std::chrono::duration<double, std::milli>(clock_t_::now() - t0).count();
    r.pass = pass && (budget_ms <= 0.0 || r.ms < budget_ms);
    std::ostringstream os;
    os << detail;
    if (budget_ms > 0.0 && r.ms >= budget_ms) os << "; over runtime budget";
    r.detail = os.str();
    return r;
}

Vec3 rand_box(std::mt19937_64& rng, double lo, double hi, double zlo, double zhi) {
    std::uniform_real_distribution<double> u(lo, hi), w(zlo, zhi);
    const double a = u(rng), b = u(rng), c = w(rng);
    return {a, b, c};
}

const Direction& e3_dir() {
    static const Direction d = Direction::unchecked({0, 0, 1});
    return d;
}
const Direction& e1_dir() {
    static const Direction d = Direction::unchecked({1, 0, 0});
    return d;
}

}  // namespace

CheckResult criterion_zorich_constants() {
    const auto t0 = clock_t_::now();
    const auto& mc = modulus_constants();
    // independent brute-force scan of |h| on the 2001^2 grid
    double lo = 1e308, hi = -1.0;
    for (int i = 0; i < 2001; ++i) {
        const double u1 = -1.0 + 2.0 * i / 2000.0;
        for (int j = 0; j < 2001; ++j) {
            const double u2 = -1.0 + 2.0 * j / 2000.0;
            const double m = std::max(std::abs(u1), std::abs(u2));
            const double v = std::sqrt(u1 * u1 + u2 * u2 + (1 - m) * (1 - m));
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    const bool ok = std::abs(mc.c1 - 1.0 / std::sqrt(2.0)) <= 1e-6 &&
                    std::abs(mc.c2 - std::sqrt(2.0)) <= 1e-6 &&
                    std::abs(mc.c1 - lo) <= 1e-6 && std::abs(mc.c2 - hi) <= 1e-6;
    std::ostringstream os;
    os << "C1 = " << mc.c1 << ", C2 = " << mc.c2 << " (grid oracle " << lo << ", " << hi << ")";
    return finish("zorich modulus constants", ok, os.str(), t0, 5000.0);
}

CheckResult criterion_automorphy_inversion() {
    const auto t0 = clock_t_::now();
    std::mt19937_64 rng(20240811);
    double worst_auto = 0.0, worst_inv = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Vec3 x = rand_box(rng, -10, 10, -10, 10);
        const Vec3 zx = zorich_eval(x);
        const double zn = zx.norm();
        for (auto g : {ZorichGenerator::T1, ZorichGenerator::T2, ZorichGenerator::Rpi}) {
            const Vec3 zg = zorich_eval(automorphy_group_apply(g, x));
            worst_auto = std::max(worst_auto, (zg - zx).norm() / zn);
        }
    }
    std::uniform_real_distribution<double> uu(-1.0, 1.0), lr(-3.0, 3.0);
    for (int i = 0; i < 10000; ++i) {
        Vec3 d{uu(rng), uu(rng), uu(rng)};
        while (!(d.norm() > 1e-3)) d = {uu(rng), uu(rng), uu(rng)};
        const Vec3 y = d / d.norm() * std::pow(10.0, lr(rng));
        const Vec3 back = zorich_eval(zorich_inverse(y).p);
        worst_inv = std::max(worst_inv, (back - y).norm() / y.norm());
    }
    const bool ok = worst_auto <= 1e-12 && worst_inv <= 1e-9;
    std::ostringstream os;
    os << "max automorphy rel err " << worst_auto << ", max round-trip rel err " << worst_inv;
    return finish("automorphy and inversion", ok, os.str(), t0, 5000.0);
}

CheckResult criterion_map_regimes() {
    const auto t0 = clock_t_::now();
    const Ramp ramp(2.0);
    std::mt19937_64 rng(77001);
    bool identity_exact = true, sum_exact = true, eqa_ok = true, eqb_ok = true;
    for (int i = 0; i < 10000; ++i) {
        const Vec3 x = rand_box(rng, -10, 10, -10, 0);
        const Vec3 fx = ns_eval(x, ramp);
        if (!(fx == x)) identity_exact = false;
    }
    for (int i = 0; i < 10000; ++i) {
        const Vec3 x = rand_box(rng, -10, 10, 2.0, 40.0);
        const Vec3 fx = ns_eval(x, ramp);
        const Vec3 z = zorich_eval(x);
        if (fx.x != x.x + z.x || fx.y != x.y + z.y || fx.z != x.z + z.z) sum_exact = false;
    }
    const auto& mc = modulus_constants();
    std::uniform_real_distribution<double> us(4.0 + 1e-9, 40.0), u01(0.0, 1.0),
        uang(0.0, 2 * M_PI);
    for (int i = 0; i < 10000; ++i) {
        const double s = us(rng);
        const double rho = 0.999 * s * s * std::sqrt(u01(rng));
        const double th = uang(rng);
        const Vec3 x{rho * std::cos(th), rho * std::sin(th), s};
        const Vec3 fx = ns_eval(x, ramp);
        const double fn = fx.norm(), zn = zorich_eval(x).norm(), xn = x.norm();
        const double slack = 1e-9 * fn;
        if (!(zn - xn <= fn + slack && fn <= zn + xn + slack)) eqa_ok = false;
        if (!(mc.c1 * std::exp(s) / 2.0 <= fn && fn <= 2.0 * mc.c2 * std::exp(s)))
            eqb_ok = false;
    }
    const bool ok = identity_exact && sum_exact && eqa_ok && eqb_ok;
    std::ostringstream os;
    os << "identity half-space exact: " << identity_exact << ", Z+Id regime exact: " << sum_exact
       << ", triangle bounds: " << eqa_ok << ", ring bounds: " << eqb_ok;
    return finish("map regimes", ok, os.str(), t0);
}

CheckResult criterion_order_of_growth() {
    const auto t0 = clock_t_::now();
    std::vector<double> radii;
    for (int r = 20; r <= 200; r += 20) radii.push_back(r);
    const double mu = order_estimate(DynMap::ns_map(2.0), radii, 10000, 20);
    const bool ok = mu >= 1.8 && mu <= 2.2;
    std::ostringstream os;
    os << "order estimate " << mu << " (target 2.0 +- 0.2)";
    return finish("order of growth", ok, os.str(), t0, 60000.0);
}

CheckResult criterion_metrics() {
    const auto t0 = clock_t_::now();
    const auto hs = DomainDescriptor::half_space({0, 0, -1}, 0.0);  // {x3 > 0}
    const double e2 = std::exp(2.0);
    const double k = k_upper_bound(hs, {0, 0, 1}, {0, 0, e2});
    const bool k_ok = k >= 2.0 - 1e-3 && k <= 2.0 + 1e-2;
    bool sect_ok = true;
    std::ostringstream os;
    os << "k_upper half-space " << k;
    for (double eta : {M_PI / 6, M_PI / 4, M_PI / 2}) {
        const auto dom =
            DomainDescriptor::sector_domain(Sector({0, 0, 0}, e3_dir(), eta));
        const double got = k_path_integral(dom, {{0, 0, 1}, {0, 0, M_E}}, 1e-9);
        const double want = sector_k_bound(eta, M_E);
        if (std::abs(got - want) > 1e-6 * want) sect_ok = false;
        os << "; eta=" << eta << ": " << got << " vs " << want;
    }
    return finish("metrics", k_ok && sect_ok, os.str(), t0);
}

CheckResult criterion_covering() {
    const auto t0 = clock_t_::now();
    std::mt19937_64 rng(555123);
    std::uniform_int_distribution<int> mi(-3, 3);
    std::uniform_real_distribution<double> si(10.0, 20.0);
    bool all = true;
    double worst_translate = 0.0;
    std::ostringstream os;
    for (int c = 0; c < 20; ++c) {
        const int m = mi(rng), n = mi(rng);
        const double s = si(rng);
        const auto rep = covering_verification(n, m, s, Ramp(2.0), 4.0);
        worst_translate = std::max(worst_translate, rep.translate_err);
        if (!rep.passed || rep.translate_err > 1e-9) {
            all = false;
            os << "config (n=" << n << ", m=" << m << ", s=" << s << ") failed: vertices "
               << rep.vertex_bounds_ok << ", rays " << rep.rays_ok << ", voxel " << rep.voxel_ok
               << "; ";
        }
    }
    os << "20 configs, max translate error " << worst_translate;
    return finish("covering lemma geometry", all, os.str(), t0, 120000.0);
}

CheckResult criterion_hemisphere() {
    const auto t0 = clock_t_::now();
    const DynMap f = DynMap::ns_map(2.0);
    const auto ts = threshold_sequence(f, 10.0, 8);
    const auto res = limiting_directions(f, {50, 100, 200}, 20000, ts);
    if (res.empty_status)
        return finish("hemisphere directions", false, "empty estimate", t0, 300000.0);
    const auto hemi = SphereSet::hemisphere(e3_dir());
    const double hd = hausdorff_sphere(res.set, hemi);
    double below = 0.0;
    for (const auto& d : res.set.samples()) below = std::max(below, hemi.distance(d));
    const bool ok = hd <= 0.15 && below <= 1e-3;
    std::ostringstream os;
    os << res.set.size() << " directions, Hausdorff to upper hemisphere " << hd
       << " (<= 0.15), max depth below equator " << below << " rad (<= 1e-3)";
    return finish("hemisphere directions", ok, os.str(), t0, 300000.0);
}

CheckResult criterion_inverse_problem() {
    const auto t0 = clock_t_::now();
    const Cap c1(e1_dir(), M_PI / 5);
    const Cap c2(Direction::unchecked({0, 0, -1}), M_PI / 7);
    const DynMap f = DynMap::glued({{c1, DynMap::ns_map(2.0)}, {c2, DynMap::ns_map(2.0)}});
    const auto ts = threshold_sequence(f, 10.0, 8);
    const auto res = limiting_directions(f, {50, 100, 200}, 20000, ts);
    if (res.empty_status)
        return finish("inverse problem caps", false, "empty estimate", t0, 600000.0);
    const auto target = SphereSet::cap_union({c1, c2});
    const double hd = hausdorff_sphere(res.set, target);
    double stray = 0.0;
    for (const auto& d : res.set.samples()) stray = std::max(stray, target.distance(d));
    const bool ok = hd <= 0.15 && stray <= 1e-3;
    std::ostringstream os;
    os << res.set.size() << " directions, Hausdorff to E " << hd << " (<= 0.15), max dist to E "
       << stray << " rad (<= 1e-3)";
    return finish("inverse problem caps", ok, os.str(), t0, 600000.0);
}

CheckResult criterion_min_modulus_checker() {
    const auto t0 = clock_t_::now();
    const std::vector<double> radii{5, 10, 20};
    std::ostringstream os;
    bool ok = true;

    const auto zrep = min_modulus_condition(DynMap::zorich_map(), 2.0, 1e-3, radii);
    for (const auto& e : zrep.entries) {
        if (e.holds) {
            ok = false;
            os << "Z unexpectedly holds at r=" << e.r << " (s=" << e.s_witness << "); ";
        }
    }
    const auto frep = min_modulus_condition(DynMap::ns_map(2.0), 2.0, 1e-3, radii);
    for (const auto& e : frep.entries) {
        if (e.holds) {
            ok = false;
            os << "F holds at r=" << e.r << " (s=" << e.s_witness << ", margin=" << e.margin
               << "); ";
        }
    }
    const auto srep = min_modulus_condition(DynMap::scaled_identity(2.0), 2.0, 1e-3, radii);
    for (const auto& e : srep.entries) {
        if (!e.holds) {
            ok = false;
            os << "2*id unexpectedly fails at r=" << e.r << "; ";
        }
    }
    os << "Z fails " << zrep.fails_at.size() << "/3, F fails " << frep.fails_at.size()
       << "/3, 2*id holds " << srep.holds_at.size() << "/3";
    return finish("minimum modulus hypothesis checker", ok, os.str(), t0);
}

CheckResult criterion_dilatation() {
    const auto t0 = clock_t_::now();
    std::mt19937_64 rng(909090);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<Vec3> box_pts;
    for (int i = 0; i < 200; ++i) box_pts.push_back({u(rng), u(rng), u(rng)});
    const double h = 1e-5;

    const auto id_stats = dilatation_probe(DynMap::identity(), box_pts, h);
    const bool id_ok = std::abs(id_stats.max_k - 1.0) <= 1e-6;

    // probe points clear of the axis and the cone boundary
    auto probes_for = [&](double eta) {
        std::mt19937_64 g(424242);
        std::uniform_real_distribution<double> ur(0.5, 2.0), uz(0.0, 2 * M_PI);
        std::uniform_real_distribution<double> uphi(0.0, 1.0);
        std::vector<Vec3> pts;
        std::vector<double> phis;
        while (pts.size() < 1000) {
            const double phi = uphi(g) * (M_PI - 0.2) + 0.1;
            if (std::abs(phi - eta) < 0.05) continue;
            const double r = ur(g), zta = uz(g);
            pts.push_back({r * std::sin(phi) * std::cos(zta), r * std::sin(phi) * std::sin(zta),
                           r * std::cos(phi)});
            phis.push_back(phi);
        }
        return std::make_pair(pts, phis);
    };

    const SectorMap flat(Cap(e3_dir(), M_PI / 2));
    auto [pts_flat, phis_flat] = probes_for(M_PI / 2);
    (void)phis_flat;
    const double flat_max =
        dilatation_probe([&](const Vec3& x) { return flat.eval(x); }, pts_flat, h).max_k;
    const bool flat_ok = std::abs(flat_max - 1.0) <= 1e-6;

    const SectorMap quarter(Cap(e3_dir(), M_PI / 4));
    auto [pts_q, phis_q] = probes_for(M_PI / 4);
    const double probe_max =
        dilatation_probe([&](const Vec3& x) { return quarter.eval(x); }, pts_q, h).max_k;
    // analytic oracle on the same probes
    double oracle_max = -1.0;
    for (double phi : phis_q) {
        auto sv = quarter.singular_values(phi);
        std::sort(sv.begin(), sv.end(), std::greater<>());
        const double det = sv[0] * sv[1] * sv[2];
        oracle_max = std::max(oracle_max,
                              std::max(sv[0] * sv[0] * sv[0] / det, det / (sv[2] * sv[2] * sv[2])));
    }
    const bool quarter_ok =
        probe_max <= 8.0 && std::abs(probe_max - oracle_max) <= 0.05 * oracle_max;

    std::ostringstream os;
    os << "identity K " << id_stats.max_k << "; flat cap K " << flat_max << "; quarter cap K "
       << probe_max << " vs oracle " << oracle_max;
    return finish("dilatation probe", id_ok && flat_ok && quarter_ok, os.str(), t0);
}

std::vector<CheckResult> acceptance_criteria() {
    return {criterion_zorich_constants(), criterion_automorphy_inversion(),
            criterion_map_regimes(),      criterion_order_of_growth(),
            criterion_metrics(),          criterion_covering(),
            criterion_hemisphere(),       criterion_inverse_problem(),
            criterion_min_modulus_checker(), criterion_dilatation()};
}

std::vector<CheckResult> run_suite(const std::string& suite) {
    if (suite == "zorich") return {criterion_zorich_constants(), criterion_automorphy_inversion()};
    if (suite == "metrics") return {criterion_metrics()};
    if (suite == "covering") return {criterion_covering()};
    if (suite == "growth")
        return {criterion_map_regimes(), criterion_order_of_growth(),
                criterion_min_modulus_checker()};
    if (suite == "directions")
        return {criterion_hemisphere(), criterion_inverse_problem(), criterion_dilatation()};
    if (suite == "all") return acceptance_criteria();
    throw std::invalid_argument("unknown suite: " + suite);
}

}  // namespace qrdyn
