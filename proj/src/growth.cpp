#include "qrdyn/growth.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qrdyn/parallel.hpp"

namespace qrdyn {

namespace {

double modulus_at(const DynMap& f, double r, const Direction& u) {
    const Vec3 x = u.vec() * r;
    try {
        return f.eval(x).norm();
    } catch (const std::range_error&) {
        std::ostringstream os;
        os << "sphere extremum: overflow evaluating the map at (" << x.x << ", " << x.y << ", "
           << x.z << ")";
        throw std::range_error(os.str());
    }
}

// tangent frame at u
void tangent_basis(const Vec3& u, Vec3& t1, Vec3& t2) {
    Vec3 a = std::abs(u.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    t1 = cross(u, a);
    t1 = t1 / t1.norm();
    t2 = cross(u, t1);
}

Direction rotate_towards(const Direction& u, const Vec3& t, double angle) {
    Vec3 v = u.vec() * std::cos(angle) + t * std::sin(angle);
    return Direction::unchecked(v / v.norm());
}

SphereExtremum sphere_extremum(const DynMap& f, double r, std::size_t n, int refine_steps,
                               bool maximize) {
    if (!(r > 0.0)) throw std::invalid_argument("sphere extremum: radius must be positive");
    if (n < 100) throw std::invalid_argument("sphere extremum: need at least 100 samples");
    const auto dirs = direction_sequence(n);
    std::vector<double> vals(n);
    parallel_for(n, [&](std::size_t i) { vals[i] = modulus_at(f, r, dirs[i]); });

    // indices of the 5 best samples, deterministic tie-break by index
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::partial_sort(idx.begin(), idx.begin() + std::min<std::size_t>(5, n), idx.end(),
                      [&](std::size_t a, std::size_t b) {
                          if (vals[a] != vals[b]) return maximize ? vals[a] > vals[b] : vals[a] < vals[b];
                          return a < b;
                      });

    double best = vals[idx[0]];
    Direction best_dir = dirs[idx[0]];
    for (std::size_t s = 0; s < std::min<std::size_t>(5, n); ++s) {
        Direction u = dirs[idx[s]];
        double v = vals[idx[s]];
        double step = 0.2;
        for (int round = 0; round < refine_steps; ++round) {
            Vec3 t1, t2;
            tangent_basis(u.vec(), t1, t2);
            bool moved = false;
            for (const Vec3& t : {t1, t1 * -1.0, t2, t2 * -1.0}) {
                Direction c = rotate_towards(u, t, step);
                double cv = modulus_at(f, r, c);
                if (maximize ? cv > v : cv < v) {
                    v = cv;
                    u = c;
                    moved = true;
                }
            }
            if (!moved) step *= 0.5;
        }
        if (maximize ? v > best : v < best) {
            best = v;
            best_dir = u;
        }
    }
    return {best, best_dir};
}

}  // namespace

SphereExtremum max_modulus(const DynMap& f, double r, std::size_t n, int refine_steps) {
    return sphere_extremum(f, r, n, refine_steps, true);
}

SphereExtremum min_modulus(const DynMap& f, double r, std::size_t n, int refine_steps) {
    return sphere_extremum(f, r, n, refine_steps, false);
}

GrowthCurve growth_curve(const DynMap& f, const std::vector<double>& radii, std::size_t n,
                         int refine_steps) {
    GrowthCurve g;
    for (double r : radii) {
        g.radii.push_back(r);
        g.mhat_max.push_back(max_modulus(f, r, n, refine_steps).value);
        g.mhat_min.push_back(min_modulus(f, r, n, refine_steps).value);
    }
    return g;
}

double order_estimate(const DynMap& f, const std::vector<double>& radii, std::size_t n,
                      int refine_steps) {
    if (radii.size() < 2) throw std::invalid_argument("order_estimate: need at least 2 radii");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1]))
            throw std::invalid_argument("order_estimate: radii must be increasing");
    std::vector<double> xs, ys;
    for (double r : radii) {
        const double m = max_modulus(f, r, n, refine_steps).value;
        if (!(m > M_E))
            throw std::domain_error("order_estimate: Mhat <= e, log log undefined");
        xs.push_back(std::log(r));
        ys.push_back(std::log(std::log(m)));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return 2.0 * num / den;
}

MinModulusReport min_modulus_condition(const DynMap& f, double alpha, double delta,
                                       const std::vector<double>& radii, int s_grid,
                                       std::size_t n, int refine_steps) {
    if (!(alpha > 1.0)) throw std::invalid_argument("min_modulus_condition: alpha must be > 1");
    if (!(delta > 0.0)) throw std::invalid_argument("min_modulus_condition: delta must be > 0");
    if (s_grid < 2) throw std::invalid_argument("min_modulus_condition: s_grid must be >= 2");
    MinModulusReport rep;
    rep.alpha = alpha;
    rep.delta = delta;
    for (double r : radii) {
        const double big_m = max_modulus(f, r, n, refine_steps).value;
        const double bar = delta * big_m;
        MinModulusEntry e{r, big_m, false, 0.0, 0.0};
        for (int j = 0; j < s_grid; ++j) {
            const double s = r + (alpha - 1.0) * r * j / (s_grid - 1);
            const double mh = min_modulus(f, s, n, refine_steps).value;
            e.margin = std::max(e.margin, mh / bar);
            if (!e.holds && mh >= bar) {
                e.holds = true;
                e.s_witness = s;
            }
        }
        (e.holds ? rep.holds_at : rep.fails_at).push_back(r);
        rep.entries.push_back(e);
    }
    return rep;
}

PolyProbeReport poly_min_modulus_probe(const DynMap& f, int m, const std::vector<double>& radii,
                                       std::size_t n, int refine_steps) {
    if (m < 1) throw std::invalid_argument("poly_min_modulus_probe: m must be positive");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1]))
            throw std::invalid_argument("poly_min_modulus_probe: radii must be increasing");
    PolyProbeReport rep;
    rep.m = m;
    rep.sup_ratio = 0.0;
    for (double r : radii) {
        const double mh = min_modulus(f, r, n, refine_steps).value;
        const double ratio = mh / std::pow(r, m);
        rep.ratios.push_back(ratio);
        rep.sup_ratio = std::max(rep.sup_ratio, ratio);
    }
    rep.trend = "flat";
    if (rep.ratios.size() >= 3) {
        const auto& v = rep.ratios;
        const std::size_t k = v.size();
        const double a = v[k - 3], b = v[k - 2], c = v[k - 1];
        const double tol = 1e-9 * std::max({std::abs(a), std::abs(b), std::abs(c)});
        if (b > a + tol && c > b + tol) rep.trend = "increasing";
        else if (b < a - tol && c < b - tol) rep.trend = "decreasing";
    }
    return rep;
}

}  // namespace qrdyn
