#include "qrdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qrdyn/parallel.hpp"

namespace qrdyn {

namespace {
constexpr double kSaturation = 1e300;
}

OrbitRecord orbit(const DynMap& f, const Vec3& x, int k_max, double bailout) {
    if (k_max < 1) throw std::invalid_argument("orbit: k_max must be >= 1");
    if (!(bailout > 0.0)) throw std::invalid_argument("orbit: bailout must be positive");
    OrbitRecord rec{x, {x}, OrbitRecord::Outcome::bounded, k_max};
    Vec3 cur = x;
    for (int k = 1; k <= k_max; ++k) {
        try {
            cur = f.eval(cur);
        } catch (const std::range_error&) {
            rec.outcome = OrbitRecord::Outcome::overflow;
            rec.steps = k;
            return rec;
        }
        rec.points.push_back(cur);
        if (cur.norm() > bailout) {
            rec.outcome = OrbitRecord::Outcome::escaped;
            rec.steps = k;
            return rec;
        }
    }
    return rec;
}

ThresholdSequence threshold_sequence(const DynMap& f, double R, int k, std::size_t samples,
                                     int refine_steps) {
    if (!(R > 0.0)) throw std::invalid_argument("threshold_sequence: R must be positive");
    ThresholdSequence ts{R, {R}};
    for (int i = 0; i < k; ++i) {
        const double last = ts.levels.back();
        if (last > 690.0) {
            ts.levels.push_back(kSaturation);
            continue;
        }
        const double m = max_modulus(f, last, samples, refine_steps).value;
        if (!(m > last))
            throw std::domain_error("threshold_sequence: levels not increasing (degenerate map)");
        ts.levels.push_back(std::min(m, kSaturation));
    }
    return ts;
}

bool classify_fast_escape(const DynMap& f, const Vec3& x, const ThresholdSequence& ts,
                          int k_max) {
    const int kk = std::min<int>(k_max, static_cast<int>(ts.levels.size()) - 1);
    Vec3 cur = x;
    if (cur.norm() < ts.levels[0]) return false;
    for (int k = 1; k <= kk; ++k) {
        try {
            cur = f.eval(cur);
        } catch (const std::range_error&) {
            return true;  // overflow counts as escaped
        }
        if (cur.norm() < ts.levels[k]) return false;
    }
    return true;
}

namespace {

// symmetric k-nearest-neighbour pairs on a direction lattice, found by a
// z-band sweep; deterministic
std::vector<std::pair<std::size_t, std::size_t>> neighbour_pairs(
    const std::vector<Direction>& dirs, int k = 6) {
    const std::size_t n = dirs.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return dirs[a].z() < dirs[b].z(); });
    std::vector<double> zs(n);
    for (std::size_t i = 0; i < n; ++i) zs[i] = dirs[order[i]].z();

    const double pitch = std::sqrt(4.0 * M_PI / static_cast<double>(n));
    const double zwin = 4.0 * pitch;

    std::vector<std::vector<std::size_t>> nbrs(n);
    parallel_for(n, [&](std::size_t oi) {
        const std::size_t i = order[oi];
        const Vec3 p = dirs[i].vec();
        // window in the z-sorted order
        const double zlo = p.z - zwin, zhi = p.z + zwin;
        auto lo = std::lower_bound(zs.begin(), zs.end(), zlo) - zs.begin();
        auto hi = std::upper_bound(zs.begin(), zs.end(), zhi) - zs.begin();
        std::vector<std::pair<double, std::size_t>> cand;
        cand.reserve(hi - lo);
        for (auto t = lo; t < hi; ++t) {
            const std::size_t j = order[t];
            if (j == i) continue;
            cand.emplace_back(-dot(p, dirs[j].vec()), j);  // ascending angle
        }
        const std::size_t kk = std::min<std::size_t>(k, cand.size());
        std::partial_sort(cand.begin(), cand.begin() + kk, cand.end());
        for (std::size_t t = 0; t < kk; ++t) nbrs[i].push_back(cand[t].second);
    });

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j : nbrs[i]) pairs.emplace_back(std::min(i, j), std::max(i, j));
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

Direction slerp_mid(const Direction& a, const Direction& b) {
    Vec3 m = a.vec() + b.vec();
    const double n = m.norm();
    if (n < 1e-12) return a;  // antipodal; cannot happen for neighbour pairs
    return Direction::unchecked(m / n);
}

}  // namespace

std::vector<Direction> julia_proxy_shell(const DynMap& f, double r, std::size_t grid_n,
                                         const ThresholdSequence& ts, int k_max) {
    if (!(r > 0.0)) throw std::invalid_argument("julia_proxy_shell: radius must be positive");
    if (grid_n < 1000)
        throw std::invalid_argument("julia_proxy_shell: grid_n must be at least 1000");
    const auto dirs = fibonacci_sphere(grid_n);
    std::vector<uint8_t> cls(grid_n);
    parallel_for(grid_n, [&](std::size_t i) {
        cls[i] = classify_fast_escape(f, dirs[i].vec() * r, ts, k_max) ? 1 : 0;
    });

    const auto pairs = neighbour_pairs(dirs);
    std::vector<std::pair<std::size_t, std::size_t>> transitions;
    for (const auto& pr : pairs)
        if (cls[pr.first] != cls[pr.second]) transitions.push_back(pr);

    std::vector<Direction> out(transitions.size(), Direction::unchecked({0, 0, 1}));
    parallel_for(transitions.size(), [&](std::size_t t) {
        Direction a = dirs[transitions[t].first];
        Direction b = dirs[transitions[t].second];
        const bool ca = cls[transitions[t].first] != 0;
        for (int step = 0; step < 20; ++step) {
            Direction m = slerp_mid(a, b);
            const bool cm = classify_fast_escape(f, m.vec() * r, ts, k_max);
            if (cm == ca) a = m;
            else b = m;
        }
        out[t] = slerp_mid(a, b);
    });
    return out;
}

LimitingDirections limiting_directions(const DynMap& f, const std::vector<double>& shells,
                                       std::size_t grid_n, const ThresholdSequence& ts,
                                       int k_max) {
    if (shells.size() < 3)
        throw std::invalid_argument("limiting_directions: need at least 3 shells");
    for (std::size_t i = 1; i < shells.size(); ++i)
        if (!(shells[i] > shells[i - 1]))
            throw std::invalid_argument("limiting_directions: shells must be increasing");
    const std::size_t take = (shells.size() + 1) / 2;
    LimitingDirections res;
    for (std::size_t i = shells.size() - take; i < shells.size(); ++i) {
        const double r = shells[i];
        for (const auto& d : julia_proxy_shell(f, r, grid_n, ts, k_max)) res.set.insert(d, r);
    }
    res.empty_status = res.set.empty();
    return res;
}

CoveringReport covering_verification(int n_row, int m_center, double s, const Ramp& ramp,
                                     double alpha, int rays, int res) {
    if (!(s >= ramp.T)) {
        std::ostringstream os;
        os << "covering_verification: s = " << s << " is below the ramp height T = " << ramp.T;
        throw std::domain_error(os.str());
    }
    for (int i = m_center - 1; i <= m_center + 1; ++i)
        for (int dx : {-1, 1})
            for (int dy : {-1, 1}) {
                const Vec3 corner{2.0 * i + dx, 2.0 * n_row + dy, s};
                if (!ualpha_contains(corner, alpha)) {
                    std::ostringstream os;
                    os << "covering_verification: corner (" << corner.x << ", " << corner.y
                       << ", " << corner.z << ") is outside U_alpha, alpha = " << alpha;
                    throw std::domain_error(os.str());
                }
            }

    const DynMap f = DynMap::ns_map(ramp.T);
    const TriMesh p_minus = slice_mesh(f, {m_center - 1, n_row}, s);
    const TriMesh p_mid = slice_mesh(f, {m_center, n_row}, s);
    const TriMesh p_plus = slice_mesh(f, {m_center + 1, n_row}, s);

    CoveringReport rep;
    rep.mesh = p_minus;
    rep.mesh.append(p_mid);
    rep.mesh.append(p_plus);

    const auto& mc = modulus_constants();
    const double es = std::exp(s);
    rep.ring_lo = mc.c1 * es / 2.0;
    rep.ring_hi = 2.0 * mc.c2 * es;
    rep.vertex_bounds_ok = true;
    rep.vertex_margin = 1e308;
    for (const auto& v : rep.mesh.vertices) {
        const double m = v.norm();
        if (!(m > rep.ring_lo && m < rep.ring_hi)) rep.vertex_bounds_ok = false;
        rep.vertex_margin = std::min(rep.vertex_margin,
                                     std::min(m / rep.ring_lo - 1.0, rep.ring_hi / m - 1.0));
    }

    rep.translate_err = 0.0;
    for (std::size_t i = 0; i < p_minus.vertices.size(); ++i) {
        const Vec3 d = p_plus.vertices[i] - p_minus.vertices[i] - Vec3{4, 0, 0};
        rep.translate_err = std::max(rep.translate_err, d.norm());
    }

    const auto ray_dirs = fibonacci_sphere(rays);
    std::vector<int> hits(ray_dirs.size());
    parallel_for(ray_dirs.size(), [&](std::size_t i) {
        hits[i] = ray_mesh_hits({0, 0, 0}, ray_dirs[i], rep.mesh);
    });
    rep.min_ray_hits = *std::min_element(hits.begin(), hits.end());
    rep.rays_ok = rep.min_ray_hits >= 1;

    rep.voxel_ok = voxel_separation(rep.mesh, rep.ring_hi, res);
    rep.passed = rep.vertex_bounds_ok && rep.rays_ok && rep.voxel_ok;
    return rep;
}

}  // namespace qrdyn
