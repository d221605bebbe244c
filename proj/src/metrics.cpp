#include "qrdyn/metrics.hpp"

#include <cmath>
#include <functional>

namespace qrdyn {

DomainDescriptor DomainDescriptor::half_space(const Vec3& normal, double offset) {
    const double n = normal.norm();
    if (!(n > 0.0)) throw std::invalid_argument("half_space: zero normal");
    return DomainDescriptor(Kind::half_space, normal / n, offset / n, std::nullopt);
}

DomainDescriptor DomainDescriptor::sector_domain(const Sector& s) {
    return DomainDescriptor(Kind::sector, {}, 0.0, s);
}

DomainDescriptor DomainDescriptor::cone_complement(const Sector& s) {
    return DomainDescriptor(Kind::cone_complement, {}, 0.0, s);
}

bool DomainDescriptor::contains(const Vec3& x) const {
    switch (kind_) {
        case Kind::half_space:
            return dot(normal_, x) < offset_;
        case Kind::sector: {
            const Vec3 v = x - sector_->apex;
            if (!(v.norm() > 0.0)) return false;
            return angular_distance(sigma(v), sector_->axis) < sector_->opening;
        }
        case Kind::cone_complement: {
            const Vec3 v = x - sector_->apex;
            if (!(v.norm() > 0.0)) return false;
            return angular_distance(sigma(v), sector_->axis) > sector_->opening;
        }
    }
    return false;
}

double DomainDescriptor::boundary_distance(const Vec3& x) const {
    switch (kind_) {
        case Kind::half_space: {
            const double d = offset_ - dot(normal_, x);
            if (!(d > 0.0)) throw std::domain_error("boundary_distance: point not in half-space");
            return d;
        }
        case Kind::sector: {
            const Vec3 v = x - sector_->apex;
            const double r = v.norm();
            if (!(r > 0.0)) throw std::domain_error("boundary_distance: point at sector apex");
            const double phi = angular_distance(sigma(v), sector_->axis);
            if (!(phi < sector_->opening))
                throw std::domain_error("boundary_distance: point not in sector");
            return r * std::sin(std::min(sector_->opening - phi, M_PI / 2));
        }
        case Kind::cone_complement: {
            const Vec3 v = x - sector_->apex;
            const double r = v.norm();
            if (!(r > 0.0)) throw std::domain_error("boundary_distance: point at cone apex");
            const double phi = angular_distance(sigma(v), sector_->axis);
            if (!(phi > sector_->opening))
                throw std::domain_error("boundary_distance: point not in cone complement");
            return r * std::sin(std::min(phi - sector_->opening, M_PI / 2));
        }
    }
    throw std::logic_error("boundary_distance: unknown kind");
}

std::string DomainDescriptor::name() const {
    switch (kind_) {
        case Kind::half_space: return "half_space";
        case Kind::sector: return "sector";
        case Kind::cone_complement: return "cone_complement";
    }
    return "?";
}

double j_metric(const DomainDescriptor& U, const Vec3& x, const Vec3& y) {
    const double dx = U.boundary_distance(x), dy = U.boundary_distance(y);
    return std::log1p((x - y).norm() / std::min(dx, dy));
}

namespace {

struct SegIntegrand {
    const DomainDescriptor& U;
    Vec3 a, dir;  // p(t) = a + t*dir, t in [0,1]
    double len;

    double operator()(double t) const {
        const double d = U.boundary_distance(a + dir * t);
        if (d < 1e-14) throw std::domain_error("k_path_integral: path touches the boundary");
        return len / d;
    }
};

double simpson(double fa, double fm, double fb, double w) { return w * (fa + 4 * fm + fb) / 6.0; }

double adaptive(const SegIntegrand& f, double a, double b, double fa, double fm, double fb,
                double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double err = (left + right - whole) / 15.0;
    // keep splitting while the density varies noticeably across the interval
    const double mx = std::max({fa, flm, fm, frm, fb});
    const double mn = std::min({fa, flm, fm, frm, fb});
    const bool rough = mx > 1.1 * mn;
    if (depth >= 48 || (!rough && std::abs(err) <= tol)) return left + right + err;
    return adaptive(f, a, m, fa, flm, fm, left, tol / 2, depth + 1) +
           adaptive(f, m, b, fm, frm, fb, right, tol / 2, depth + 1);
}

double segment_integral(const DomainDescriptor& U, const Vec3& a, const Vec3& b, double tol) {
    const Vec3 d = b - a;
    const double len = d.norm();
    if (len == 0.0) return 0.0;
    SegIntegrand f{U, a, d, len};
    const double fa = f(0.0), fm = f(0.5), fb = f(1.0);
    return adaptive(f, 0.0, 1.0, fa, fm, fb, simpson(fa, fm, fb, 1.0), tol, 0);
}

}  // namespace

double k_path_integral(const DomainDescriptor& U, const Polyline& path, double tol) {
    if (path.empty()) throw std::invalid_argument("k_path_integral: empty path");
    for (const auto& v : path)
        if (U.boundary_distance(v) < 1e-14)
            throw std::domain_error("k_path_integral: vertex touches the boundary");
    if (path.size() == 1) return 0.0;
    const double seg_tol = tol / static_cast<double>(path.size() - 1);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        total += segment_integral(U, path[i], path[i + 1], seg_tol);
    return total;
}

namespace {

double local_cost(const DomainDescriptor& U, const Polyline& p, std::size_t i, double tol) {
    double c = 0.0;
    if (i > 0) c += segment_integral(U, p[i - 1], p[i], tol);
    if (i + 1 < p.size()) c += segment_integral(U, p[i], p[i + 1], tol);
    return c;
}

double descend(const DomainDescriptor& U, Polyline p, double tol) {
    const std::size_t n = p.size();
    const double scale = (p.back() - p.front()).norm();
    double step = scale / 8.0;
    const double seg_tol = tol / static_cast<double>(2 * n);
    const Vec3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    while (step > scale * 1e-6) {
        bool improved = false;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            double cur = local_cost(U, p, i, seg_tol);
            for (const auto& ax : axes) {
                for (double s : {step, -step}) {
                    const Vec3 save = p[i];
                    p[i] = save + ax * s;
                    bool ok = U.contains(p[i]);
                    double cand = ok ? local_cost(U, p, i, seg_tol) : 1e308;
                    if (ok && cand < cur - 1e-12) {
                        cur = cand;
                        improved = true;
                    } else {
                        p[i] = save;
                    }
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) total += segment_integral(U, p[i], p[i + 1], seg_tol);
    return total;
}

}  // namespace

double k_upper_bound(const DomainDescriptor& U, const Vec3& x, const Vec3& y, double tol) {
    if (!U.contains(x) || !U.contains(y))
        throw std::domain_error("k_upper_bound: endpoint outside the domain");
    if (x == y) return 0.0;
    const int movable = 15;
    Polyline base(movable + 2);
    for (int i = 0; i <= movable + 1; ++i)
        base[i] = x + (y - x) * (static_cast<double>(i) / (movable + 1));
    // the straight start can leave the domain (sector chords); fall back to
    // a two-leg route through a deeper point when it does
    bool straight_ok = true;
    for (const auto& v : base)
        if (!U.contains(v)) {
            straight_ok = false;
            break;
        }
    if (!straight_ok) throw std::domain_error("k_upper_bound: straight seed leaves the domain");

    double best = descend(U, base, tol);
    const double scale = (y - x).norm();
    for (int restart = 1; restart <= 3; ++restart) {
        Polyline p = base;
        for (std::size_t i = 1; i + 1 < p.size(); ++i) {
            // deterministic jitter
            const double t = 0.05 * restart * scale;
            const Vec3 j{t * std::sin(2.399963 * (double)(i + restart)),
                         t * std::cos(1.612 * (double)(i + 2 * restart)),
                         t * std::sin(0.71 * (double)(i) + restart)};
            if (U.contains(p[i] + j)) p[i] = p[i] + j;
        }
        best = std::min(best, descend(U, p, tol));
    }
    return best;
}

double sector_k_bound(double eta, double ratio) {
    if (!(eta > 0.0 && eta <= M_PI)) throw std::invalid_argument("sector_k_bound: bad eta");
    if (!(ratio >= 1.0)) throw std::invalid_argument("sector_k_bound: ratio must be >= 1");
    const double c = eta >= M_PI / 2 ? 1.0 : 1.0 / std::sin(eta);
    return c * std::log(ratio);
}

}  // namespace qrdyn
