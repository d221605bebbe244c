#include "qrdyn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>

#include "qrdyn/parallel.hpp"

namespace qrdyn {

Rotation rotation_to_pole(const Direction& c) {
    const Vec3 e3{0, 0, 1};
    double d = std::clamp(dot(c.vec(), e3), -1.0, 1.0);
    if (d > 1.0 - 1e-15) return Rotation{};
    if (d < -1.0 + 1e-15) {
        // antipodal: pi rotation about e1
        return Rotation{{1, 0, 0, 0, -1, 0, 0, 0, -1}};
    }
    Vec3 a = cross(c.vec(), e3);
    a = a / a.norm();
    const double ct = d, st = std::sqrt(std::max(0.0, 1.0 - d * d));
    const double omc = 1.0 - ct;
    // Rodrigues
    Rotation r;
    r.m = {ct + a.x * a.x * omc,       a.x * a.y * omc - a.z * st, a.x * a.z * omc + a.y * st,
           a.y * a.x * omc + a.z * st, ct + a.y * a.y * omc,       a.y * a.z * omc - a.x * st,
           a.z * a.x * omc - a.y * st, a.z * a.y * omc + a.x * st, ct + a.z * a.z * omc};
    return r;
}

bool sector_contains(const Sector& s, const Vec3& x) {
    Vec3 v = x - s.apex;
    if (!(v.norm() > 0.0)) throw std::domain_error("sector_contains: x equals the apex");
    return angular_distance(sigma(v), s.axis) < s.opening;
}

void TriMesh::validate() const {
    const int n = static_cast<int>(vertices.size());
    for (const auto& t : triangles) {
        for (int i : t)
            if (i < 0 || i >= n) throw std::invalid_argument("TriMesh: vertex index out of range");
        Vec3 c = cross(vertices[t[1]] - vertices[t[0]], vertices[t[2]] - vertices[t[0]]);
        if (0.5 * c.norm() <= 1e-14)
            throw std::invalid_argument("TriMesh: degenerate triangle");
    }
}

void TriMesh::append(const TriMesh& other) {
    const int base = static_cast<int>(vertices.size());
    vertices.insert(vertices.end(), other.vertices.begin(), other.vertices.end());
    for (auto t : other.triangles)
        triangles.push_back({t[0] + base, t[1] + base, t[2] + base});
}

void DirectionSet::insert(const Direction& d, double shell_radius) {
    for (const auto& s : samples_)
        if (angular_distance(s, d) <= 1e-9) return;
    samples_.push_back(d);
    radii_.push_back(shell_radius);
}

std::vector<double> DirectionSet::shell_radii() const {
    std::vector<double> r = radii_;
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

std::vector<Direction> fibonacci_sphere(std::size_t n) {
    if (n < 1) throw std::invalid_argument("fibonacci_sphere: n must be >= 1");
    static const double ga = M_PI * (3.0 - std::sqrt(5.0));
    std::vector<Direction> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        double az = ga * static_cast<double>(i);
        out.push_back(Direction::unchecked(
            Vec3{rho * std::cos(az), rho * std::sin(az), z}));
    }
    return out;
}

namespace {
// base-2 van der Corput radical inverse of i+1, in (0,1)
double vdc2(std::size_t i) {
    ++i;
    double v = 0.0, f = 0.5;
    while (i) {
        if (i & 1) v += f;
        i >>= 1;
        f *= 0.5;
    }
    return v;
}
}  // namespace

std::vector<Direction> direction_sequence(std::size_t n) {
    static const double ga = M_PI * (3.0 - std::sqrt(5.0));
    std::vector<Direction> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double z = 1.0 - 2.0 * vdc2(i);
        double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        double az = ga * static_cast<double>(i);
        out.push_back(Direction::unchecked(
            Vec3{rho * std::cos(az), rho * std::sin(az), z}));
    }
    return out;
}

namespace {

struct RayHit {
    double t, u, v;
};

// Moeller-Trumbore. Returns hit with t > 0.
bool ray_triangle(const Vec3& o, const Vec3& d, const Vec3& v0, const Vec3& v1, const Vec3& v2,
                  RayHit& hit) {
    const Vec3 e1 = v1 - v0, e2 = v2 - v0;
    const Vec3 p = cross(d, e2);
    const double det = dot(e1, p);
    if (std::abs(det) < 1e-300) return false;
    const double inv = 1.0 / det;
    const Vec3 tv = o - v0;
    const double u = dot(tv, p) * inv;
    if (u < -1e-12 || u > 1.0 + 1e-12) return false;
    const Vec3 q = cross(tv, e1);
    const double v = dot(d, q) * inv;
    if (v < -1e-12 || u + v > 1.0 + 1e-12) return false;
    const double t = dot(e2, q) * inv;
    if (t <= 0.0) return false;
    hit = {t, u, v};
    return true;
}

bool near_edge(const RayHit& h) {
    const double eps = 1e-12;
    const double w = 1.0 - h.u - h.v;
    return h.u < eps || h.v < eps || w < eps || h.u > 1.0 - eps || h.v > 1.0 - eps;
}

Vec3 rotate_about(const Vec3& v, const Vec3& axis_unit, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return v * c + cross(axis_unit, v) * s + axis_unit * (dot(axis_unit, v) * (1.0 - c));
}

}  // namespace

int ray_mesh_hits(const Vec3& origin, const Direction& dir, const TriMesh& mesh) {
    Vec3 d = dir.vec();
    // deterministic perturbation axis
    Vec3 axis = cross(d, Vec3{1, 0, 0});
    if (axis.norm() < 1e-6) axis = cross(d, Vec3{0, 1, 0});
    axis = axis / axis.norm();

    int count = 0;
    for (int attempt = 0; attempt <= 8; ++attempt) {
        count = 0;
        bool grazing = false;
        for (const auto& t : mesh.triangles) {
            RayHit h;
            if (ray_triangle(origin, d, mesh.vertices[t[0]], mesh.vertices[t[1]],
                             mesh.vertices[t[2]], h)) {
                if (near_edge(h)) {
                    grazing = true;
                    break;
                }
                ++count;
            }
        }
        if (!grazing) return count;
        d = rotate_about(dir.vec(), axis, 1e-9 * (attempt + 1));
        d = d / d.norm();
    }
    return count;
}

namespace {

// Conservative triangle/voxel overlap via separating axes in 2D (dominant
// projection) plus the plane slab in the dominant direction.
struct Voxelizer {
    double r_out;
    int res;
    double h;  // voxel edge
    std::vector<uint8_t> blocked;

    Voxelizer(double r, int n) : r_out(r), res(n), h(2.0 * r / n), blocked(std::size_t(n) * n * n, 0) {}

    std::size_t idx(int i, int j, int k) const {
        return (std::size_t(k) * res + j) * res + i;
    }
    double lo(int i) const { return -r_out + i * h; }

    bool tri_box_overlap(const Vec3& c, double half, const Vec3& a, const Vec3& b,
                         const Vec3& d) const {
        // standard SAT: box axes, triangle normal, 9 edge cross products
        const Vec3 v0 = a - c, v1 = b - c, v2 = d - c;
        auto axis_test = [&](const Vec3& ax) {
            double p0 = dot(v0, ax), p1 = dot(v1, ax), p2 = dot(v2, ax);
            double mn = std::min({p0, p1, p2}), mx = std::max({p0, p1, p2});
            double r = half * (std::abs(ax.x) + std::abs(ax.y) + std::abs(ax.z));
            return mn > r || mx < -r;
        };
        if (axis_test({1, 0, 0}) || axis_test({0, 1, 0}) || axis_test({0, 0, 1})) return false;
        const Vec3 e0 = v1 - v0, e1 = v2 - v1, e2 = v0 - v2;
        if (axis_test(cross(e0, e1))) return false;
        const Vec3 boxax[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        for (const auto& ba : boxax) {
            if (axis_test(cross(e0, ba))) return false;
            if (axis_test(cross(e1, ba))) return false;
            if (axis_test(cross(e2, ba))) return false;
        }
        return true;
    }

    void add_triangle(const Vec3& a, const Vec3& b, const Vec3& c) {
        Vec3 mn{std::min({a.x, b.x, c.x}), std::min({a.y, b.y, c.y}), std::min({a.z, b.z, c.z})};
        Vec3 mx{std::max({a.x, b.x, c.x}), std::max({a.y, b.y, c.y}), std::max({a.z, b.z, c.z})};
        auto cell = [&](double v) { return static_cast<int>(std::floor((v + r_out) / h)); };
        int i0 = std::clamp(cell(mn.x), 0, res - 1), i1 = std::clamp(cell(mx.x), 0, res - 1);
        int j0 = std::clamp(cell(mn.y), 0, res - 1), j1 = std::clamp(cell(mx.y), 0, res - 1);
        int k0 = std::clamp(cell(mn.z), 0, res - 1), k1 = std::clamp(cell(mx.z), 0, res - 1);

        const Vec3 n = cross(b - a, c - a);
        const double an[3] = {std::abs(n.x), std::abs(n.y), std::abs(n.z)};
        const int dom = an[0] >= an[1] ? (an[0] >= an[2] ? 0 : 2) : (an[1] >= an[2] ? 1 : 2);

        // iterate the 2D footprint perpendicular to dom, then the few voxels
        // around the plane slab in the dom direction
        auto comp = [](const Vec3& v, int ax) { return ax == 0 ? v.x : (ax == 1 ? v.y : v.z); };
        const int u_ax = (dom + 1) % 3, v_ax = (dom + 2) % 3;
        const int u0 = (u_ax == 0 ? i0 : u_ax == 1 ? j0 : k0), u1 = (u_ax == 0 ? i1 : u_ax == 1 ? j1 : k1);
        const int w0 = (v_ax == 0 ? i0 : v_ax == 1 ? j0 : k0), w1 = (v_ax == 0 ? i1 : v_ax == 1 ? j1 : k1);
        const double ndom = comp(n, dom), ndotA = dot(n, a);

        for (int ui = u0; ui <= u1; ++ui) {
            for (int wi = w0; wi <= w1; ++wi) {
                // plane height range over the cell footprint corners
                double dmin = 1e308, dmax = -1e308;
                for (int du = 0; du <= 1; ++du) {
                    for (int dw = 0; dw <= 1; ++dw) {
                        double uu = lo(ui + du), ww = lo(wi + dw);
                        double rhs = ndotA - comp(n, u_ax) * uu - comp(n, v_ax) * ww;
                        double dv = rhs / ndom;
                        dmin = std::min(dmin, dv);
                        dmax = std::max(dmax, dv);
                    }
                }
                int d0 = std::clamp(static_cast<int>(std::floor((dmin + r_out) / h)) - 1, 0, res - 1);
                int d1 = std::clamp(static_cast<int>(std::floor((dmax + r_out) / h)) + 1, 0, res - 1);
                const int dd0 = (dom == 0 ? i0 : dom == 1 ? j0 : k0);
                const int dd1 = (dom == 0 ? i1 : dom == 1 ? j1 : k1);
                d0 = std::max(d0, dd0);
                d1 = std::min(d1, dd1);
                for (int di = d0; di <= d1; ++di) {
                    int ijk[3];
                    ijk[dom] = di;
                    ijk[u_ax] = ui;
                    ijk[v_ax] = wi;
                    std::size_t id = idx(ijk[0], ijk[1], ijk[2]);
                    if (blocked[id]) continue;
                    Vec3 center{lo(ijk[0]) + h / 2, lo(ijk[1]) + h / 2, lo(ijk[2]) + h / 2};
                    if (tri_box_overlap(center, h / 2, a, b, c)) blocked[id] = 1;
                }
            }
        }
    }
};

}  // namespace

bool voxel_separation(const TriMesh& mesh, double r_out, int res) {
    if (res < 2) throw std::invalid_argument("voxel_separation: res must be >= 2");
    for (const auto& v : mesh.vertices)
        if (v.norm() >= r_out)
            throw std::invalid_argument("voxel_separation: mesh is not contained in the ball");

    Voxelizer vox(r_out, res);
    for (const auto& t : mesh.triangles)
        vox.add_triangle(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);

    const int mid = res / 2;
    if (vox.blocked[vox.idx(mid, mid, mid)])
        throw std::runtime_error("voxel_separation: origin voxel is blocked (indeterminate)");

    std::vector<uint8_t> seen(vox.blocked.size(), 0);
    std::deque<std::array<int, 3>> queue;
    queue.push_back({mid, mid, mid});
    seen[vox.idx(mid, mid, mid)] = 1;
    const int dirs[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    while (!queue.empty()) {
        auto [i, j, k] = queue.front();
        queue.pop_front();
        if (i == 0 || j == 0 || k == 0 || i == res - 1 || j == res - 1 || k == res - 1)
            return false;  // escaped to the boundary shell
        for (const auto& d : dirs) {
            int ni = i + d[0], nj = j + d[1], nk = k + d[2];
            std::size_t id = vox.idx(ni, nj, nk);
            if (seen[id] || vox.blocked[id]) continue;
            seen[id] = 1;
            queue.push_back({ni, nj, nk});
        }
    }
    return true;
}

double SphereSet::distance(const Direction& p) const {
    double best = 1e308;
    for (const auto& c : caps)
        best = std::min(best, std::max(0.0, angular_distance(p, c.center) - c.half_angle));
    for (const auto& q : points) best = std::min(best, angular_distance(p, q));
    return best;
}

std::vector<Direction> SphereSet::sample(std::size_t approx_n) const {
    std::vector<Direction> out = points;
    if (!caps.empty()) {
        for (const auto& d : fibonacci_sphere(approx_n))
            for (const auto& c : caps)
                if (angular_distance(d, c.center) <= c.half_angle) {
                    out.push_back(d);
                    break;
                }
        // boundary rings: the sup over a cap is often attained on its rim
        for (const auto& c : caps) {
            Rotation r = rotation_to_pole(c.center);
            const int nring = 1024;
            for (int i = 0; i < nring; ++i) {
                double th = 2.0 * M_PI * i / nring;
                Vec3 v{std::sin(c.half_angle) * std::cos(th),
                       std::sin(c.half_angle) * std::sin(th), std::cos(c.half_angle)};
                Vec3 w = r.apply_inverse(v);
                out.push_back(Direction::unchecked(w / w.norm()));
            }
        }
    }
    return out;
}

namespace {

double sup_dist_to_points(const std::vector<Direction>& from, const std::vector<Direction>& to) {
    if (to.empty()) throw std::domain_error("hausdorff_sphere: empty set");
    std::vector<double> best(from.size(), 0.0);
    parallel_for(from.size(), [&](std::size_t i) {
        double b = -2.0;  // track max cosine
        const Vec3 p = from[i].vec();
        for (const auto& q : to) b = std::max(b, dot(p, q.vec()));
        best[i] = std::acos(std::clamp(b, -1.0, 1.0));
    });
    double m = 0.0;
    for (double v : best) m = std::max(m, v);
    return m;
}

}  // namespace

double hausdorff_sphere(const DirectionSet& A, const SphereSet& B) {
    if (A.empty()) throw std::domain_error("hausdorff_sphere: empty direction estimate");
    if (B.empty()) throw std::domain_error("hausdorff_sphere: empty target set");
    double d_ab = 0.0;
    for (const auto& a : A.samples()) d_ab = std::max(d_ab, B.distance(a));
    const auto bs = B.sample(40000);
    double d_ba = sup_dist_to_points(bs, A.samples());
    return std::max(d_ab, d_ba);
}

double hausdorff_sphere(const DirectionSet& A, const DirectionSet& B) {
    if (A.empty() || B.empty())
        throw std::domain_error("hausdorff_sphere: empty direction estimate");
    return std::max(sup_dist_to_points(A.samples(), B.samples()),
                    sup_dist_to_points(B.samples(), A.samples()));
}

}  // namespace qrdyn
