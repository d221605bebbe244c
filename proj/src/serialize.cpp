#include "qrdyn/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qrdyn {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string direction_set_csv(const DirectionSet& ds) {
    std::ostringstream os;
    os << "ux,uy,uz,shell_radius\r\n";
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const Vec3& u = ds.samples()[i].vec();
        os << num(u.x) << ',' << num(u.y) << ',' << num(u.z) << ','
           << num(ds.sample_radii()[i]) << "\r\n";
    }
    return os.str();
}

std::string growth_curve_csv(const GrowthCurve& g) {
    std::ostringstream os;
    os << "r,Mhat,mhat\r\n";
    for (std::size_t i = 0; i < g.radii.size(); ++i)
        os << num(g.radii[i]) << ',' << num(g.mhat_max[i]) << ',' << num(g.mhat_min[i])
           << "\r\n";
    return os.str();
}

json direction_set_json(const DirectionSet& ds) {
    json arr = json::array();
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const Vec3& u = ds.samples()[i].vec();
        arr.push_back({{"u", {u.x, u.y, u.z}}, {"shell_radius", ds.sample_radii()[i]}});
    }
    return {{"samples", arr}, {"shell_radii", ds.shell_radii()}};
}

json modulus_constants_json() {
    const auto& mc = modulus_constants();
    return {{"C1", mc.c1},
            {"C2", mc.c2},
            {"argmin", {mc.argmin[0], mc.argmin[1]}},
            {"argmax", {mc.argmax[0], mc.argmax[1]}}};
}

std::string trimesh_ply(const TriMesh& mesh) {
    std::ostringstream os;
    os << "ply\nformat ascii 1.0\n";
    os << "element vertex " << mesh.vertices.size() << "\n";
    os << "property double x\nproperty double y\nproperty double z\n";
    os << "element face " << mesh.triangles.size() << "\n";
    os << "property list uchar int vertex_indices\nend_header\n";
    for (const auto& v : mesh.vertices)
        os << num(v.x) << ' ' << num(v.y) << ' ' << num(v.z) << '\n';
    for (const auto& t : mesh.triangles)
        os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    return os.str();
}

namespace {

json cap_to_json(const Cap& c) {
    const Vec3& u = c.center.vec();
    return {{"center", {u.x, u.y, u.z}}, {"half_angle", c.half_angle}};
}

Cap cap_from_json(const json& j) {
    const auto c = j.at("center");
    Vec3 v{c.at(0).get<double>(), c.at(1).get<double>(), c.at(2).get<double>()};
    return Cap(sigma(v), j.at("half_angle").get<double>());
}

}  // namespace

json dynmap_to_json(const DynMap& m) {
    json j{{"kind", m.kind_name()}};
    switch (m.kind()) {
        case DynMap::Kind::identity:
        case DynMap::Kind::zorich:
            break;
        case DynMap::Kind::scaled_identity:
            j["factor"] = m.scale_factor();
            break;
        case DynMap::Kind::ns:
            j["T"] = m.ramp().T;
            break;
        case DynMap::Kind::conjugated:
        case DynMap::Kind::glued: {
            j["T"] = m.ramp().T;
            json caps = json::array();
            for (const auto& p : m.pieces()) caps.push_back(cap_to_json(p.cap));
            j["caps"] = caps;
            break;
        }
    }
    return j;
}

DynMap dynmap_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const double t = j.value("T", 2.0);
    if (kind == "identity") return DynMap::identity();
    if (kind == "scaled_identity") return DynMap::scaled_identity(j.value("factor", 1.0));
    if (kind == "zorich") return DynMap::zorich_map();
    if (kind == "ns") return DynMap::ns_map(t);
    if (kind == "conjugated") {
        const auto& caps = j.at("caps");
        if (caps.size() != 1)
            throw std::invalid_argument("dynmap_from_json: conjugated needs exactly one cap");
        return DynMap::conjugated(cap_from_json(caps.at(0)), DynMap::ns_map(t));
    }
    if (kind == "glued") {
        std::vector<std::pair<Cap, DynMap>> pieces;
        for (const auto& c : j.at("caps"))
            pieces.emplace_back(cap_from_json(c), DynMap::ns_map(t));
        return DynMap::glued(std::move(pieces));
    }
    throw std::invalid_argument("dynmap_from_json: unknown kind '" + kind + "'");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
}

std::string config_hash(const json& j) {
    const std::string s = j.dump();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace qrdyn
