// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#include "graspforge/mesh.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace graspforge {

namespace {

constexpr double kDegenerateArea = 1e-12;  // mm^2

struct GridKey {
    int64_t x, y, z;
    bool operator==(const GridKey& o) const { return x == o.x && y == o.y && z == o.z; }
};

struct GridKeyHash {
    size_t operator()(const GridKey& k) const {
        uint64_t h = 1469598103934665603ull;
        for (uint64_t v : {(uint64_t)k.x, (uint64_t)k.y, (uint64_t)k.z}) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return h;
    }
};

GridKey quantize(const Vec3& v, double tol) {
    return {(int64_t)std::llround(v.x / tol), (int64_t)std::llround(v.y / tol),
            (int64_t)std::llround(v.z / tol)};
}

}  // namespace

TriangleMesh build_mesh(std::vector<Vec3> in_vertices, std::vector<std::array<int, 3>> in_triangles) {
    TriangleMesh mesh;

    // Weld: first-encounter order keeps indexing deterministic.
    std::unordered_map<GridKey, int, GridKeyHash> index;
    index.reserve(in_vertices.size());
    std::vector<int> remap(in_vertices.size());
    for (size_t i = 0; i < in_vertices.size(); ++i) {
        GridKey key = quantize(in_vertices[i], kWeldTolerance);
        auto [it, inserted] = index.try_emplace(key, (int)mesh.vertices.size());
        if (inserted) mesh.vertices.push_back(in_vertices[i]);
        remap[i] = it->second;
    }
    mesh.welded_vertices = (int)(in_vertices.size() - mesh.vertices.size());

    for (const auto& t : in_triangles) {
        std::array<int, 3> tr{remap[t[0]], remap[t[1]], remap[t[2]]};
        if (tr[0] == tr[1] || tr[1] == tr[2] || tr[0] == tr[2]) {
            ++mesh.degenerate_dropped;
            continue;
        }
        const Vec3 n = tri_raw_normal(mesh.vertices[tr[0]], mesh.vertices[tr[1]], mesh.vertices[tr[2]]);
        if (0.5 * n.norm() <= kDegenerateArea) {
            ++mesh.degenerate_dropped;
            continue;
        }
        mesh.triangles.push_back(tr);
        mesh.face_normals.push_back(n.normalized());
        mesh.face_areas.push_back(0.5 * n.norm());
        mesh.total_area += mesh.face_areas.back();
    }
    if (mesh.triangles.empty()) throw EmptyMeshError("mesh has no valid triangles");

    // Edge map over (min,max) vertex pairs; also drives the watertight check.
    std::map<std::pair<int, int>, std::vector<int>> edges;
    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tr = mesh.triangles[t];
        for (int e = 0; e < 3; ++e) {
            int a = tr[e], b = tr[(e + 1) % 3];
            edges[{std::min(a, b), std::max(a, b)}].push_back((int)t);
        }
    }
    mesh.adjacency.assign(mesh.triangles.size(), {});
    mesh.watertight = true;
    for (const auto& [edge, tris] : edges) {
        if (tris.size() != 2) mesh.watertight = false;
        for (size_t i = 0; i < tris.size(); ++i)
            for (size_t j = 0; j < tris.size(); ++j)
                if (i != j) mesh.adjacency[tris[i]].push_back(tris[j]);
    }
    for (auto& adj : mesh.adjacency) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }

    // Volume centroid by signed tetrahedra against the origin; the ratio is
    // orientation-independent but a near-zero or negative total volume means
    // the surface does not bound a sensible solid.
    Vec3 moment{};
    double volume = 0.0;
    for (const auto& tr : mesh.triangles) {
        const Vec3 &a = mesh.vertices[tr[0]], &b = mesh.vertices[tr[1]], &c = mesh.vertices[tr[2]];
        double v = a.dot(b.cross(c)) / 6.0;
        volume += v;
        moment += (a + b + c) * (v / 4.0);
    }
    mesh.signed_volume = volume;
    if (volume > 1e-9) {
        mesh.com = moment / volume;
        mesh.com_from_volume = true;
    } else {
        Vec3 centroid{};
        for (size_t t = 0; t < mesh.triangles.size(); ++t)
            centroid += mesh.triangle_centroid((int)t) * mesh.face_areas[t];
        mesh.com = centroid / mesh.total_area;
        mesh.com_from_volume = false;
    }
    return mesh;
}

namespace {

TriangleMesh parse_obj(std::istream& in) {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "v") {
            Vec3 v;
            if (!(ls >> v.x >> v.y >> v.z))
                throw ParseError("obj: bad vertex at line " + std::to_string(lineno));
            vertices.push_back(v);
        } else if (tag == "f") {
            std::vector<int> idx;
            std::string word;
            while (ls >> word) {
                // accept v, v/vt, v//vn, v/vt/vn
                size_t slash = word.find('/');
                std::string head = slash == std::string::npos ? word : word.substr(0, slash);
                int i = 0;
                try {
                    i = std::stoi(head);
                } catch (const std::exception&) {
                    throw ParseError("obj: bad face index at line " + std::to_string(lineno));
                }
                if (i < 0) i = (int)vertices.size() + i + 1;
                if (i < 1 || i > (int)vertices.size())
                    throw ParseError("obj: face index out of range at line " + std::to_string(lineno));
                idx.push_back(i - 1);
            }
            if (idx.size() < 3) throw ParseError("obj: face with <3 vertices at line " + std::to_string(lineno));
            for (size_t k = 2; k < idx.size(); ++k)
                triangles.push_back({idx[0], idx[k - 1], idx[k]});
        }
        // everything else (vn, vt, g, usemtl, comments) is ignored
    }
    return build_mesh(std::move(vertices), std::move(triangles));
}

TriangleMesh parse_stl_ascii(std::istream& in) {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::string tok;
    std::vector<Vec3> tri;
    bool saw_solid = false;
    while (in >> tok) {
        if (tok == "solid") {
            saw_solid = true;
            std::string rest;
            std::getline(in, rest);  // name
        } else if (tok == "vertex") {
            Vec3 v;
            if (!(in >> v.x >> v.y >> v.z)) throw ParseError("stl: bad vertex");
            tri.push_back(v);
            if (tri.size() == 3) {
                int base = (int)vertices.size();
                vertices.insert(vertices.end(), tri.begin(), tri.end());
                triangles.push_back({base, base + 1, base + 2});
                tri.clear();
            }
        }
        // facet/outer/loop/endloop/endfacet/endsolid and normals are skipped;
        // normals are recomputed from the winding.
    }
    if (!saw_solid) throw ParseError("stl: missing 'solid' header");
    if (!tri.empty()) throw ParseError("stl: truncated facet");
    return build_mesh(std::move(vertices), std::move(triangles));
}

TriangleMesh parse_stl_binary(std::istream& in) {
    char header[80];
    in.read(header, 80);
    uint32_t count = 0;
    in.read(reinterpret_cast<char*>(&count), 4);
    if (!in) throw ParseError("stl: truncated binary header");
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    vertices.reserve(count * 3);
    triangles.reserve(count);
    for (uint32_t t = 0; t < count; ++t) {
        float data[12];
        uint16_t attr;
        in.read(reinterpret_cast<char*>(data), 48);
        in.read(reinterpret_cast<char*>(&attr), 2);
        if (!in) throw ParseError("stl: truncated binary triangle record");
        int base = (int)vertices.size();
        for (int v = 0; v < 3; ++v)
            vertices.push_back({data[3 + v * 3], data[4 + v * 3], data[5 + v * 3]});
        triangles.push_back({base, base + 1, base + 2});
    }
    return build_mesh(std::move(vertices), std::move(triangles));
}

bool looks_binary_stl(const std::string& path) {
    std::ifstream f(path, std::ios::binary | std::ios::ate);
    auto size = f.tellg();
    if (size < 84) return false;
    f.seekg(80);
    uint32_t count = 0;
    f.read(reinterpret_cast<char*>(&count), 4);
    return (std::streamoff)size == 84 + (std::streamoff)count * 50;
}

}  // namespace

TriangleMesh load_mesh(const std::string& path, MeshFormat format) {
    std::ifstream in(path, format == MeshFormat::StlBinary ? std::ios::binary : std::ios::in);
    if (!in) throw ParseError("cannot open " + path);
    switch (format) {
        case MeshFormat::Obj: return parse_obj(in);
        case MeshFormat::StlAscii: return parse_stl_ascii(in);
        case MeshFormat::StlBinary: return parse_stl_binary(in);
    }
    throw ParseError("unknown mesh format");
}

TriangleMesh load_mesh(const std::string& path) {
    auto dot = path.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    for (auto& c : ext) c = (char)std::tolower(c);
    if (ext == "obj") return load_mesh(path, MeshFormat::Obj);
    if (ext == "stl")
        return load_mesh(path, looks_binary_stl(path) ? MeshFormat::StlBinary : MeshFormat::StlAscii);
    throw ParseError("cannot infer mesh format of " + path);
}

void save_obj(const std::string& path, const TriangleMesh& mesh) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out.precision(17);
    for (const auto& v : mesh.vertices) out << "v " << v.x << ' ' << v.y << ' ' << v.z << '\n';
    for (const auto& t : mesh.triangles)
        out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

std::optional<double> intersect_triangle(const Ray& ray, const Vec3& a, const Vec3& b, const Vec3& c,
                                         double min_distance) {
    constexpr double kParallelEps = 1e-12;
    const Vec3 e1 = b - a, e2 = c - a;
    const Vec3 p = ray.direction.cross(e2);
    const double det = e1.dot(p);
    if (std::abs(det) < kParallelEps) return std::nullopt;
    const double inv = 1.0 / det;
    const Vec3 s = ray.origin - a;
    const double u = s.dot(p) * inv;
    if (u < 0.0 || u > 1.0) return std::nullopt;
    const Vec3 q = s.cross(e1);
    const double v = ray.direction.dot(q) * inv;
    if (v < 0.0 || u + v > 1.0) return std::nullopt;
    const double t = e2.dot(q) * inv;
    if (t <= min_distance) return std::nullopt;
    return t;
}

namespace {

std::optional<RayHit> cast_over(const TriangleMesh& mesh, std::span<const int> ids, const Ray& ray) {
    std::optional<RayHit> best;
    for (int t : ids) {
        auto v = mesh.triangle_vertices(t);
        auto d = intersect_triangle(ray, v[0], v[1], v[2], kRayEpsilon);
        if (d && (!best || *d < best->distance))
            best = RayHit{ray.origin + ray.direction * *d, t, *d};
    }
    return best;
}

}  // namespace

std::optional<RayHit> ray_cast(const TriangleMesh& mesh, const Ray& ray) {
    std::vector<int> all(mesh.triangle_count());
    for (size_t i = 0; i < all.size(); ++i) all[i] = (int)i;
    return cast_over(mesh, all, ray);
}

std::optional<RayHit> ray_cast(const TriangleMesh& mesh, std::span<const int> triangle_ids, const Ray& ray) {
    return cast_over(mesh, triangle_ids, ray);
}

}  // namespace graspforge
