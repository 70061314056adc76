// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#include "fixtures.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>

namespace graspforge::fixtures {

void append_box_raw(std::vector<Vec3>& vertices, std::vector<std::array<int, 3>>& triangles,
                    const Vec3& lo, const Vec3& hi) {
    int base = (int)vertices.size();
    for (int i = 0; i < 8; ++i)
        vertices.push_back({i & 1 ? hi.x : lo.x, i & 2 ? hi.y : lo.y, i & 4 ? hi.z : lo.z});
    static const int faces[12][3] = {{0, 2, 1}, {1, 2, 3}, {4, 5, 6}, {5, 7, 6},
                                     {0, 1, 4}, {1, 5, 4}, {2, 6, 3}, {3, 6, 7},
                                     {0, 4, 2}, {2, 4, 6}, {1, 3, 5}, {3, 7, 5}};
    for (const auto& f : faces) triangles.push_back({base + f[0], base + f[1], base + f[2]});
}

TriangleMesh make_box(const Vec3& origin, const Vec3& size) {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    append_box_raw(vertices, triangles, origin, origin + size);
    return build_mesh(std::move(vertices), std::move(triangles));
}

TriangleMesh make_uv_sphere(double radius, int rings, int segments, const Vec3& center) {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    vertices.push_back(center + Vec3{0, 0, radius});   // north pole: 0
    vertices.push_back(center + Vec3{0, 0, -radius});  // south pole: 1
    for (int r = 1; r < rings; ++r) {
        double phi = kPi * r / rings;
        for (int s = 0; s < segments; ++s) {
            double theta = 2.0 * kPi * s / segments;
            vertices.push_back(center + Vec3{radius * std::sin(phi) * std::cos(theta),
                                             radius * std::sin(phi) * std::sin(theta),
                                             radius * std::cos(phi)});
        }
    }
    auto ring_vertex = [&](int r, int s) { return 2 + (r - 1) * segments + (s % segments); };
    for (int s = 0; s < segments; ++s) {
        triangles.push_back({0, ring_vertex(1, s), ring_vertex(1, s + 1)});
        triangles.push_back({1, ring_vertex(rings - 1, s + 1), ring_vertex(rings - 1, s)});
    }
    for (int r = 1; r < rings - 1; ++r)
        for (int s = 0; s < segments; ++s) {
            int a = ring_vertex(r, s), b = ring_vertex(r, s + 1);
            int c = ring_vertex(r + 1, s), d = ring_vertex(r + 1, s + 1);
            triangles.push_back({a, c, b});
            triangles.push_back({b, c, d});
        }
    return build_mesh(std::move(vertices), std::move(triangles));
}

TriangleMesh make_icosphere(double radius, int subdivisions) {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> vertices = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                                  {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                                  {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
    std::vector<std::array<int, 3>> triangles = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},  {5, 11, 4},
        {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6},  {3, 6, 8},
        {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
    for (auto& v : vertices) v = v.normalized();

    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            auto key = std::make_pair(std::min(a, b), std::max(a, b));
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            int idx = (int)vertices.size();
            vertices.push_back(((vertices[a] + vertices[b]) * 0.5).normalized());
            midpoint[key] = idx;
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(triangles.size() * 4);
        for (const auto& tr : triangles) {
            int ab = mid(tr[0], tr[1]), bc = mid(tr[1], tr[2]), ca = mid(tr[2], tr[0]);
            next.push_back({tr[0], ab, ca});
            next.push_back({tr[1], bc, ab});
            next.push_back({tr[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        triangles = std::move(next);
    }
    for (auto& v : vertices) v *= radius;
    return build_mesh(std::move(vertices), std::move(triangles));
}

TriangleMesh make_regular_tetrahedron(double edge) {
    double s = edge / std::sqrt(2.0);
    std::vector<Vec3> vertices = {{s / 2, s / 2, s / 2},
                                  {s / 2, -s / 2, -s / 2},
                                  {-s / 2, s / 2, -s / 2},
                                  {-s / 2, -s / 2, s / 2}};
    std::vector<std::array<int, 3>> triangles = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
    return build_mesh(std::move(vertices), std::move(triangles));
}

TriangleMesh make_cylinder(double radius, double height, int segments) {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    for (int i = 0; i < segments; ++i) {
        double a = 2.0 * kPi * i / segments;
        vertices.push_back({radius * std::cos(a), radius * std::sin(a), 0.0});
        vertices.push_back({radius * std::cos(a), radius * std::sin(a), height});
    }
    int bottom_center = (int)vertices.size();
    vertices.push_back({0, 0, 0});
    int top_center = (int)vertices.size();
    vertices.push_back({0, 0, height});
    for (int i = 0; i < segments; ++i) {
        int j = (i + 1) % segments;
        int b0 = 2 * i, t0 = 2 * i + 1, b1 = 2 * j, t1 = 2 * j + 1;
        triangles.push_back({b0, b1, t0});
        triangles.push_back({t0, b1, t1});
        triangles.push_back({bottom_center, b1, b0});
        triangles.push_back({top_center, t0, t1});
    }
    return build_mesh(std::move(vertices), std::move(triangles));
}

TriangleMesh combine(const TriangleMesh& a, const TriangleMesh& b) {
    std::vector<Vec3> vertices = a.vertices;
    std::vector<std::array<int, 3>> triangles = a.triangles;
    int base = (int)vertices.size();
    vertices.insert(vertices.end(), b.vertices.begin(), b.vertices.end());
    for (const auto& t : b.triangles) triangles.push_back({t[0] + base, t[1] + base, t[2] + base});
    return build_mesh(std::move(vertices), std::move(triangles));
}

TriangleMesh make_sphere_with_handle(double sphere_radius, const Vec3& handle_size, int rings,
                                     int segments) {
    TriangleMesh sphere = make_uv_sphere(sphere_radius, rings, segments);
    // handle protrudes along +x, rooted inside the sphere
    Vec3 origin{sphere_radius - 2.0, -handle_size.y / 2, -handle_size.z / 2};
    TriangleMesh handle = make_box(origin, handle_size);
    return combine(sphere, handle);
}

TriangleMesh make_slab_with_wall() {
    TriangleMesh slab = make_box({-10, -30, -20}, {20, 60, 20});
    TriangleMesh wall = make_box({30, -30, -20}, {10, 60, 35});
    return combine(slab, wall);
}

TriangleMesh make_wedge_slab(double slope) {
    // 40 mm nominal thickness along x, 120 x 120 laterally; +x face leans by
    // `slope` so its x recedes as z grows.
    const double x0 = -20.0, x1 = 20.0, half = 60.0;
    const double lean = std::tan(slope) * half;
    std::vector<Vec3> vertices = {
        {x0, -half, -half}, {x0, half, -half}, {x0, -half, half}, {x0, half, half},
        {x1 + lean, -half, -half}, {x1 + lean, half, -half}, {x1 - lean, -half, half},
        {x1 - lean, half, half}};
    // mirror of append_box_raw index layout: lo-x verts 0..3, hi-x verts 4..7
    std::vector<std::array<int, 3>> triangles = {
        {0, 2, 1}, {1, 2, 3},  // -x
        {4, 5, 6}, {5, 7, 6},  // +x (leaning)
        {0, 1, 4}, {1, 5, 4},  // -z
        {2, 6, 3}, {3, 6, 7},  // +z
        {0, 4, 2}, {2, 4, 6},  // -y
        {1, 3, 5}, {3, 7, 5},  // +y
    };
    return build_mesh(std::move(vertices), std::move(triangles));
}

void write_unit_cube_obj(const std::string& path, bool duplicate_vertices) {
    std::ofstream out(path);
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    append_box_raw(vertices, triangles, {0, 0, 0}, {1, 1, 1});
    if (!duplicate_vertices) {
        for (const auto& v : vertices) out << "v " << v.x << ' ' << v.y << ' ' << v.z << '\n';
        for (const auto& t : triangles) out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
        return;
    }
    for (const auto& t : triangles)
        for (int i = 0; i < 3; ++i) {
            const Vec3& v = vertices[t[i]];
            out << "v " << v.x << ' ' << v.y << ' ' << v.z << '\n';
        }
    for (size_t t = 0; t < triangles.size(); ++t)
        out << "f " << 3 * t + 1 << ' ' << 3 * t + 2 << ' ' << 3 * t + 3 << '\n';
}

void write_cube_stl_ascii(const std::string& path, double edge) {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    append_box_raw(vertices, triangles, {0, 0, 0}, {edge, edge, edge});
    std::ofstream out(path);
    out << "solid cube\n";
    for (const auto& t : triangles) {
        Vec3 n = tri_raw_normal(vertices[t[0]], vertices[t[1]], vertices[t[2]]).normalized();
        out << "  facet normal " << n.x << ' ' << n.y << ' ' << n.z << "\n    outer loop\n";
        for (int i = 0; i < 3; ++i) {
            const Vec3& v = vertices[t[i]];
            out << "      vertex " << v.x << ' ' << v.y << ' ' << v.z << '\n';
        }
        out << "    endloop\n  endfacet\n";
    }
    out << "endsolid cube\n";
}

void write_cube_stl_binary(const std::string& path, double edge) {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    append_box_raw(vertices, triangles, {0, 0, 0}, {edge, edge, edge});
    std::ofstream out(path, std::ios::binary);
    char header[80] = {};
    out.write(header, 80);
    uint32_t count = (uint32_t)triangles.size();
    out.write(reinterpret_cast<const char*>(&count), 4);
    for (const auto& t : triangles) {
        Vec3 n = tri_raw_normal(vertices[t[0]], vertices[t[1]], vertices[t[2]]).normalized();
        float rec[12] = {(float)n.x, (float)n.y, (float)n.z};
        for (int i = 0; i < 3; ++i) {
            const Vec3& v = vertices[t[i]];
            rec[3 + 3 * i] = (float)v.x;
            rec[4 + 3 * i] = (float)v.y;
            rec[5 + 3 * i] = (float)v.z;
        }
        out.write(reinterpret_cast<const char*>(rec), 48);
        uint16_t attr = 0;
        out.write(reinterpret_cast<const char*>(&attr), 2);
    }
}

}  // namespace graspforge::fixtures
