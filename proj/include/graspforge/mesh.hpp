// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "graspforge/geom.hpp"

namespace graspforge {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyMeshError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Ray {
    Vec3 origin;
    Vec3 direction;  // unit length
};

struct RayHit {
    Vec3 point;
    int triangle = -1;
    double distance = 0.0;
};

/// Indexed triangle surface in millimeters. Immutable once built; safe to
/// share read-only across worker threads.
struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<Vec3> face_normals;   // unit, outward for CCW winding
    std::vector<double> face_areas;   // mm^2
    std::vector<std::vector<int>> adjacency;  // edge-adjacent triangle indices, ascending
    Vec3 com;
    double total_area = 0.0;
    double signed_volume = 0.0;  // mm^3, signed-tetrahedron sum
    bool watertight = false;
    bool com_from_volume = false;  // false => area-weighted surface centroid fallback
    int welded_vertices = 0;       // duplicates merged at load
    int degenerate_dropped = 0;    // zero-area triangles removed at load

    std::array<Vec3, 3> triangle_vertices(int t) const {
        const auto& tr = triangles[t];
        return {vertices[tr[0]], vertices[tr[1]], vertices[tr[2]]};
    }
    Vec3 triangle_centroid(int t) const {
        auto v = triangle_vertices(t);
        return tri_centroid(v[0], v[1], v[2]);
    }
    Aabb bounds() const {
        Aabb b;
        for (const auto& v : vertices) b.expand(v);
        return b;
    }
    size_t triangle_count() const { return triangles.size(); }
};

enum class MeshFormat { StlAscii, StlBinary, Obj };

/// Weld duplicate vertices (1e-6 mm grid), drop degenerate triangles, then
/// index: normals, areas, adjacency, watertight flag, center of mass.
TriangleMesh build_mesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles);

TriangleMesh load_mesh(const std::string& path, MeshFormat format);
/// Format sniffed from extension (.obj/.stl) and, for STL, file layout.
TriangleMesh load_mesh(const std::string& path);

void save_obj(const std::string& path, const TriangleMesh& mesh);

/// Moller-Trumbore. Returns hit distance along a unit direction, or nothing.
/// Hits closer than `min_distance` are ignored.
std::optional<double> intersect_triangle(const Ray& ray, const Vec3& a, const Vec3& b, const Vec3& c,
                                         double min_distance);

/// Nearest intersection with distance > 1e-6 mm, or nothing.
std::optional<RayHit> ray_cast(const TriangleMesh& mesh, const Ray& ray);
/// Same, restricted to the given triangle indices (a facet's members).
std::optional<RayHit> ray_cast(const TriangleMesh& mesh, std::span<const int> triangle_ids, const Ray& ray);

inline constexpr double kRayEpsilon = 1e-6;   // mm
inline constexpr double kWeldTolerance = 1e-6;  // mm

}  // namespace graspforge
