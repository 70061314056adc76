// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#pragma once

#include <string>

#include "graspforge/mesh.hpp"

namespace graspforge::fixtures {

// Axis-aligned box, corner at `origin`, extents `size`, outward winding.
TriangleMesh make_box(const Vec3& origin, const Vec3& size);
// Cube [0, edge]^3.
inline TriangleMesh make_cube(double edge) { return make_box({0, 0, 0}, {edge, edge, edge}); }
// Cube centered at the origin.
inline TriangleMesh make_centered_cube(double edge) {
    return make_box({-edge / 2, -edge / 2, -edge / 2}, {edge, edge, edge});
}

TriangleMesh make_uv_sphere(double radius, int rings, int segments, const Vec3& center = {});
TriangleMesh make_icosphere(double radius, int subdivisions);
TriangleMesh make_regular_tetrahedron(double edge);
// Closed cylinder, axis +z, base at z=0.
TriangleMesh make_cylinder(double radius, double height, int segments);

// Two closed shells in one mesh: a sphere and a box handle sticking out of it
// along +x. `rings/segments` set the sphere resolution.
TriangleMesh make_sphere_with_handle(double sphere_radius, const Vec3& handle_size, int rings, int segments);

// Graspable slab with a separate wall that blocks the finger sweep beyond the
// slab's +-x contact faces.
TriangleMesh make_slab_with_wall();

// Box slab whose +x face is tilted by `slope` radians about the y axis, so
// the surface recedes along +x as z grows.
TriangleMesh make_wedge_slab(double slope);

// Concatenate two meshes into one (re-indexed, re-welded).
TriangleMesh combine(const TriangleMesh& a, const TriangleMesh& b);

// Raw geometry of a box, appended without welding (for file-writer tests).
void append_box_raw(std::vector<Vec3>& vertices, std::vector<std::array<int, 3>>& triangles,
                    const Vec3& lo, const Vec3& hi);

// Write a unit cube OBJ; `duplicate_vertices` emits 36 per-face vertices.
void write_unit_cube_obj(const std::string& path, bool duplicate_vertices);
void write_cube_stl_ascii(const std::string& path, double edge);
void write_cube_stl_binary(const std::string& path, double edge);

}  // namespace graspforge::fixtures
