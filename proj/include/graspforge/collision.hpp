// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#pragma once

#include <optional>
#include <vector>

#include "graspforge/mesh.hpp"

namespace graspforge {

/// Axis-aligned bounding box tree over a mesh's triangles. Immutable after
/// construction; queries are pure and safe to run concurrently.
class Bvh {
public:
    struct Node {
        Aabb box;
        int left = -1, right = -1;  // internal node children, or -1 for a leaf
        int begin = 0, end = 0;     // leaf range into tri_order
        bool is_leaf() const { return left < 0; }
    };

    explicit Bvh(const TriangleMesh& mesh, int leaf_size = 4);

    const TriangleMesh& mesh() const { return *mesh_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<int>& triangle_order() const { return tri_order_; }
    const Aabb& root_box() const { return nodes_.front().box; }

private:
    int build(int begin, int end, int leaf_size, const std::vector<Aabb>& tri_boxes,
              const std::vector<Vec3>& tri_centroids);

    const TriangleMesh* mesh_;
    std::vector<Node> nodes_;
    std::vector<int> tri_order_;
};

/// Capsule: segment [a, b] inflated by radius. Used as the stroke proxy of a
/// closing finger; spherical caps make it conservative against the flat-capped
/// cylinder of the same radius.
struct Capsule {
    Vec3 a, b;
    double radius = 0.0;
};

/// Surface intersection test between two posed meshes. Containment without a
/// surface crossing is not detected.
bool check_collision(const Bvh& a, const Transform& pose_a, const Bvh& b, const Transform& pose_b);

/// True iff any mesh triangle lies within `radius` of the capsule segment.
bool check_capsule(const Capsule& capsule, const Bvh& mesh_bvh, const Transform& mesh_pose);

/// BVH-accelerated equivalent of mesh_core ray_cast (mesh frame).
std::optional<RayHit> ray_cast(const Bvh& bvh, const Ray& ray);

// Exact primitives, exposed for the oracle tests.
bool tri_tri_intersect(const Vec3& p1, const Vec3& q1, const Vec3& r1, const Vec3& p2, const Vec3& q2,
                       const Vec3& r2);
double distance_point_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);
double distance_segment_segment(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1);
double distance_segment_triangle(const Vec3& p0, const Vec3& p1, const Vec3& a, const Vec3& b,
                                 const Vec3& c);

}  // namespace graspforge
