// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#include "graspforge/collision.hpp"

#include <algorithm>
#include <cmath>

namespace graspforge {

Bvh::Bvh(const TriangleMesh& mesh, int leaf_size) : mesh_(&mesh) {
    const int n = (int)mesh.triangle_count();
    tri_order_.resize(n);
    std::vector<Aabb> tri_boxes(n);
    std::vector<Vec3> tri_centroids(n);
    for (int t = 0; t < n; ++t) {
        tri_order_[t] = t;
        auto v = mesh.triangle_vertices(t);
        for (const auto& p : v) tri_boxes[t].expand(p);
        tri_centroids[t] = tri_centroid(v[0], v[1], v[2]);
    }
    nodes_.reserve(2 * n);
    build(0, n, std::max(1, leaf_size), tri_boxes, tri_centroids);
}

int Bvh::build(int begin, int end, int leaf_size, const std::vector<Aabb>& tri_boxes,
               const std::vector<Vec3>& tri_centroids) {
    int index = (int)nodes_.size();
    nodes_.push_back({});
    Aabb box;
    Aabb centroid_box;
    for (int i = begin; i < end; ++i) {
        box.merge(tri_boxes[tri_order_[i]]);
        centroid_box.expand(tri_centroids[tri_order_[i]]);
    }
    nodes_[index].box = box;

    if (end - begin <= leaf_size) {
        nodes_[index].begin = begin;
        nodes_[index].end = end;
        return index;
    }

    Vec3 extent = centroid_box.extent();
    int axis = 0;
    if (extent.y > extent.x) axis = 1;
    if (extent.z > extent[axis]) axis = 2;

    // Median split; ties broken by index so rebuilds are identical.
    int mid = (begin + end) / 2;
    std::sort(tri_order_.begin() + begin, tri_order_.begin() + end, [&](int a, int b) {
        double ca = tri_centroids[a][axis], cb = tri_centroids[b][axis];
        return ca != cb ? ca < cb : a < b;
    });

    int left = build(begin, mid, leaf_size, tri_boxes, tri_centroids);
    int right = build(mid, end, leaf_size, tri_boxes, tri_centroids);
    nodes_[index].left = left;
    nodes_[index].right = right;
    return index;
}

// ---------------------------------------------------------------------------
// Exact primitives

namespace {

constexpr double kCoplanarEps = 1e-9;  // mm, on normalized plane distances

int dominant_axis(const Vec3& v) {
    double ax = std::abs(v.x), ay = std::abs(v.y), az = std::abs(v.z);
    if (ax >= ay && ax >= az) return 0;
    return ay >= az ? 1 : 2;
}

double orient2d(double ax, double ay, double bx, double by, double cx, double cy) {
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

bool segments_intersect_2d(const double a[2], const double b[2], const double c[2], const double d[2]) {
    double o1 = orient2d(a[0], a[1], b[0], b[1], c[0], c[1]);
    double o2 = orient2d(a[0], a[1], b[0], b[1], d[0], d[1]);
    double o3 = orient2d(c[0], c[1], d[0], d[1], a[0], a[1]);
    double o4 = orient2d(c[0], c[1], d[0], d[1], b[0], b[1]);
    if (o1 == 0.0 && o2 == 0.0 && o3 == 0.0 && o4 == 0.0) {
        // collinear: 1D interval overlap on the longer axis
        int ax = std::abs(b[0] - a[0]) >= std::abs(b[1] - a[1]) ? 0 : 1;
        double alo = std::min(a[ax], b[ax]), ahi = std::max(a[ax], b[ax]);
        double clo = std::min(c[ax], d[ax]), chi = std::max(c[ax], d[ax]);
        return std::max(alo, clo) <= std::min(ahi, chi);
    }
    return o1 * o2 <= 0.0 && o3 * o4 <= 0.0;
}

bool point_in_tri_2d(const double p[2], const double a[2], const double b[2], const double c[2]) {
    double o1 = orient2d(a[0], a[1], b[0], b[1], p[0], p[1]);
    double o2 = orient2d(b[0], b[1], c[0], c[1], p[0], p[1]);
    double o3 = orient2d(c[0], c[1], a[0], a[1], p[0], p[1]);
    bool has_neg = o1 < 0 || o2 < 0 || o3 < 0;
    bool has_pos = o1 > 0 || o2 > 0 || o3 > 0;
    return !(has_neg && has_pos);
}

bool coplanar_tri_tri(const Vec3& n, const Vec3 t1[3], const Vec3 t2[3]) {
    // project away the dominant normal axis
    int drop = dominant_axis(n);
    int i0 = drop == 0 ? 1 : 0, i1 = drop == 2 ? 1 : 2;
    double a[3][2], b[3][2];
    for (int i = 0; i < 3; ++i) {
        a[i][0] = t1[i][i0]; a[i][1] = t1[i][i1];
        b[i][0] = t2[i][i0]; b[i][1] = t2[i][i1];
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (segments_intersect_2d(a[i], a[(i + 1) % 3], b[j], b[(j + 1) % 3])) return true;
    // full containment: touching counts, boundary inclusive
    if (point_in_tri_2d(a[0], b[0], b[1], b[2])) return true;
    if (point_in_tri_2d(b[0], a[0], a[1], a[2])) return true;
    return false;
}

// Parameter interval of the triangle's section on the plane-intersection
// line, using precomputed projections and snapped signed distances.
bool line_interval(const double proj[3], const double dist[3], double& lo, double& hi) {
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    auto add = [&](double t) {
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    };
    for (int i = 0; i < 3; ++i) {
        if (dist[i] == 0.0) add(proj[i]);
        int j = (i + 1) % 3;
        if (dist[i] * dist[j] < 0.0)
            add(proj[i] + (proj[j] - proj[i]) * dist[i] / (dist[i] - dist[j]));
    }
    return lo <= hi;
}

}  // namespace

bool tri_tri_intersect(const Vec3& p1, const Vec3& q1, const Vec3& r1, const Vec3& p2, const Vec3& q2,
                       const Vec3& r2) {
    const Vec3 t1[3] = {p1, q1, r1};
    const Vec3 t2[3] = {p2, q2, r2};

    const Vec3 n2 = tri_raw_normal(p2, q2, r2).normalized();
    double d1[3];
    for (int i = 0; i < 3; ++i) {
        d1[i] = (t1[i] - p2).dot(n2);
        if (std::abs(d1[i]) < kCoplanarEps) d1[i] = 0.0;
    }
    if ((d1[0] > 0 && d1[1] > 0 && d1[2] > 0) || (d1[0] < 0 && d1[1] < 0 && d1[2] < 0)) return false;

    const Vec3 n1 = tri_raw_normal(p1, q1, r1).normalized();
    double d2[3];
    for (int i = 0; i < 3; ++i) {
        d2[i] = (t2[i] - p1).dot(n1);
        if (std::abs(d2[i]) < kCoplanarEps) d2[i] = 0.0;
    }
    if ((d2[0] > 0 && d2[1] > 0 && d2[2] > 0) || (d2[0] < 0 && d2[1] < 0 && d2[2] < 0)) return false;

    if (d1[0] == 0.0 && d1[1] == 0.0 && d1[2] == 0.0) return coplanar_tri_tri(n2, t1, t2);

    const Vec3 line_dir = n1.cross(n2);
    const int axis = dominant_axis(line_dir);
    double proj1[3], proj2[3];
    for (int i = 0; i < 3; ++i) {
        proj1[i] = t1[i][axis];
        proj2[i] = t2[i][axis];
    }
    double lo1, hi1, lo2, hi2;
    if (!line_interval(proj1, d1, lo1, hi1)) return false;
    if (!line_interval(proj2, d2, lo2, hi2)) return false;
    return std::max(lo1, lo2) <= std::min(hi1, hi2);
}

double distance_point_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    // Ericson, Real-Time Collision Detection, closest point on triangle.
    const Vec3 ab = b - a, ac = c - a, ap = p - a;
    double d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0.0 && d2 <= 0.0) return (p - a).norm();

    const Vec3 bp = p - b;
    double d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0.0 && d4 <= d3) return (p - b).norm();

    double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        double v = d1 / (d1 - d3);
        return (p - (a + ab * v)).norm();
    }

    const Vec3 cp = p - c;
    double d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0.0 && d5 <= d6) return (p - c).norm();

    double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        double w = d2 / (d2 - d6);
        return (p - (a + ac * w)).norm();
    }

    double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
        double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return (p - (b + (c - b) * w)).norm();
    }

    double denom = 1.0 / (va + vb + vc);
    double v = vb * denom, w = vc * denom;
    return (p - (a + ab * v + ac * w)).norm();
}

double distance_segment_segment(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1) {
    const Vec3 d1 = p1 - p0, d2 = q1 - q0, r = p0 - q0;
    double a = d1.norm2(), e = d2.norm2(), f = d2.dot(r);
    double s = 0.0, t = 0.0;
    constexpr double eps = 1e-30;
    if (a <= eps && e <= eps) return (p0 - q0).norm();
    if (a <= eps) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        double c = d1.dot(r);
        if (e <= eps) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            double b = d1.dot(d2);
            double denom = a * e - b * b;
            s = denom > eps ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return ((p0 + d1 * s) - (q0 + d2 * t)).norm();
}

double distance_segment_triangle(const Vec3& p0, const Vec3& p1, const Vec3& a, const Vec3& b,
                                 const Vec3& c) {
    // Zero if the segment pierces the triangle.
    const Vec3 dir = p1 - p0;
    const double len = dir.norm();
    if (len > 0.0) {
        Ray ray{p0, dir / len};
        auto t = intersect_triangle(ray, a, b, c, -1.0);
        if (t && *t >= 0.0 && *t <= len) return 0.0;
    }
    double d = std::min({distance_segment_segment(p0, p1, a, b), distance_segment_segment(p0, p1, b, c),
                         distance_segment_segment(p0, p1, c, a), distance_point_triangle(p0, a, b, c),
                         distance_point_triangle(p1, a, b, c)});
    return d;
}

// ---------------------------------------------------------------------------
// Queries

namespace {

bool collide_nodes(const Bvh& a, const Bvh& b, int na, int nb, const Transform& b_to_a) {
    const auto& node_a = a.nodes()[na];
    const auto& node_b = b.nodes()[nb];
    if (!node_a.box.overlaps(transformed_aabb(node_b.box, b_to_a))) return false;

    if (node_a.is_leaf() && node_b.is_leaf()) {
        for (int i = node_a.begin; i < node_a.end; ++i) {
            auto va = a.mesh().triangle_vertices(a.triangle_order()[i]);
            for (int j = node_b.begin; j < node_b.end; ++j) {
                auto vb = b.mesh().triangle_vertices(b.triangle_order()[j]);
                Vec3 w0 = b_to_a.apply(vb[0]), w1 = b_to_a.apply(vb[1]), w2 = b_to_a.apply(vb[2]);
                if (tri_tri_intersect(va[0], va[1], va[2], w0, w1, w2)) return true;
            }
        }
        return false;
    }
    // descend the node with the larger box
    bool descend_a = !node_a.is_leaf() &&
                     (node_b.is_leaf() || node_a.box.diagonal() >= node_b.box.diagonal());
    if (descend_a)
        return collide_nodes(a, b, node_a.left, nb, b_to_a) || collide_nodes(a, b, node_a.right, nb, b_to_a);
    return collide_nodes(a, b, na, node_b.left, b_to_a) || collide_nodes(a, b, na, node_b.right, b_to_a);
}

}  // namespace

bool check_collision(const Bvh& a, const Transform& pose_a, const Bvh& b, const Transform& pose_b) {
    const Transform b_to_a = pose_a.inverse() * pose_b;
    return collide_nodes(a, b, 0, 0, b_to_a);
}

bool check_capsule(const Capsule& capsule, const Bvh& mesh_bvh, const Transform& mesh_pose) {
    const Transform inv = mesh_pose.inverse();
    const Vec3 a = inv.apply(capsule.a), b = inv.apply(capsule.b);
    Aabb seg_box;
    seg_box.expand(a);
    seg_box.expand(b);
    const Aabb query = seg_box.inflated(capsule.radius);

    std::vector<int> stack{0};
    while (!stack.empty()) {
        const auto& node = mesh_bvh.nodes()[stack.back()];
        stack.pop_back();
        if (!node.box.overlaps(query)) continue;
        if (node.is_leaf()) {
            for (int i = node.begin; i < node.end; ++i) {
                auto v = mesh_bvh.mesh().triangle_vertices(mesh_bvh.triangle_order()[i]);
                if (distance_segment_triangle(a, b, v[0], v[1], v[2]) <= capsule.radius) return true;
            }
        } else {
            stack.push_back(node.left);
            stack.push_back(node.right);
        }
    }
    return false;
}

namespace {

bool ray_hits_box(const Ray& ray, const Aabb& box, double t_max) {
    double t0 = 0.0, t1 = t_max;
    for (int i = 0; i < 3; ++i) {
        double inv = 1.0 / ray.direction[i];
        double near = (box.lo[i] - ray.origin[i]) * inv;
        double far = (box.hi[i] - ray.origin[i]) * inv;
        if (inv < 0.0) std::swap(near, far);
        t0 = std::max(t0, near);
        t1 = std::min(t1, far);
        if (t0 > t1) return false;
    }
    return true;
}

}  // namespace

std::optional<RayHit> ray_cast(const Bvh& bvh, const Ray& ray) {
    std::optional<RayHit> best;
    double t_best = std::numeric_limits<double>::infinity();
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const auto& node = bvh.nodes()[stack.back()];
        stack.pop_back();
        if (!ray_hits_box(ray, node.box, t_best)) continue;
        if (node.is_leaf()) {
            for (int i = node.begin; i < node.end; ++i) {
                int t = bvh.triangle_order()[i];
                auto v = bvh.mesh().triangle_vertices(t);
                auto d = intersect_triangle(ray, v[0], v[1], v[2], kRayEpsilon);
                if (d && *d < t_best) {
                    t_best = *d;
                    best = RayHit{ray.origin + ray.direction * *d, t, *d};
                }
            }
        } else {
            stack.push_back(node.left);
            stack.push_back(node.right);
        }
    }
    return best;
}

}  // namespace graspforge
