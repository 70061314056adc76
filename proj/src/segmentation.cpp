// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#include "graspforge/segmentation.hpp"

#include <deque>
#include <fstream>
#include <map>
#include <random>

namespace graspforge {

Facet grow_facet(const TriangleMesh& mesh, int seed, double theta_pln) {
    Facet facet;
    facet.seed_triangle = seed;
    const Vec3 seed_normal = mesh.face_normals[seed];

    std::vector<char> in_facet(mesh.triangle_count(), 0);
    std::vector<char> visited(mesh.triangle_count(), 0);
    std::deque<int> queue{seed};
    visited[seed] = 1;
    in_facet[seed] = 1;
    while (!queue.empty()) {
        int t = queue.front();
        queue.pop_front();
        for (int n : mesh.adjacency[t]) {  // ascending by construction
            if (visited[n]) continue;
            visited[n] = 1;
            if (angle_between(mesh.face_normals[n], seed_normal) <= theta_pln) {
                in_facet[n] = 1;
                queue.push_back(n);
            }
        }
    }
    for (size_t t = 0; t < mesh.triangle_count(); ++t)
        if (in_facet[t]) facet.members.push_back((int)t);

    Vec3 normal{};
    for (int t : facet.members) normal += mesh.face_normals[t] * mesh.face_areas[t];
    facet.avg_normal = normal.normalized();

    // Boundary = edges with exactly one incident member triangle.
    std::map<std::pair<int, int>, int> edge_count;
    for (int t : facet.members) {
        const auto& tr = mesh.triangles[t];
        for (int e = 0; e < 3; ++e) {
            int a = tr[e], b = tr[(e + 1) % 3];
            edge_count[{std::min(a, b), std::max(a, b)}]++;
        }
    }
    for (const auto& [edge, count] : edge_count)
        if (count == 1)
            facet.boundary_edges.push_back({mesh.vertices[edge.first], mesh.vertices[edge.second]});
    return facet;
}

namespace {

// Triangles edge-reachable from any member of any facet.
std::vector<int> reachable_candidates(const TriangleMesh& mesh, const std::vector<Facet>& facets) {
    std::vector<char> seen(mesh.triangle_count(), 0);
    std::deque<int> queue;
    for (const auto& f : facets)
        for (int t : f.members)
            if (!seen[t]) {
                seen[t] = 1;
                queue.push_back(t);
            }
    while (!queue.empty()) {
        int t = queue.front();
        queue.pop_front();
        for (int n : mesh.adjacency[t])
            if (!seen[n]) {
                seen[n] = 1;
                queue.push_back(n);
            }
    }
    std::vector<int> out;
    for (size_t t = 0; t < mesh.triangle_count(); ++t)
        if (seen[t]) out.push_back((int)t);
    return out;
}

std::vector<int> one_ring_candidates(const TriangleMesh& mesh, const std::vector<int>& seeds) {
    std::vector<char> seen(mesh.triangle_count(), 0);
    for (int s : seeds) {
        seen[s] = 1;
        for (int n : mesh.adjacency[s]) seen[n] = 1;
    }
    std::vector<int> out;
    for (size_t t = 0; t < mesh.triangle_count(); ++t)
        if (seen[t]) out.push_back((int)t);
    return out;
}

}  // namespace

std::vector<Facet> segment(const TriangleMesh& mesh, const SegmentationParams& params) {
    std::vector<Facet> facets;
    if (mesh.triangle_count() == 0) return facets;

    std::vector<int> seeds{0};
    facets.push_back(grow_facet(mesh, 0, params.theta_pln));

    for (;;) {
        std::vector<int> candidates = params.seed_scan == SeedScan::AllReachable
                                          ? reachable_candidates(mesh, facets)
                                          : one_ring_candidates(mesh, seeds);
        int next = -1;
        for (int t : candidates) {
            bool clears_all = true;
            for (int s : seeds) {
                if (angle_between(mesh.face_normals[t], mesh.face_normals[s]) <= params.theta_fct) {
                    clears_all = false;
                    break;
                }
            }
            if (clears_all) {
                next = t;
                break;  // candidates ascend, so this is the lowest qualifying index
            }
        }
        if (next < 0) break;
        seeds.push_back(next);
        facets.push_back(grow_facet(mesh, next, params.theta_pln));
    }
    return facets;
}

void export_facets_obj(const std::string& path, const TriangleMesh& mesh,
                       const std::vector<Facet>& facets, double offset, uint64_t color_seed) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    std::string mtl_path = path;
    auto dot = mtl_path.find_last_of('.');
    mtl_path = (dot == std::string::npos ? mtl_path : mtl_path.substr(0, dot)) + ".mtl";
    std::ofstream mtl(mtl_path);

    auto base = mtl_path.find_last_of("/\\");
    out << "mtllib " << (base == std::string::npos ? mtl_path : mtl_path.substr(base + 1)) << "\n";
    out.precision(9);
    mtl.precision(4);

    std::mt19937_64 rng(color_seed);
    auto unit = [&rng] { return (double)(rng() >> 11) * 0x1.0p-53; };

    int vertex_base = 1;
    for (size_t f = 0; f < facets.size(); ++f) {
        const Facet& facet = facets[f];
        Vec3 shift = facet.avg_normal * offset;
        mtl << "newmtl facet" << f << "\nKd " << unit() << ' ' << unit() << ' ' << unit() << "\n";
        out << "g facet" << f << "\nusemtl facet" << f << "\n";
        for (int t : facet.members) {
            auto v = mesh.triangle_vertices(t);
            for (const auto& p : v) {
                Vec3 q = p + shift;
                out << "v " << q.x << ' ' << q.y << ' ' << q.z << '\n';
            }
            out << "f " << vertex_base << ' ' << vertex_base + 1 << ' ' << vertex_base + 2 << '\n';
            vertex_base += 3;
        }
    }
}

}  // namespace graspforge
