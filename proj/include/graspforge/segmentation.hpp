// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#pragma once

#include <array>
#include <vector>

#include "graspforge/mesh.hpp"

namespace graspforge {

/// One superimposed facet: an edge-connected cluster of near-coplanar
/// triangles grown from a seed. Triangles may belong to several facets.
struct Facet {
    int seed_triangle = -1;
    std::vector<int> members;  // ascending triangle indices, contains seed
    Vec3 avg_normal;           // area-weighted mean of member normals, renormalized
    std::vector<std::array<Vec3, 2>> boundary_edges;  // edges with one incident member
    double curvature_radius = -1.0;  // mm, filled by the stability stage
};

// Candidate range scanned when promoting the next seed. AllReachable floods
// from every facet member; OneRing only looks at triangles edge-adjacent to
// previous seeds.
enum class SeedScan { AllReachable, OneRing };

struct SegmentationParams {
    double theta_pln = deg_to_rad(20.0);
    double theta_fct = deg_to_rad(20.0);
    SeedScan seed_scan = SeedScan::AllReachable;
};

/// Peel the mesh into superimposed facets. Deterministic: the first seed is
/// triangle 0, growth visits neighbors in ascending index order, and the next
/// seed is the lowest-index triangle whose normal clears theta_fct against
/// every previous seed normal.
std::vector<Facet> segment(const TriangleMesh& mesh, const SegmentationParams& params);
inline std::vector<Facet> segment(const TriangleMesh& mesh, double theta_pln, double theta_fct) {
    return segment(mesh, SegmentationParams{theta_pln, theta_fct, SeedScan::AllReachable});
}

/// Facet grown from one seed; exposed for trend tests and debugging.
Facet grow_facet(const TriangleMesh& mesh, int seed, double theta_pln);

/// Exploded debug export: one OBJ group per facet, offset along its average
/// normal, with a seeded random color per group in a sidecar .mtl.
void export_facets_obj(const std::string& path, const TriangleMesh& mesh,
                       const std::vector<Facet>& facets, double offset, uint64_t color_seed);

}  // namespace graspforge
