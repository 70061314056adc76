// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#pragma once

#include <cstdint>
#include <vector>

#include "graspforge/segmentation.hpp"

namespace graspforge {

struct SurfaceSample {
    Vec3 position;
    int triangle = -1;
};

/// A surface sample distributed to one owning facet. The normal is the
/// facet's average normal, not the triangle normal.
struct ContactPoint {
    Vec3 position;
    Vec3 normal;
    int facet = -1;
    int triangle = -1;
};

/// Stratified area-weighted surface sampling: each triangle receives a
/// residual-corrected share of `density * total_area` points, placed by
/// uniform barycentric draws from a seeded generator. Bit-reproducible for a
/// given seed.
std::vector<SurfaceSample> sample_surface(const TriangleMesh& mesh, double density, uint64_t rng_seed);

/// Copy every sample into each facet containing its triangle.
std::vector<std::vector<ContactPoint>> distribute(const std::vector<SurfaceSample>& samples,
                                                  const std::vector<Facet>& facets);

/// Drop points closer than t_bdry to any boundary edge of the facet.
std::vector<ContactPoint> refine_boundary(const Facet& facet, const std::vector<ContactPoint>& points,
                                          double t_bdry);

/// Greedy radius-nearest-neighbour thinning in input order: a point survives
/// iff no previously kept point lies within t_rnn.
std::vector<ContactPoint> refine_rnn(const std::vector<ContactPoint>& points, double t_rnn);

/// Debug export: point cloud with per-vertex colors (white = removed by the
/// boundary refinement, red = RNN survivors).
void export_samples_obj(const std::string& path, const std::vector<ContactPoint>& removed,
                        const std::vector<ContactPoint>& survivors);

}  // namespace graspforge
