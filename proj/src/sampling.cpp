// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#include "graspforge/sampling.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <unordered_map>

namespace graspforge {

namespace {

// mt19937_64 output mapped to [0,1) without distribution objects, which are
// implementation-defined and would break cross-platform reproducibility.
double uniform01(std::mt19937_64& rng) { return (double)(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::vector<SurfaceSample> sample_surface(const TriangleMesh& mesh, double density, uint64_t rng_seed) {
    std::vector<SurfaceSample> samples;
    std::mt19937_64 rng(rng_seed);
    double target = 0.0;
    long long emitted = 0;
    for (size_t t = 0; t < mesh.triangle_count(); ++t) {
        target += mesh.face_areas[t] * density;
        long long want = (long long)std::floor(target) - emitted;
        auto v = mesh.triangle_vertices((int)t);
        for (long long k = 0; k < want; ++k) {
            double r1 = uniform01(rng), r2 = uniform01(rng);
            if (r1 + r2 > 1.0) {
                r1 = 1.0 - r1;
                r2 = 1.0 - r2;
            }
            Vec3 p = v[0] + (v[1] - v[0]) * r1 + (v[2] - v[0]) * r2;
            samples.push_back({p, (int)t});
        }
        emitted += want;
    }
    return samples;
}

std::vector<std::vector<ContactPoint>> distribute(const std::vector<SurfaceSample>& samples,
                                                  const std::vector<Facet>& facets) {
    // triangle -> owning facets
    std::unordered_map<int, std::vector<int>> owners;
    for (size_t f = 0; f < facets.size(); ++f)
        for (int t : facets[f].members) owners[t].push_back((int)f);

    std::vector<std::vector<ContactPoint>> per_facet(facets.size());
    for (const auto& s : samples) {
        auto it = owners.find(s.triangle);
        if (it == owners.end()) continue;
        for (int f : it->second)
            per_facet[f].push_back({s.position, facets[f].avg_normal, f, s.triangle});
    }
    return per_facet;
}

std::vector<ContactPoint> refine_boundary(const Facet& facet, const std::vector<ContactPoint>& points,
                                          double t_bdry) {
    std::vector<ContactPoint> kept;
    kept.reserve(points.size());
    for (const auto& p : points) {
        bool near_boundary = false;
        for (const auto& edge : facet.boundary_edges) {
            if (distance_point_segment(p.position, edge[0], edge[1]) < t_bdry) {
                near_boundary = true;
                break;
            }
        }
        if (!near_boundary) kept.push_back(p);
    }
    return kept;
}

std::vector<ContactPoint> refine_rnn(const std::vector<ContactPoint>& points, double t_rnn) {
    if (t_rnn <= 0.0) return points;
    std::vector<ContactPoint> kept;
    kept.reserve(points.size());

    // Uniform grid over kept points; cell edge = t_rnn so conflicts live in
    // the 27 surrounding cells.
    struct Key {
        int64_t x, y, z;
        bool operator==(const Key& o) const { return x == o.x && y == o.y && z == o.z; }
    };
    struct KeyHash {
        size_t operator()(const Key& k) const {
            return (size_t)(k.x * 73856093ll ^ k.y * 19349663ll ^ k.z * 83492791ll);
        }
    };
    std::unordered_map<Key, std::vector<int>, KeyHash> grid;
    auto cell = [t_rnn](const Vec3& p) {
        return Key{(int64_t)std::floor(p.x / t_rnn), (int64_t)std::floor(p.y / t_rnn),
                   (int64_t)std::floor(p.z / t_rnn)};
    };

    for (const auto& p : points) {
        Key c = cell(p.position);
        bool conflict = false;
        for (int64_t dx = -1; dx <= 1 && !conflict; ++dx)
            for (int64_t dy = -1; dy <= 1 && !conflict; ++dy)
                for (int64_t dz = -1; dz <= 1 && !conflict; ++dz) {
                    auto it = grid.find(Key{c.x + dx, c.y + dy, c.z + dz});
                    if (it == grid.end()) continue;
                    for (int i : it->second)
                        if ((kept[i].position - p.position).norm() < t_rnn) {
                            conflict = true;
                            break;
                        }
                }
        if (!conflict) {
            grid[c].push_back((int)kept.size());
            kept.push_back(p);
        }
    }
    return kept;
}

void export_samples_obj(const std::string& path, const std::vector<ContactPoint>& removed,
                        const std::vector<ContactPoint>& survivors) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out.precision(9);
    int i = 1;
    for (const auto& p : removed) {
        out << "v " << p.position.x << ' ' << p.position.y << ' ' << p.position.z << " 1 1 1\n";
        out << "p " << i++ << '\n';
    }
    for (const auto& p : survivors) {
        out << "v " << p.position.x << ' ' << p.position.y << ' ' << p.position.z << " 1 0 0\n";
        out << "p " << i++ << '\n';
    }
}

}  // namespace graspforge
