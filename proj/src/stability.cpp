// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#include "graspforge/stability.hpp"

#include <cmath>

namespace graspforge {

double curvature_radius(const Facet& facet, const TriangleMesh& mesh, double r_max, CurvatureMode mode) {
    constexpr double kMinAngle = 1e-6;  // rad
    const Vec3 seed_centroid = mesh.triangle_centroid(facet.seed_triangle);
    const Vec3 seed_normal = mesh.face_normals[facet.seed_triangle];

    double best = -1.0;
    for (int t : facet.members) {
        if (t == facet.seed_triangle) continue;
        double theta = angle_between(mesh.face_normals[t], seed_normal);
        if (theta < kMinAngle) continue;
        double ratio = (mesh.triangle_centroid(t) - seed_centroid).norm() / theta;
        if (best < 0.0)
            best = ratio;
        else
            best = mode == CurvatureMode::Max ? std::max(best, ratio) : std::min(best, ratio);
    }
    if (best < 0.0) return r_max;  // flat facet
    return std::min(best, r_max);
}

double eccentricity(double R, double h_max) {
    if (!(h_max > 0.0) || h_max >= R) throw DomainError("eccentricity requires 0 < h_max < R");
    return (8.0 / 15.0) * std::sqrt(2.0 * R * h_max - h_max * h_max);
}

StabilityReport check_stability(const Vec3& contact_center, const Vec3& com, double R,
                                const PhysicalParams& phys) {
    if (phys.h_max >= R) throw DomainError("check_stability requires R > h_max");
    StabilityReport report;
    report.R = R;
    report.c = (contact_center - com).norm();
    report.e_n = eccentricity(R, phys.h_max);

    const double mg = phys.mass * phys.gravity;            // N
    const double mu_fn = phys.friction_mu * phys.grip_force;  // N
    const double lhs = (mg * report.c) * (mg * report.c);
    const double rhs = report.e_n * report.e_n * (mu_fn * mu_fn - mg * mg);
    report.margin = rhs - lhs;
    report.stable = report.margin >= 0.0;
    return report;
}

}  // namespace graspforge
