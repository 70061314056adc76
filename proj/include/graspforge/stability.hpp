// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#pragma once

#include <stdexcept>

#include "graspforge/segmentation.hpp"

namespace graspforge {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Physical inputs of the soft-finger stability gate. Forces in newtons,
/// lengths in millimeters, mass in kilograms.
struct PhysicalParams {
    double mass = 0.0;        // kg, no sensible default: must come from the user
    double gravity = 9.81;    // m/s^2
    double friction_mu = 0.5;
    double grip_force = 20.0;  // N, per-jaw squeeze (or suction holding force)
    double h_max = 1.5;        // mm, maximum soft-pad penetration

    void validate() const {
        if (!(mass > 0.0)) throw DomainError("mass must be > 0");
        if (!(gravity > 0.0)) throw DomainError("gravity must be > 0");
        if (!(friction_mu > 0.0) || friction_mu > 2.0) throw DomainError("friction_mu must be in (0, 2]");
        if (!(grip_force > 0.0)) throw DomainError("grip_force must be > 0");
        if (!(h_max > 0.0)) throw DomainError("h_max must be > 0");
    }
};

struct StabilityReport {
    double c = 0.0;       // mm, |contact center - com|
    double R = 0.0;       // mm, contact curvature radius
    double e_n = 0.0;     // mm, eccentricity of the friction ellipse
    double margin = 0.0;  // N^2*mm^2, torque-resistance headroom
    bool stable = false;  // margin >= 0
};

enum class CurvatureMode { Max, Min };

/// Contact curvature radius of a facet: extremum over non-seed members of
/// d_i / theta_i, with d_i the centroid distance to the seed triangle and
/// theta_i the normal angle. Flat facets (all angles < 1e-6 rad) clamp to
/// r_max. Max follows the source convention; Min is the conservative option.
double curvature_radius(const Facet& facet, const TriangleMesh& mesh, double r_max = 1e6,
                        CurvatureMode mode = CurvatureMode::Max);

/// e_n = (8/15) * sqrt(2*R*h_max - h_max^2). Throws DomainError if h_max >= R.
double eccentricity(double R, double h_max);

/// Torque-resistance gate at the worst-case pose (gravity perpendicular to
/// the contact-to-com vector): stable iff
///   (m g c)^2 <= (8/15)^2 (2 R h_max - h_max^2) (mu^2 f_n^2 - (m g)^2).
StabilityReport check_stability(const Vec3& contact_center, const Vec3& com, double R,
                                const PhysicalParams& phys);

inline constexpr double kFlatCurvatureRadius = 1e6;  // mm

}  // namespace graspforge
