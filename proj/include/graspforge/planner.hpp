// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#pragma once

#include <cstdint>

#include "graspforge/collision.hpp"
#include "graspforge/gripper.hpp"

namespace graspforge {

/// Two contacts on near-antipodal facets, found by casting a ray from a
/// contact along the inverse of its normal onto the partner facet.
struct ContactPair {
    ContactPoint contact_a;
    ContactPoint contact_b;
    int facet_a = -1;
    int facet_b = -1;
    Vec3 axis;             // unit, a -> b
    double distance = 0.0;  // mm
};

struct PlannerParams {
    double theta_pln = deg_to_rad(20.0);
    double theta_fct = deg_to_rad(20.0);
    double theta_parl = deg_to_rad(160.0);
    double t_bdry = 2.0;   // mm
    double t_rnn = 3.0;    // mm
    double t_dct = 3.0;    // mm
    int n_da = 8;
    double density = 0.01;  // samples per mm^2
    uint64_t rng_seed = 0;
    PhysicalParams phys;    // carries h_max, mass, mu, grip force

    SeedScan seed_scan = SeedScan::AllReachable;
    CurvatureMode curvature_mode = CurvatureMode::Max;
    double r_max = kFlatCurvatureRadius;
    int jobs = 1;
    bool keep_rejected = false;  // retain rejected candidates with reason codes

    void validate() const;
};

/// Wall-clock seconds per pipeline stage, in the cost-table row structure.
struct StageTimes {
    double segmentation = 0;
    double sampling = 0;
    double refine_boundary = 0;  // remove bad samples 1
    double refine_rnn = 0;       // remove bad samples 2
    double pair_planning = 0;
    double stroke_check = 0;
    double hand_check = 0;
    double stability = 0;  // not a table row; negligible by construction
};

struct StageCounters {
    long long facets = 0;
    long long samples = 0;
    long long contacts_distributed = 0;
    long long contacts_after_boundary = 0;
    long long contacts_after_rnn = 0;
    long long pairs = 0;
    long long pairs_out_of_stroke = 0;
    long long stroke_checks = 0;
    long long stroke_rejects = 0;
    long long pad_gap_checks = 0;
    long long pad_gap_rejects = 0;
    long long hand_checks = 0;
    long long hand_rejects = 0;
    long long stability_checks = 0;
    long long unstable_rejects = 0;
    long long accepted = 0;
};

/// Segmentation, sampling, distribution, both refinements, and per-facet
/// curvature radii. Shared front end of all three planners.
struct PreparedContacts {
    std::vector<Facet> facets;  // curvature_radius filled
    std::vector<std::vector<ContactPoint>> contacts;          // refined, per facet
    std::vector<std::vector<ContactPoint>> boundary_removed;  // per facet, for debug export
    std::vector<std::vector<ContactPoint>> rnn_removed;       // per facet, for debug export
    StageTimes times;
    StageCounters counters;
};
PreparedContacts prepare_contacts(const TriangleMesh& mesh, const PlannerParams& params);

/// Candidate contact pairs across facet pairs whose average normals subtend
/// at least theta_parl. Pairs outside [opening_min, opening_max] are dropped
/// (optionally collected). Deterministic order: ascending (facet_lo,
/// facet_hi), origin side, contact index; exact duplicates removed keeping
/// the first occurrence.
std::vector<ContactPair> find_parallel_pairs(const std::vector<Facet>& facets, const TriangleMesh& mesh,
                                             const std::vector<std::vector<ContactPoint>>& contacts_per_facet,
                                             double theta_parl, double opening_min, double opening_max,
                                             std::vector<ContactPair>* out_of_stroke = nullptr);

struct PlanResult {
    std::vector<Grasp> accepted;
    std::vector<Grasp> rejected;  // populated when keep_rejected is set
    std::vector<Facet> facets;
    StageTimes times;
    StageCounters counters;
};

// A precomputed front end (same mesh + params) can be passed to share work
// with stage commands and debug exports; otherwise the planner computes it.
PlanResult plan_suction(const TriangleMesh& mesh, const PlannerParams& params, const GripperModel& model,
                        const PreparedContacts* precomputed = nullptr);
PlanResult plan_two_finger(const TriangleMesh& mesh, const PlannerParams& params, const GripperModel& model,
                           const PreparedContacts* precomputed = nullptr);
PlanResult plan_three_finger(const TriangleMesh& mesh, const PlannerParams& params,
                             const GripperModel& model, const PreparedContacts* precomputed = nullptr);

/// Finger-pad collision clearance: planned contacts sit exactly on the
/// surface, so pad geometry is retracted by this much along the contact
/// normal before whole-hand collision checks.
inline constexpr double kPadClearance = 0.1;  // mm

/// Distance from a pad's contact plane to the surface beneath it, measured
/// along the closing axis `axis_ab` (unit, contact_a -> contact_b side, the
/// pad presses along -axis_ab). Clamped at 0 when the surface protrudes past
/// the pad plane; +infinity when no surface lies under the pad. `backoff`
/// must exceed the object's extent along the axis.
double pad_surface_gap(const Bvh& obj_bvh, const Vec3& pad_center, const Vec3& axis_ab, double backoff);

}  // namespace graspforge
