// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#pragma once

#include <string>

#include "graspforge/sampling.hpp"
#include "graspforge/stability.hpp"

namespace graspforge {

struct OutOfStrokeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class GripperKind { Suction, TwoFinger, ThreeFinger };

/// Parametric end-effector. Tool frame convention: closing axis +x (pads at
/// x = +-jaw/2), approach axis +z (palm behind at -z), origin at the grasp
/// center. The hand is modeled as boxes (palm, finger links, pads) plus a
/// tessellated cylinder for the suction cup.
struct GripperModel {
    GripperKind kind = GripperKind::TwoFinger;

    Vec3 palm_size{80, 30, 40};   // x, y, z extents, mm
    double pad_width = 20;        // y extent of a finger pad
    double pad_depth = 8;         // x extent (thickness)
    double pad_height = 30;       // z extent
    double finger_length = 60;    // palm face to fingertip, >= pad_height
    double opening_min = 0;       // mm
    double opening_max = 85;      // mm

    double cup_radius = 10;   // suction only
    double cup_length = 30;   // suction only
    double finger_gap = 40;   // three-finger only: y distance between f2 and f3

    Vec3 approach_axis{0, 0, 1};  // tool frame
    Vec3 closing_axis{1, 0, 0};   // tool frame

    std::string name;

    void validate() const;

    /// Radius of the disk a rotating pad sweeps about the closing axis.
    double pad_circumradius() const { return 0.5 * std::hypot(pad_width, pad_height); }

    /// Collision model at the given jaw width, pads (or cup face) retracted
    /// by `clearance` along the contact normal. Deterministic tessellation.
    TriangleMesh collision_mesh(double jaw_width, double clearance) const;
};

GripperModel load_gripper_profile(const std::string& path);

enum class RejectReason { None, StrokeCollision, HandCollision, OutOfStroke, PadGap, Unstable };

const char* reject_reason_name(RejectReason reason);
RejectReason reject_reason_from_name(const std::string& name);

/// One end-effector placement: tool-to-object pose plus the evidence that
/// produced and ranked it.
struct Grasp {
    Mat3 rotation;
    Vec3 translation;
    double jaw_width = 0.0;  // 0 for suction
    std::vector<ContactPoint> contacts;  // 1 (suction) or 2 (grippers)
    int rotation_index = 0;
    StabilityReport stability;
    RejectReason reason = RejectReason::None;
};

struct ContactPair;  // planner.hpp

/// Suction pose: approach axis anti-aligned with the contact normal, cup rim
/// on the surface point, rolled about the normal by 2*pi*angle_index/n_da
/// from the global +x projection (+y when the normal is parallel to x).
Transform pose_at_contact(const GripperModel& model, const ContactPoint& contact, int angle_index,
                          int n_da);

struct PairPose {
    Transform pose;
    double jaw_width = 0.0;
};

/// Gripper pose: closing axis along the pair axis, pad anchors on the two
/// contacts, rolled about the pair axis. Throws OutOfStrokeError when the
/// pair distance is outside the opening range, unless enforce_stroke is
/// cleared (debug exports pose rejected candidates too).
PairPose pose_at_pair(const GripperModel& model, const ContactPair& pair, int angle_index, int n_da,
                      bool enforce_stroke = true);

/// Roll reference: unit projection of +x onto the plane perpendicular to
/// `axis`, falling back to +y's projection when degenerate.
Vec3 roll_reference(const Vec3& axis);

}  // namespace graspforge
