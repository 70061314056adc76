// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#include "graspforge/gripper.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "graspforge/planner.hpp"

namespace graspforge {

void GripperModel::validate() const {
    auto positive = [](double v, const char* what) {
        if (!(v > 0.0)) throw DomainError(std::string("gripper: ") + what + " must be > 0");
    };
    positive(palm_size.x, "palm width");
    positive(palm_size.y, "palm depth");
    positive(palm_size.z, "palm height");
    if (kind != GripperKind::Suction) {
        positive(pad_width, "pad width");
        positive(pad_depth, "pad depth");
        positive(pad_height, "pad height");
        if (finger_length < pad_height) throw DomainError("gripper: finger length shorter than pad");
        if (opening_min < 0.0 || opening_min >= opening_max)
            throw DomainError("gripper: opening range must satisfy 0 <= min < max");
    }
    if (kind == GripperKind::Suction) {
        positive(cup_radius, "cup radius");
        positive(cup_length, "cup length");
    }
    if (kind == GripperKind::ThreeFinger) positive(finger_gap, "finger gap");
    if (std::abs(approach_axis.norm() - 1.0) > 1e-9 || std::abs(closing_axis.norm() - 1.0) > 1e-9 ||
        std::abs(approach_axis.dot(closing_axis)) > 1e-9)
        throw DomainError("gripper: approach/closing axes must be orthonormal");
}

namespace {

void append_box(std::vector<Vec3>& vertices, std::vector<std::array<int, 3>>& triangles, const Vec3& lo,
                const Vec3& hi) {
    int base = (int)vertices.size();
    for (int i = 0; i < 8; ++i)
        vertices.push_back({i & 1 ? hi.x : lo.x, i & 2 ? hi.y : lo.y, i & 4 ? hi.z : lo.z});
    static const int faces[12][3] = {{0, 2, 1}, {1, 2, 3}, {4, 5, 6}, {5, 7, 6},
                                     {0, 1, 4}, {1, 5, 4}, {2, 6, 3}, {3, 6, 7},
                                     {0, 4, 2}, {2, 4, 6}, {1, 3, 5}, {3, 7, 5}};
    for (const auto& f : faces) triangles.push_back({base + f[0], base + f[1], base + f[2]});
}

void append_cylinder(std::vector<Vec3>& vertices, std::vector<std::array<int, 3>>& triangles,
                     double radius, double z0, double z1, int segments) {
    int base = (int)vertices.size();
    for (int i = 0; i < segments; ++i) {
        double a = 2.0 * kPi * i / segments;
        vertices.push_back({radius * std::cos(a), radius * std::sin(a), z0});
        vertices.push_back({radius * std::cos(a), radius * std::sin(a), z1});
    }
    int top = (int)vertices.size();
    vertices.push_back({0, 0, z0});
    int bottom = (int)vertices.size();
    vertices.push_back({0, 0, z1});
    for (int i = 0; i < segments; ++i) {
        int j = (i + 1) % segments;
        int a0 = base + 2 * i, a1 = base + 2 * i + 1;
        int b0 = base + 2 * j, b1 = base + 2 * j + 1;
        triangles.push_back({a0, b0, a1});
        triangles.push_back({a1, b0, b1});
        triangles.push_back({top, b0, a0});
        triangles.push_back({bottom, a1, b1});
    }
}

}  // namespace

TriangleMesh GripperModel::collision_mesh(double jaw_width, double clearance) const {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;

    if (kind == GripperKind::Suction) {
        append_cylinder(vertices, triangles, cup_radius, -clearance, -cup_length, 24);
        append_box(vertices, triangles,
                   {-palm_size.x / 2, -palm_size.y / 2, -cup_length - palm_size.z},
                   {palm_size.x / 2, palm_size.y / 2, -cup_length});
        return build_mesh(std::move(vertices), std::move(triangles));
    }

    const double inner = jaw_width / 2 + clearance;
    const double palm_top = pad_height / 2 - finger_length;

    // one box per finger, from the fingertip plane down to the palm face; the
    // pad anchor sits at the center of the box face segment z in [-h/2, h/2]
    auto add_finger = [&](double sign, double y_center) {
        Vec3 lo{sign > 0 ? inner : -(inner + pad_depth), y_center - pad_width / 2, palm_top};
        Vec3 hi{sign > 0 ? inner + pad_depth : -inner, y_center + pad_width / 2, pad_height / 2};
        append_box(vertices, triangles, lo, hi);
    };

    if (kind == GripperKind::TwoFinger) {
        add_finger(-1.0, 0.0);  // f1 at contact_a
        add_finger(+1.0, 0.0);  // f2 at contact_b
    } else {
        add_finger(-1.0, 0.0);               // f1 at contact_a
        add_finger(+1.0, +finger_gap / 2);   // f2
        add_finger(+1.0, -finger_gap / 2);   // f3
    }
    append_box(vertices, triangles, {-palm_size.x / 2, -palm_size.y / 2, palm_top - palm_size.z},
               {palm_size.x / 2, palm_size.y / 2, palm_top});
    return build_mesh(std::move(vertices), std::move(triangles));
}

namespace {

std::map<std::string, std::string> parse_ini(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open gripper profile " + path);
    std::map<std::string, std::string> kv;
    std::string line, section;
    while (std::getline(in, line)) {
        auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        auto end = line.find_last_not_of(" \t\r");
        line = line.substr(begin, end - begin + 1);
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("profile: malformed section in " + path);
            section = line.substr(1, line.size() - 2);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("profile: expected key = value in " + path);
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        kv[section.empty() ? key : section + "." + key] = value;
    }
    return kv;
}

double get_num(const std::map<std::string, std::string>& kv, const std::string& key, double fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw ParseError("profile: bad number for " + key);
    }
}

}  // namespace

GripperModel load_gripper_profile(const std::string& path) {
    auto kv = parse_ini(path);
    GripperModel m;

    auto it = kv.find("kind");
    if (it == kv.end()) throw ParseError("profile: missing 'kind'");
    if (it->second == "suction")
        m.kind = GripperKind::Suction;
    else if (it->second == "two_finger")
        m.kind = GripperKind::TwoFinger;
    else if (it->second == "three_finger")
        m.kind = GripperKind::ThreeFinger;
    else
        throw ParseError("profile: unknown kind '" + it->second + "'");

    auto name_it = kv.find("name");
    m.name = name_it != kv.end() ? name_it->second : path;

    m.palm_size = {get_num(kv, "palm.width", m.palm_size.x), get_num(kv, "palm.depth", m.palm_size.y),
                   get_num(kv, "palm.height", m.palm_size.z)};
    m.pad_width = get_num(kv, "finger.pad_width", m.pad_width);
    m.pad_depth = get_num(kv, "finger.pad_depth", m.pad_depth);
    m.pad_height = get_num(kv, "finger.pad_height", m.pad_height);
    m.finger_length = get_num(kv, "finger.length", m.finger_length);
    m.opening_min = get_num(kv, "stroke.min", m.opening_min);
    m.opening_max = get_num(kv, "stroke.max", m.opening_max);
    m.cup_radius = get_num(kv, "cup.radius", m.cup_radius);
    m.cup_length = get_num(kv, "cup.length", m.cup_length);
    m.finger_gap = get_num(kv, "fingers.gap", m.finger_gap);
    m.validate();
    return m;
}

const char* reject_reason_name(RejectReason reason) {
    switch (reason) {
        case RejectReason::None: return "";
        case RejectReason::StrokeCollision: return "StrokeCollision";
        case RejectReason::HandCollision: return "HandCollision";
        case RejectReason::OutOfStroke: return "OutOfStroke";
        case RejectReason::PadGap: return "PadGap";
        case RejectReason::Unstable: return "Unstable";
    }
    return "";
}

RejectReason reject_reason_from_name(const std::string& name) {
    if (name == "StrokeCollision") return RejectReason::StrokeCollision;
    if (name == "HandCollision") return RejectReason::HandCollision;
    if (name == "OutOfStroke") return RejectReason::OutOfStroke;
    if (name == "PadGap") return RejectReason::PadGap;
    if (name == "Unstable") return RejectReason::Unstable;
    return RejectReason::None;
}

Vec3 roll_reference(const Vec3& axis) {
    Vec3 proj = Vec3{1, 0, 0} - axis * axis.x;
    if (proj.norm() < 1e-9) proj = Vec3{0, 1, 0} - axis * axis.y;
    return proj.normalized();
}

namespace {

// Tool basis [closing | third | approach] as matrix columns; world targets in
// the same order give R = W * T^T.
Mat3 tool_to_world(const GripperModel& model, const Vec3& closing_world, const Vec3& approach_world) {
    Mat3 w = Mat3::from_columns(closing_world, approach_world.cross(closing_world), approach_world);
    Mat3 t = Mat3::from_columns(model.closing_axis, model.approach_axis.cross(model.closing_axis),
                                model.approach_axis);
    return w * t.transposed();
}

}  // namespace

Transform pose_at_contact(const GripperModel& model, const ContactPoint& contact, int angle_index,
                          int n_da) {
    const Vec3 n = contact.normal;
    const double angle = 2.0 * kPi * angle_index / n_da;
    const Vec3 closing = Mat3::axis_angle(n, angle) * roll_reference(n);
    Mat3 rot = tool_to_world(model, closing, -n);
    return {rot, contact.position};
}

PairPose pose_at_pair(const GripperModel& model, const ContactPair& pair, int angle_index, int n_da,
                      bool enforce_stroke) {
    if (enforce_stroke && (pair.distance < model.opening_min || pair.distance > model.opening_max))
        throw OutOfStrokeError("pair distance " + std::to_string(pair.distance) + " outside stroke");
    const Vec3 u = pair.axis;
    const double angle = 2.0 * kPi * angle_index / n_da;
    const Vec3 approach = Mat3::axis_angle(u, angle) * roll_reference(u);
    Mat3 rot = tool_to_world(model, u, approach);
    Vec3 midpoint = (pair.contact_a.position + pair.contact_b.position) * 0.5;
    return {Transform{rot, midpoint}, pair.distance};
}

}  // namespace graspforge
