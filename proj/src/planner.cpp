// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#include "graspforge/planner.hpp"

#include <chrono>
#include <functional>
#include <set>
#include <thread>

namespace graspforge {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    int workers = std::min(jobs, count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < count; i += workers) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace

void PlannerParams::validate() const {
    auto in_angle = [](double v, const char* what) {
        if (v < 0.0 || v > kPi) throw DomainError(std::string(what) + " must be in [0, pi]");
    };
    in_angle(theta_pln, "theta_pln");
    in_angle(theta_parl, "theta_parl");
    if (!(theta_fct > 0.0) || theta_fct > kPi) throw DomainError("theta_fct must be in (0, pi]");
    if (t_bdry < 0.0 || t_rnn < 0.0 || t_dct < 0.0) throw DomainError("lengths must be >= 0");
    if (n_da < 1) throw DomainError("n_da must be >= 1");
    if (!(density > 0.0)) throw DomainError("density must be > 0");
    if (!(r_max > 0.0)) throw DomainError("r_max must be > 0");
    phys.validate();
}

PreparedContacts prepare_contacts(const TriangleMesh& mesh, const PlannerParams& params) {
    PreparedContacts prep;

    auto t0 = Clock::now();
    prep.facets = segment(mesh, SegmentationParams{params.theta_pln, params.theta_fct, params.seed_scan});
    prep.times.segmentation = seconds_since(t0);
    prep.counters.facets = (long long)prep.facets.size();

    t0 = Clock::now();
    auto samples = sample_surface(mesh, params.density, params.rng_seed);
    auto distributed = distribute(samples, prep.facets);
    prep.times.sampling = seconds_since(t0);
    prep.counters.samples = (long long)samples.size();
    for (const auto& c : distributed) prep.counters.contacts_distributed += (long long)c.size();

    prep.contacts.resize(prep.facets.size());
    prep.boundary_removed.resize(prep.facets.size());
    prep.rnn_removed.resize(prep.facets.size());

    t0 = Clock::now();
    std::vector<std::vector<ContactPoint>> after_boundary(prep.facets.size());
    for (size_t f = 0; f < prep.facets.size(); ++f) {
        after_boundary[f] = refine_boundary(prep.facets[f], distributed[f], params.t_bdry);
        prep.counters.contacts_after_boundary += (long long)after_boundary[f].size();
        // removed = distributed minus kept, in order
        size_t kept_i = 0;
        for (const auto& p : distributed[f]) {
            if (kept_i < after_boundary[f].size() && after_boundary[f][kept_i].position == p.position)
                ++kept_i;
            else
                prep.boundary_removed[f].push_back(p);
        }
    }
    prep.times.refine_boundary = seconds_since(t0);

    t0 = Clock::now();
    for (size_t f = 0; f < prep.facets.size(); ++f) {
        prep.contacts[f] = refine_rnn(after_boundary[f], params.t_rnn);
        prep.counters.contacts_after_rnn += (long long)prep.contacts[f].size();
        size_t kept_i = 0;
        for (const auto& p : after_boundary[f]) {
            if (kept_i < prep.contacts[f].size() && prep.contacts[f][kept_i].position == p.position)
                ++kept_i;
            else
                prep.rnn_removed[f].push_back(p);
        }
    }
    prep.times.refine_rnn = seconds_since(t0);

    for (auto& facet : prep.facets)
        facet.curvature_radius = curvature_radius(facet, mesh, params.r_max, params.curvature_mode);
    return prep;
}

namespace {

struct Vec3Less {
    bool operator()(const Vec3& a, const Vec3& b) const {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.z < b.z;
    }
};

}  // namespace

std::vector<ContactPair> find_parallel_pairs(const std::vector<Facet>& facets, const TriangleMesh& mesh,
                                             const std::vector<std::vector<ContactPoint>>& contacts_per_facet,
                                             double theta_parl, double opening_min, double opening_max,
                                             std::vector<ContactPair>* out_of_stroke) {
    std::vector<ContactPair> pairs;
    // exact-duplicate guard for symmetric (a,b)/(b,a) hits
    std::set<std::pair<Vec3, Vec3>, bool (*)(const std::pair<Vec3, Vec3>&, const std::pair<Vec3, Vec3>&)>
        seen([](const std::pair<Vec3, Vec3>& l, const std::pair<Vec3, Vec3>& r) {
            Vec3Less less;
            if (!(l.first == r.first)) return less(l.first, r.first);
            return less(l.second, r.second);
        });

    auto cast_side = [&](int origin, int target) {
        for (const auto& contact : contacts_per_facet[origin]) {
            Ray ray{contact.position, -contact.normal};
            auto hit = ray_cast(mesh, facets[target].members, ray);
            if (!hit) continue;
            ContactPair pair;
            pair.contact_a = contact;
            pair.contact_b = {hit->point, facets[target].avg_normal, target, hit->triangle};
            pair.facet_a = origin;
            pair.facet_b = target;
            pair.axis = ray.direction;
            pair.distance = hit->distance;
            if (pair.distance < opening_min || pair.distance > opening_max) {
                if (out_of_stroke) out_of_stroke->push_back(pair);
                continue;
            }
            Vec3Less less;
            auto key = less(pair.contact_a.position, pair.contact_b.position)
                           ? std::make_pair(pair.contact_a.position, pair.contact_b.position)
                           : std::make_pair(pair.contact_b.position, pair.contact_a.position);
            if (!seen.insert(key).second) continue;
            pairs.push_back(std::move(pair));
        }
    };

    for (size_t i = 0; i < facets.size(); ++i) {
        for (size_t j = i + 1; j < facets.size(); ++j) {
            if (angle_between(facets[i].avg_normal, facets[j].avg_normal) < theta_parl) continue;
            cast_side((int)i, (int)j);
            cast_side((int)j, (int)i);
        }
    }
    return pairs;
}

namespace {

// Stability gate shared by all planners. A curvature radius at or below the
// pad penetration depth has no valid soft-contact patch; treat as unstable.
StabilityReport gate_stability(const Vec3& center, const Vec3& com, double R, const PhysicalParams& phys) {
    if (R <= phys.h_max) {
        StabilityReport r;
        r.c = (center - com).norm();
        r.R = R;
        r.e_n = 0.0;  // no valid soft-contact patch, no torque resistance
        const double mg = phys.mass * phys.gravity;
        r.margin = -(mg * r.c) * (mg * r.c);
        r.stable = false;
        return r;
    }
    return check_stability(center, com, R, phys);
}

struct CandidateOutput {
    std::vector<Grasp> accepted;
    std::vector<Grasp> rejected;
    double stroke_s = 0, hand_s = 0, stability_s = 0;
    long long stroke_checks = 0, stroke_rejects = 0;
    long long pad_checks = 0, pad_rejects = 0;
    long long hand_checks = 0, hand_rejects = 0;
    long long stability_checks = 0, unstable = 0;
};

void merge_outputs(PlanResult& result, std::vector<CandidateOutput>& outputs, bool keep_rejected) {
    for (auto& o : outputs) {
        for (auto& g : o.accepted) result.accepted.push_back(std::move(g));
        if (keep_rejected)
            for (auto& g : o.rejected) result.rejected.push_back(std::move(g));
        result.times.stroke_check += o.stroke_s;
        result.times.hand_check += o.hand_s;
        result.times.stability += o.stability_s;
        result.counters.stroke_checks += o.stroke_checks;
        result.counters.stroke_rejects += o.stroke_rejects;
        result.counters.pad_gap_checks += o.pad_checks;
        result.counters.pad_gap_rejects += o.pad_rejects;
        result.counters.hand_checks += o.hand_checks;
        result.counters.hand_rejects += o.hand_rejects;
        result.counters.stability_checks += o.stability_checks;
        result.counters.unstable_rejects += o.unstable;
    }
    result.counters.accepted = (long long)result.accepted.size();
}

Grasp make_grasp(const Transform& pose, double jaw, std::vector<ContactPoint> contacts, int roll,
                 const StabilityReport& report, RejectReason reason) {
    Grasp g;
    g.rotation = pose.rot;
    g.translation = pose.trans;
    g.jaw_width = jaw;
    g.contacts = std::move(contacts);
    g.rotation_index = roll;
    g.stability = report;
    g.reason = reason;
    return g;
}

}  // namespace

PlanResult plan_suction(const TriangleMesh& mesh, const PlannerParams& params, const GripperModel& model,
                        const PreparedContacts* precomputed) {
    params.validate();
    model.validate();
    if (model.kind != GripperKind::Suction) throw DomainError("plan_suction needs a suction model");

    PlanResult result;
    PreparedContacts prep = precomputed ? *precomputed : prepare_contacts(mesh, params);
    result.times = prep.times;
    result.counters = prep.counters;

    const Bvh obj_bvh(mesh);
    const TriangleMesh ee_mesh = model.collision_mesh(0.0, kPadClearance);
    const Bvh ee_bvh(ee_mesh);
    const Transform obj_pose = Transform::identity();

    // flatten (facet, contact) work items in canonical order
    std::vector<const ContactPoint*> work;
    for (const auto& facet_contacts : prep.contacts)
        for (const auto& c : facet_contacts) work.push_back(&c);

    std::vector<CandidateOutput> outputs(work.size());
    parallel_for((int)work.size(), params.jobs, [&](int i) {
        const ContactPoint& contact = *work[i];
        CandidateOutput& out = outputs[i];
        const double R = prep.facets[contact.facet].curvature_radius;
        for (int roll = 0; roll < params.n_da; ++roll) {
            Transform pose = pose_at_contact(model, contact, roll, params.n_da);
            auto t0 = Clock::now();
            bool hit = check_collision(ee_bvh, pose, obj_bvh, obj_pose);
            out.hand_s += seconds_since(t0);
            ++out.hand_checks;
            if (hit) {
                ++out.hand_rejects;
                out.rejected.push_back(make_grasp(pose, 0.0, {contact}, roll, {}, RejectReason::HandCollision));
                continue;
            }
            t0 = Clock::now();
            StabilityReport report = gate_stability(contact.position, mesh.com, R, params.phys);
            out.stability_s += seconds_since(t0);
            ++out.stability_checks;
            if (!report.stable) {
                ++out.unstable;
                out.rejected.push_back(make_grasp(pose, 0.0, {contact}, roll, report, RejectReason::Unstable));
                continue;
            }
            out.accepted.push_back(make_grasp(pose, 0.0, {contact}, roll, report, RejectReason::None));
        }
    });
    merge_outputs(result, outputs, params.keep_rejected);
    result.facets = std::move(prep.facets);
    return result;
}

namespace {

struct PairPlanContext {
    const TriangleMesh& mesh;
    const PlannerParams& params;
    const GripperModel& model;
    const Bvh& obj_bvh;
    const std::vector<Facet>& facets;
    double ray_backoff;  // beyond any geometry, for pad-gap rays
};

// Orientation-independent finger sweeps: two capsules along the pair axis,
// outside the contacts, out to the fully open jaw position. Inner ends are
// pulled back by the capsule radius so the spherical cap stays clear of the
// contact surface itself.
bool two_finger_stroke_hit(const PairPlanContext& ctx, const ContactPair& pair, CandidateOutput& out) {
    const double r = ctx.model.pad_circumradius();
    const double inner = pair.distance / 2 + r + kPadClearance;
    const double outer = ctx.model.opening_max / 2;
    if (inner >= outer) return false;  // sweep shorter than the pad itself
    const Vec3 m = (pair.contact_a.position + pair.contact_b.position) * 0.5;
    const Transform identity = Transform::identity();
    auto t0 = Clock::now();
    bool hit = check_capsule({m - pair.axis * outer, m - pair.axis * inner, r}, ctx.obj_bvh, identity) ||
               check_capsule({m + pair.axis * inner, m + pair.axis * outer, r}, ctx.obj_bvh, identity);
    out.stroke_s += seconds_since(t0);
    ++out.stroke_checks;
    if (hit) ++out.stroke_rejects;
    return hit;
}

// Per-orientation sweeps of a three-finger hand: f1 on the axis, f2/f3
// offset half the finger gap along the rolled tool y axis.
bool three_finger_stroke_hit(const PairPlanContext& ctx, const ContactPair& pair, const Transform& pose,
                             CandidateOutput& out) {
    const double r = ctx.model.pad_circumradius();
    const double inner = pair.distance / 2 + r + kPadClearance;
    const double outer = ctx.model.opening_max / 2;
    if (inner >= outer) return false;
    const Vec3 m = (pair.contact_a.position + pair.contact_b.position) * 0.5;
    const Vec3 y = pose.rot.column(1);
    const Vec3 off = y * (ctx.model.finger_gap / 2);
    const Transform identity = Transform::identity();
    auto t0 = Clock::now();
    bool hit =
        check_capsule({m - pair.axis * outer, m - pair.axis * inner, r}, ctx.obj_bvh, identity) ||
        check_capsule({m + pair.axis * inner + off, m + pair.axis * outer + off, r}, ctx.obj_bvh, identity) ||
        check_capsule({m + pair.axis * inner - off, m + pair.axis * outer - off, r}, ctx.obj_bvh, identity);
    out.stroke_s += seconds_since(t0);
    ++out.stroke_checks;
    if (hit) ++out.stroke_rejects;
    return hit;
}

}  // namespace

double pad_surface_gap(const Bvh& obj_bvh, const Vec3& pad_center, const Vec3& axis_ab, double backoff) {
    Ray ray{pad_center + axis_ab * backoff, -axis_ab};
    auto hit = ray_cast(obj_bvh, ray);
    if (!hit) return std::numeric_limits<double>::infinity();
    return std::max(0.0, hit->distance - backoff);
}

PlanResult plan_two_finger(const TriangleMesh& mesh, const PlannerParams& params, const GripperModel& model,
                           const PreparedContacts* precomputed) {
    params.validate();
    model.validate();
    if (model.kind != GripperKind::TwoFinger) throw DomainError("plan_two_finger needs a two-finger model");

    PlanResult result;
    PreparedContacts prep = precomputed ? *precomputed : prepare_contacts(mesh, params);
    result.times = prep.times;
    result.counters = prep.counters;

    const Bvh obj_bvh(mesh);
    const Transform obj_pose = Transform::identity();

    auto t0 = Clock::now();
    std::vector<ContactPair> out_of_stroke;
    auto pairs = find_parallel_pairs(prep.facets, mesh, prep.contacts, params.theta_parl, model.opening_min,
                                     model.opening_max, params.keep_rejected ? &out_of_stroke : nullptr);
    result.times.pair_planning = seconds_since(t0);
    result.counters.pairs = (long long)pairs.size();
    result.counters.pairs_out_of_stroke = (long long)out_of_stroke.size();

    PairPlanContext ctx{mesh, params, model, obj_bvh, prep.facets, mesh.bounds().diagonal() + 1.0};

    std::vector<CandidateOutput> outputs(pairs.size());
    parallel_for((int)pairs.size(), params.jobs, [&](int i) {
        const ContactPair& pair = pairs[i];
        CandidateOutput& out = outputs[i];

        if (two_finger_stroke_hit(ctx, pair, out)) {
            auto pose = pose_at_pair(model, pair, 0, params.n_da);
            out.rejected.push_back(make_grasp(pose.pose, pose.jaw_width, {pair.contact_a, pair.contact_b}, 0,
                                              {}, RejectReason::StrokeCollision));
            return;
        }

        const TriangleMesh ee_mesh = model.collision_mesh(pair.distance, kPadClearance);
        const Bvh ee_bvh(ee_mesh);
        const double R = std::min(prep.facets[pair.facet_a].curvature_radius,
                                  prep.facets[pair.facet_b].curvature_radius);
        const Vec3 center = (pair.contact_a.position + pair.contact_b.position) * 0.5;

        for (int roll = 0; roll < params.n_da; ++roll) {
            auto pose = pose_at_pair(model, pair, roll, params.n_da);
            std::vector<ContactPoint> contacts{pair.contact_a, pair.contact_b};
            auto t1 = Clock::now();
            bool hit = check_collision(ee_bvh, pose.pose, obj_bvh, obj_pose);
            out.hand_s += seconds_since(t1);
            ++out.hand_checks;
            if (hit) {
                ++out.hand_rejects;
                out.rejected.push_back(make_grasp(pose.pose, pose.jaw_width, std::move(contacts), roll, {},
                                                  RejectReason::HandCollision));
                continue;
            }
            t1 = Clock::now();
            StabilityReport report = gate_stability(center, mesh.com, R, params.phys);
            out.stability_s += seconds_since(t1);
            ++out.stability_checks;
            if (!report.stable) {
                ++out.unstable;
                out.rejected.push_back(make_grasp(pose.pose, pose.jaw_width, std::move(contacts), roll,
                                                  report, RejectReason::Unstable));
                continue;
            }
            out.accepted.push_back(
                make_grasp(pose.pose, pose.jaw_width, std::move(contacts), roll, report, RejectReason::None));
        }
    });
    merge_outputs(result, outputs, params.keep_rejected);

    if (params.keep_rejected)
        for (const auto& pair : out_of_stroke) {
            auto pose = pose_at_pair(model, pair, 0, params.n_da, /*enforce_stroke=*/false);
            result.rejected.push_back(make_grasp(pose.pose, pose.jaw_width, {pair.contact_a, pair.contact_b},
                                                 0, {}, RejectReason::OutOfStroke));
        }
    result.facets = std::move(prep.facets);
    return result;
}

PlanResult plan_three_finger(const TriangleMesh& mesh, const PlannerParams& params,
                             const GripperModel& model, const PreparedContacts* precomputed) {
    params.validate();
    model.validate();
    if (model.kind != GripperKind::ThreeFinger)
        throw DomainError("plan_three_finger needs a three-finger model");

    PlanResult result;
    PreparedContacts prep = precomputed ? *precomputed : prepare_contacts(mesh, params);
    result.times = prep.times;
    result.counters = prep.counters;

    const Bvh obj_bvh(mesh);
    const Transform obj_pose = Transform::identity();

    auto t0 = Clock::now();
    std::vector<ContactPair> out_of_stroke;
    auto pairs = find_parallel_pairs(prep.facets, mesh, prep.contacts, params.theta_parl, model.opening_min,
                                     model.opening_max, params.keep_rejected ? &out_of_stroke : nullptr);
    result.times.pair_planning = seconds_since(t0);
    result.counters.pairs = (long long)pairs.size();
    result.counters.pairs_out_of_stroke = (long long)out_of_stroke.size();

    PairPlanContext ctx{mesh, params, model, obj_bvh, prep.facets, mesh.bounds().diagonal() + 1.0};

    std::vector<CandidateOutput> outputs(pairs.size());
    parallel_for((int)pairs.size(), params.jobs, [&](int i) {
        const ContactPair& pair = pairs[i];
        CandidateOutput& out = outputs[i];

        const TriangleMesh ee_mesh = model.collision_mesh(pair.distance, kPadClearance);
        const Bvh ee_bvh(ee_mesh);
        const double R = std::min(prep.facets[pair.facet_a].curvature_radius,
                                  prep.facets[pair.facet_b].curvature_radius);
        const Vec3 center = (pair.contact_a.position + pair.contact_b.position) * 0.5;

        for (int roll = 0; roll < params.n_da; ++roll) {
            auto pose = pose_at_pair(model, pair, roll, params.n_da);
            std::vector<ContactPoint> contacts{pair.contact_a, pair.contact_b};

            // stroke cylinders rotate with the hand, so this sits inside the roll loop
            if (three_finger_stroke_hit(ctx, pair, pose.pose, out)) {
                out.rejected.push_back(make_grasp(pose.pose, pose.jaw_width, std::move(contacts), roll, {},
                                                  RejectReason::StrokeCollision));
                continue;
            }

            const Vec3 y = pose.pose.rot.column(1);
            const Vec3 off = y * (model.finger_gap / 2);
            ++out.pad_checks;
            double gap2 = pad_surface_gap(obj_bvh, pair.contact_b.position + off, pair.axis, ctx.ray_backoff);
            double gap3 = pad_surface_gap(obj_bvh, pair.contact_b.position - off, pair.axis, ctx.ray_backoff);
            if (!(gap2 <= params.t_dct + 1e-9) || !(gap3 <= params.t_dct + 1e-9)) {
                ++out.pad_rejects;
                out.rejected.push_back(make_grasp(pose.pose, pose.jaw_width, std::move(contacts), roll, {},
                                                  RejectReason::PadGap));
                continue;
            }

            auto t1 = Clock::now();
            bool hit = check_collision(ee_bvh, pose.pose, obj_bvh, obj_pose);
            out.hand_s += seconds_since(t1);
            ++out.hand_checks;
            if (hit) {
                ++out.hand_rejects;
                out.rejected.push_back(make_grasp(pose.pose, pose.jaw_width, std::move(contacts), roll, {},
                                                  RejectReason::HandCollision));
                continue;
            }
            t1 = Clock::now();
            StabilityReport report = gate_stability(center, mesh.com, R, params.phys);
            out.stability_s += seconds_since(t1);
            ++out.stability_checks;
            if (!report.stable) {
                ++out.unstable;
                out.rejected.push_back(make_grasp(pose.pose, pose.jaw_width, std::move(contacts), roll,
                                                  report, RejectReason::Unstable));
                continue;
            }
            out.accepted.push_back(
                make_grasp(pose.pose, pose.jaw_width, std::move(contacts), roll, report, RejectReason::None));
        }
    });
    merge_outputs(result, outputs, params.keep_rejected);

    if (params.keep_rejected)
        for (const auto& pair : out_of_stroke) {
            auto pose = pose_at_pair(model, pair, 0, params.n_da, /*enforce_stroke=*/false);
            result.rejected.push_back(make_grasp(pose.pose, pose.jaw_width, {pair.contact_a, pair.contact_b},
                                                 0, {}, RejectReason::OutOfStroke));
        }
    result.facets = std::move(prep.facets);
    return result;
}

}  // namespace graspforge
