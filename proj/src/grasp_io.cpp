// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#include "graspforge/grasp_io.hpp"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace graspforge {

namespace {

using json = nlohmann::ordered_json;

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }

json grasp_to_json(const Grasp& g) {
    json j;
    j["rotation"] = json::array();
    for (double v : g.rotation.m) j["rotation"].push_back(v);
    j["translation"] = vec_to_json(g.translation);
    j["jaw_width"] = g.jaw_width;
    j["contacts"] = json::array();
    for (const auto& c : g.contacts) {
        json jc;
        jc["position"] = vec_to_json(c.position);
        jc["normal"] = vec_to_json(c.normal);
        j["contacts"].push_back(jc);
    }
    j["rotation_index"] = g.rotation_index;
    json js;
    js["c"] = g.stability.c;
    js["R"] = g.stability.R;
    js["e_n"] = g.stability.e_n;
    js["margin"] = g.stability.margin;
    js["stable"] = g.stability.stable;
    j["stability"] = js;
    j["reason"] = reject_reason_name(g.reason);
    return j;
}

Grasp grasp_from_json(const json& j) {
    Grasp g;
    for (int i = 0; i < 9; ++i) g.rotation.m[i] = j.at("rotation").at(i).get<double>();
    g.translation = vec_from_json(j.at("translation"));
    g.jaw_width = j.at("jaw_width").get<double>();
    for (const auto& jc : j.at("contacts")) {
        ContactPoint c;
        c.position = vec_from_json(jc.at("position"));
        c.normal = vec_from_json(jc.at("normal"));
        g.contacts.push_back(c);
    }
    g.rotation_index = j.at("rotation_index").get<int>();
    const auto& js = j.at("stability");
    g.stability.c = js.at("c").get<double>();
    g.stability.R = js.at("R").get<double>();
    g.stability.e_n = js.at("e_n").get<double>();
    g.stability.margin = js.at("margin").get<double>();
    g.stability.stable = js.at("stable").get<bool>();
    g.reason = reject_reason_from_name(j.at("reason").get<std::string>());
    return g;
}

}  // namespace

std::string grasp_to_json_line(const Grasp& grasp) { return grasp_to_json(grasp).dump(); }

void write_grasps_jsonl(const std::string& path, const std::vector<Grasp>& grasps) {
    std::ofstream out(path, std::ios::binary);  // binary keeps \n stable across platforms
    if (!out) throw ParseError("cannot write " + path);
    for (const auto& g : grasps) out << grasp_to_json_line(g) << '\n';
}

std::vector<Grasp> read_grasps_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::vector<Grasp> grasps;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        grasps.push_back(grasp_from_json(json::parse(line)));
    }
    return grasps;
}

void write_facets_json(const std::string& path, const std::vector<Facet>& facets) {
    json arr = json::array();
    for (const auto& f : facets) {
        json j;
        j["seed_triangle"] = f.seed_triangle;
        j["members"] = f.members;
        j["avg_normal"] = vec_to_json(f.avg_normal);
        j["boundary_edge_count"] = f.boundary_edges.size();
        j["curvature_radius"] = f.curvature_radius;
        arr.push_back(j);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << arr.dump(2) << '\n';
}

void write_pairs_json(const std::string& path, const std::vector<ContactPair>& pairs) {
    json arr = json::array();
    for (const auto& p : pairs) {
        json j;
        j["facet_a"] = p.facet_a;
        j["facet_b"] = p.facet_b;
        j["position_a"] = vec_to_json(p.contact_a.position);
        j["normal_a"] = vec_to_json(p.contact_a.normal);
        j["position_b"] = vec_to_json(p.contact_b.position);
        j["normal_b"] = vec_to_json(p.contact_b.normal);
        j["distance"] = p.distance;
        arr.push_back(j);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << arr.dump(2) << '\n';
}

std::string format_stats_table(const StageTimes& times, const StageCounters& counters) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(4);
    auto row = [&out](const char* name, double seconds) {
        out << "  " << name;
        for (size_t i = std::strlen(name); i < 22; ++i) out << ' ';
        out << seconds << " s\n";
    };
    out << "stage timings:\n";
    row("segmentation", times.segmentation);
    row("sampling", times.sampling);
    row("remove bad samples 1", times.refine_boundary);
    row("remove bad samples 2", times.refine_rnn);
    row("pair planning", times.pair_planning);
    row("stroke check", times.stroke_check);
    row("hand check", times.hand_check);
    out << "counts: facets=" << counters.facets << " samples=" << counters.samples
        << " contacts=" << counters.contacts_distributed << " after_bdry=" << counters.contacts_after_boundary
        << " after_rnn=" << counters.contacts_after_rnn << " pairs=" << counters.pairs
        << " stroke_checks=" << counters.stroke_checks << " hand_checks=" << counters.hand_checks
        << " accepted=" << counters.accepted << "\n";
    return out.str();
}

void write_stats_json(const std::string& path, const StageTimes& times, const StageCounters& counters) {
    json j;
    j["times"] = {{"segmentation", times.segmentation},
                  {"sampling", times.sampling},
                  {"remove_bad_1", times.refine_boundary},
                  {"remove_bad_2", times.refine_rnn},
                  {"pair_planning", times.pair_planning},
                  {"stroke_check", times.stroke_check},
                  {"hand_check", times.hand_check}};
    j["counts"] = {{"facets", counters.facets},
                   {"samples", counters.samples},
                   {"contacts_distributed", counters.contacts_distributed},
                   {"contacts_after_boundary", counters.contacts_after_boundary},
                   {"contacts_after_rnn", counters.contacts_after_rnn},
                   {"pairs", counters.pairs},
                   {"pairs_out_of_stroke", counters.pairs_out_of_stroke},
                   {"stroke_checks", counters.stroke_checks},
                   {"stroke_rejects", counters.stroke_rejects},
                   {"pad_gap_checks", counters.pad_gap_checks},
                   {"pad_gap_rejects", counters.pad_gap_rejects},
                   {"hand_checks", counters.hand_checks},
                   {"hand_rejects", counters.hand_rejects},
                   {"stability_checks", counters.stability_checks},
                   {"unstable_rejects", counters.unstable_rejects},
                   {"accepted", counters.accepted}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << j.dump(2) << '\n';
}

namespace {

void append_hand(std::ofstream& out, int& vertex_base, const GripperModel& model, const Grasp& grasp,
                 const std::string& material, int index) {
    TriangleMesh hand = model.collision_mesh(grasp.jaw_width, 0.0);
    Transform pose{grasp.rotation, grasp.translation};
    out << "g hand_" << material << '_' << index << "\nusemtl " << material << '\n';
    for (const auto& v : hand.vertices) {
        Vec3 p = pose.apply(v);
        out << "v " << p.x << ' ' << p.y << ' ' << p.z << '\n';
    }
    for (const auto& t : hand.triangles)
        out << "f " << vertex_base + t[0] << ' ' << vertex_base + t[1] << ' ' << vertex_base + t[2] << '\n';
    vertex_base += (int)hand.vertices.size();
}

}  // namespace

void export_hands_obj(const std::string& path, const GripperModel& model,
                      const std::vector<Grasp>& accepted, const std::vector<Grasp>& rejected) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    std::string mtl_path = path.substr(0, path.find_last_of('.')) + ".mtl";
    {
        std::ofstream mtl(mtl_path);
        mtl << "newmtl accepted\nKd 1 1 1\nnewmtl rejected\nKd 1 0 0\n";
    }
    auto slash = mtl_path.find_last_of("/\\");
    out << "mtllib " << (slash == std::string::npos ? mtl_path : mtl_path.substr(slash + 1)) << '\n';
    out.precision(9);
    int base = 1;
    int i = 0;
    for (const auto& g : accepted) append_hand(out, base, model, g, "accepted", i++);
    i = 0;
    for (const auto& g : rejected) append_hand(out, base, model, g, "rejected", i++);
}

void export_debug_scene(const std::string& prefix, const TriangleMesh& mesh, const GripperModel& model,
                        const PreparedContacts& prep, const PlanResult& result) {
    export_facets_obj(prefix + "_facets.obj", mesh, prep.facets, 2.0, /*color_seed=*/12345);
    std::vector<ContactPoint> removed, survivors;
    for (const auto& per_facet : prep.boundary_removed)
        removed.insert(removed.end(), per_facet.begin(), per_facet.end());
    for (const auto& per_facet : prep.contacts)
        survivors.insert(survivors.end(), per_facet.begin(), per_facet.end());
    export_samples_obj(prefix + "_samples.obj", removed, survivors);
    export_hands_obj(prefix + "_hands.obj", model, result.accepted, result.rejected);
    save_obj(prefix + "_object.obj", mesh);
}

std::string resolve_gripper_profile(const std::string& name) {
    namespace fs = std::filesystem;
    if (fs::exists(name)) return name;
    if (const char* dir = std::getenv("GRASPFORGE_PROFILE_DIR")) {
        fs::path p = fs::path(dir) / name;
        if (fs::exists(p)) return p.string();
        p += ".gripper";
        if (fs::exists(p)) return p.string();
    }
    fs::path bundled = fs::path("profiles") / name;
    if (fs::exists(bundled)) return bundled.string();
    bundled += ".gripper";
    if (fs::exists(bundled)) return bundled.string();
    throw ParseError("gripper profile not found: " + name);
}

}  // namespace graspforge
