// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
//
// graspforge: plan suction / two-finger / three-finger grasps for a
// watertight mesh. Subcommands run the pipeline up to a stage and write
// artifacts; `stats` prints per-stage timings.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "graspforge/grasp_io.hpp"

using namespace graspforge;

namespace {

struct Options {
    std::string mesh_path;
    std::string gripper = "two_finger_85";
    std::string planner = "two_finger";
    std::string output;
    std::string debug_prefix;
    bool export_debug = false;

    // Table-I parameters, angles in degrees at the CLI
    double theta_pln_deg = 20.0;
    double theta_fct_deg = 20.0;
    double theta_parl_deg = 160.0;
    double t_bdry = 2.0;
    double t_rnn = 3.0;
    double t_dct = 3.0;
    double h_max = 1.5;
    int n_da = 8;
    double density = 0.01;
    uint64_t seed = 0;

    double mass = 0.0;
    double mu = 0.5;
    double grip_force = 20.0;
    double gravity = 9.81;
    int jobs = 1;
    std::string seed_scan = "all";

    PlannerParams to_params() const {
        PlannerParams p;
        p.theta_pln = deg_to_rad(theta_pln_deg);
        p.theta_fct = deg_to_rad(theta_fct_deg);
        p.theta_parl = deg_to_rad(theta_parl_deg);
        p.t_bdry = t_bdry;
        p.t_rnn = t_rnn;
        p.t_dct = t_dct;
        p.n_da = n_da;
        p.density = density;
        p.rng_seed = seed;
        p.phys.mass = mass;
        p.phys.friction_mu = mu;
        p.phys.grip_force = grip_force;
        p.phys.gravity = gravity;
        p.phys.h_max = h_max;
        p.jobs = jobs;
        p.seed_scan = seed_scan == "one_ring" ? SeedScan::OneRing : SeedScan::AllReachable;
        p.keep_rejected = export_debug;
        return p;
    }
};

void add_common_options(CLI::App* cmd, Options& opt, bool needs_physics) {
    cmd->add_option("--mesh,--object", opt.mesh_path, "object mesh (.obj/.stl)")->required();
    cmd->add_option("--theta-pln", opt.theta_pln_deg, "facet planarity threshold, degrees");
    cmd->add_option("--theta-fct", opt.theta_fct_deg, "facet superimposition threshold, degrees");
    cmd->add_option("--t-bdry", opt.t_bdry, "contact-to-boundary clearance, mm");
    cmd->add_option("--t-rnn", opt.t_rnn, "contact region radius, mm");
    cmd->add_option("--density", opt.density, "surface samples per mm^2");
    cmd->add_option("--seed", opt.seed, "sampling RNG seed");
    cmd->add_option("--seed-scan", opt.seed_scan, "new-seed scan range: all | one_ring")
        ->check(CLI::IsMember({"all", "one_ring"}));
    cmd->add_option("--output,-o", opt.output, "artifact path");
    cmd->add_flag("--export-debug", opt.export_debug, "write debug OBJ scenes");
    cmd->add_option("--debug-prefix", opt.debug_prefix, "path prefix for debug artifacts");
    cmd->set_config("--config", "", "run configuration file (flags override file values)");
    if (needs_physics) {
        cmd->add_option("--theta-parl", opt.theta_parl_deg, "facet pair parallelity threshold, degrees");
        cmd->add_option("--t-dct", opt.t_dct, "pad-to-surface distance bound, mm (three-finger)");
        cmd->add_option("--h-max", opt.h_max, "maximum soft-pad penetration, mm");
        cmd->add_option("--n-da", opt.n_da, "discretized roll angles per contact");
        cmd->add_option("--mass", opt.mass, "object mass, kg")->required();
        cmd->add_option("--mu", opt.mu, "friction coefficient");
        cmd->add_option("--grip-force", opt.grip_force, "squeeze/holding force per jaw, N");
        cmd->add_option("--gravity", opt.gravity, "gravity, m/s^2");
        cmd->add_option("--jobs", opt.jobs, "worker threads for candidate evaluation");
        cmd->add_option("--gripper", opt.gripper, "gripper profile name or path");
        cmd->add_option("--planner", opt.planner, "suction | two_finger | three_finger")
            ->check(CLI::IsMember({"suction", "two_finger", "three_finger"}));
    }
}

std::string default_prefix(const Options& opt) {
    return opt.debug_prefix.empty() ? "graspforge_debug" : opt.debug_prefix;
}

void warn_mesh(const TriangleMesh& mesh) {
    if (!mesh.watertight)
        std::cerr << "warning: mesh is not watertight (an edge is not shared by exactly 2 triangles)\n";
    if (mesh.degenerate_dropped > 0)
        std::cerr << "warning: dropped " << mesh.degenerate_dropped << " degenerate triangle(s)\n";
    if (!mesh.com_from_volume)
        std::cerr << "warning: volume integral ill-defined; com falls back to surface centroid\n";
}

int run_segment(const Options& opt) {
    auto mesh = load_mesh(opt.mesh_path);
    warn_mesh(mesh);
    auto params = opt.to_params();
    auto facets = segment(mesh, SegmentationParams{params.theta_pln, params.theta_fct, params.seed_scan});
    std::cout << "facets: " << facets.size() << " (triangles: " << mesh.triangle_count() << ")\n";
    if (!opt.output.empty()) write_facets_json(opt.output, facets);
    if (opt.export_debug) export_facets_obj(default_prefix(opt) + "_facets.obj", mesh, facets, 2.0, 12345);
    return 0;
}

int run_sample(const Options& opt) {
    auto mesh = load_mesh(opt.mesh_path);
    warn_mesh(mesh);
    auto params = opt.to_params();
    params.phys.mass = 1.0;  // physics unused at this stage
    auto prep = prepare_contacts(mesh, params);
    std::cout << "samples: " << prep.counters.samples << ", distributed: " << prep.counters.contacts_distributed
              << ", after boundary refinement: " << prep.counters.contacts_after_boundary
              << ", after RNN refinement: " << prep.counters.contacts_after_rnn << "\n";
    if (!opt.output.empty()) {
        std::vector<Grasp> dummy;  // samples go to a json artifact instead
        std::ofstream out(opt.output, std::ios::binary);
        out << "[\n";
        bool first = true;
        for (const auto& per_facet : prep.contacts)
            for (const auto& c : per_facet) {
                if (!first) out << ",\n";
                first = false;
                out.precision(17);
                out << "  {\"facet\": " << c.facet << ", \"triangle\": " << c.triangle << ", \"position\": ["
                    << c.position.x << ", " << c.position.y << ", " << c.position.z << "]}";
            }
        out << "\n]\n";
        (void)dummy;
    }
    if (opt.export_debug) {
        std::vector<ContactPoint> removed, survivors;
        for (const auto& f : prep.boundary_removed) removed.insert(removed.end(), f.begin(), f.end());
        for (const auto& f : prep.contacts) survivors.insert(survivors.end(), f.begin(), f.end());
        export_samples_obj(default_prefix(opt) + "_samples.obj", removed, survivors);
    }
    return 0;
}

int run_pairs(const Options& opt) {
    auto mesh = load_mesh(opt.mesh_path);
    warn_mesh(mesh);
    auto model = load_gripper_profile(resolve_gripper_profile(opt.gripper));
    auto params = opt.to_params();
    params.phys.mass = 1.0;
    auto prep = prepare_contacts(mesh, params);
    auto pairs = find_parallel_pairs(prep.facets, mesh, prep.contacts, params.theta_parl, model.opening_min,
                                     model.opening_max);
    std::cout << "candidate pairs: " << pairs.size() << "\n";
    if (!opt.output.empty()) write_pairs_json(opt.output, pairs);
    return 0;
}

int run_plan(const Options& opt, bool stats_only) {
    auto mesh = load_mesh(opt.mesh_path);
    warn_mesh(mesh);
    auto model = load_gripper_profile(resolve_gripper_profile(opt.gripper));
    auto params = opt.to_params();

    PlanResult result;
    PreparedContacts prep;
    const PreparedContacts* prep_ptr = nullptr;
    if (opt.export_debug) {
        prep = prepare_contacts(mesh, params);
        prep_ptr = &prep;
    }
    if (opt.planner == "suction")
        result = plan_suction(mesh, params, model, prep_ptr);
    else if (opt.planner == "two_finger")
        result = plan_two_finger(mesh, params, model, prep_ptr);
    else
        result = plan_three_finger(mesh, params, model, prep_ptr);

    std::cout << "accepted grasps: " << result.accepted.size();
    if (params.keep_rejected) std::cout << ", rejected candidates: " << result.rejected.size();
    std::cout << "\n";

    if (stats_only || !opt.output.empty()) {
        std::string out_path = opt.output.empty() ? "" : opt.output;
        if (stats_only) {
            std::cout << format_stats_table(result.times, result.counters);
            if (!out_path.empty()) write_stats_json(out_path, result.times, result.counters);
        } else {
            write_grasps_jsonl(out_path, result.accepted);
        }
    }
    if (opt.export_debug) export_debug_scene(default_prefix(opt), mesh, model, prep, result);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"grasp synthesis for industrial end-effectors"};
    app.require_subcommand(1);

    Options opt;
    add_common_options(app.add_subcommand("segment", "superimposed facet segmentation"), opt, false);
    add_common_options(app.add_subcommand("sample", "contact sampling and refinement"), opt, false);
    add_common_options(app.add_subcommand("pairs", "candidate contact pairs"), opt, true);
    add_common_options(app.add_subcommand("plan", "full grasp planning"), opt, true);
    add_common_options(app.add_subcommand("stats", "plan and report per-stage costs"), opt, true);

    // pairs does not gate on physics
    if (auto* pairs_cmd = app.get_subcommand("pairs"))
        if (auto* mass_opt = pairs_cmd->get_option_no_throw("--mass")) mass_opt->required(false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("segment")) return run_segment(opt);
        if (app.got_subcommand("sample")) return run_sample(opt);
        if (app.got_subcommand("pairs")) return run_pairs(opt);
        if (app.got_subcommand("plan")) return run_plan(opt, false);
        if (app.got_subcommand("stats")) return run_plan(opt, true);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
