// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "graspforge/grasp_io.hpp"

using namespace graspforge;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

PlanResult plan_cube() {
    auto cube = fixtures::make_centered_cube(40.0);
    PlannerParams params;
    params.phys.mass = 0.1;
    params.rng_seed = 3;
    GripperModel model;
    model.kind = GripperKind::TwoFinger;
    return plan_two_finger(cube, params, model);
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("grasp list write-read-write is byte identical") {
    auto result = plan_cube();
    REQUIRE(!result.accepted.empty());
    auto dir = fs::temp_directory_path();
    auto p1 = (dir / "grasps_1.jsonl").string();
    auto p2 = (dir / "grasps_2.jsonl").string();
    write_grasps_jsonl(p1, result.accepted);
    auto back = read_grasps_jsonl(p1);
    REQUIRE(back.size() == result.accepted.size());
    write_grasps_jsonl(p2, back);
    CHECK(slurp(p1) == slurp(p2));
    fs::remove(p1);
    fs::remove(p2);
}

TEST_CASE("grasp records carry the full pose, contacts, and stability report") {
    auto result = plan_cube();
    const auto& g = result.accepted.front();
    auto line = grasp_to_json_line(g);
    auto j = nlohmann::json::parse(line);
    CHECK(j.at("rotation").size() == 9);
    CHECK(j.at("translation").size() == 3);
    CHECK(j.at("contacts").size() == 2);
    CHECK(j.at("contacts")[0].at("position").size() == 3);
    CHECK(j.at("contacts")[0].at("normal").size() == 3);
    CHECK(j.at("jaw_width").get<double>() == doctest::Approx(40.0).epsilon(1e-6));
    CHECK(j.at("rotation_index").is_number_integer());
    CHECK(j.at("stability").at("stable").get<bool>());
    CHECK(j.at("stability").at("margin").get<double>() == g.stability.margin);
    CHECK(j.at("reason").get<std::string>().empty());
}

TEST_CASE("reject reason names round trip") {
    for (auto r : {RejectReason::None, RejectReason::StrokeCollision, RejectReason::HandCollision,
                   RejectReason::OutOfStroke, RejectReason::PadGap, RejectReason::Unstable})
        CHECK(reject_reason_from_name(reject_reason_name(r)) == r);
}

TEST_CASE("facet, pair, and stats artifacts are valid json") {
    auto cube = fixtures::make_centered_cube(40.0);
    PlannerParams params;
    params.phys.mass = 0.1;
    auto prep = prepare_contacts(cube, params);
    auto pairs = find_parallel_pairs(prep.facets, cube, prep.contacts, params.theta_parl, 0, 85);

    auto dir = fs::temp_directory_path();
    auto facets_path = (dir / "facets.json").string();
    auto pairs_path = (dir / "pairs.json").string();
    auto stats_path = (dir / "stats.json").string();
    write_facets_json(facets_path, prep.facets);
    write_pairs_json(pairs_path, pairs);
    write_stats_json(stats_path, prep.times, prep.counters);

    auto jf = nlohmann::json::parse(slurp(facets_path));
    CHECK(jf.size() == prep.facets.size());
    CHECK(jf[0].contains("seed_triangle"));
    auto jp = nlohmann::json::parse(slurp(pairs_path));
    CHECK(jp.size() == pairs.size());
    auto js = nlohmann::json::parse(slurp(stats_path));
    CHECK(js.at("times").contains("hand_check"));
    CHECK(js.at("counts").at("facets").get<long long>() == 6);
    for (const auto& p : {facets_path, pairs_path, stats_path}) fs::remove(p);
}

TEST_CASE("stats table lists the seven cost rows") {
    StageTimes times;
    StageCounters counters;
    auto table = format_stats_table(times, counters);
    for (const char* row : {"segmentation", "sampling", "remove bad samples 1", "remove bad samples 2",
                            "pair planning", "stroke check", "hand check"})
        CHECK(table.find(row) != std::string::npos);
}

TEST_CASE("gripper profile resolution order") {
    CHECK_THROWS_AS(resolve_gripper_profile("no_such_profile"), ParseError);

    auto dir = fs::temp_directory_path() / "gf_profiles";
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "custom.gripper");
        out << "kind = two_finger\n";
    }
    setenv("GRASPFORGE_PROFILE_DIR", dir.string().c_str(), 1);
    CHECK(resolve_gripper_profile("custom") == (dir / "custom.gripper").string());
    CHECK(resolve_gripper_profile("custom.gripper") == (dir / "custom.gripper").string());
    unsetenv("GRASPFORGE_PROFILE_DIR");
    fs::remove_all(dir);
}

TEST_CASE("debug scene export writes the figure set") {
    auto cube = fixtures::make_centered_cube(40.0);
    PlannerParams params;
    params.phys.mass = 0.1;
    params.keep_rejected = true;
    GripperModel model;
    model.kind = GripperKind::TwoFinger;
    auto prep = prepare_contacts(cube, params);
    auto result = plan_two_finger(cube, params, model, &prep);

    auto prefix = (fs::temp_directory_path() / "gf_scene").string();
    export_debug_scene(prefix, cube, model, prep, result);
    for (const char* suffix : {"_facets.obj", "_samples.obj", "_hands.obj", "_object.obj"}) {
        CHECK(fs::exists(prefix + suffix));
        fs::remove(prefix + suffix);
    }
    fs::remove(prefix + std::string("_facets.mtl"));
    fs::remove(prefix + std::string("_hands.mtl"));
}

TEST_SUITE_END();
