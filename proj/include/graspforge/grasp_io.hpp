// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#pragma once

#include <string>
#include <vector>

#include "graspforge/planner.hpp"

namespace graspforge {

/// One JSON record per line: rotation (9, row-major), translation (3),
/// jaw_width, contacts (position/normal), rotation_index, stability report,
/// reason ("" for accepted). Write -> read -> write is byte-identical.
void write_grasps_jsonl(const std::string& path, const std::vector<Grasp>& grasps);
std::vector<Grasp> read_grasps_jsonl(const std::string& path);

std::string grasp_to_json_line(const Grasp& grasp);

void write_facets_json(const std::string& path, const std::vector<Facet>& facets);
void write_pairs_json(const std::string& path, const std::vector<ContactPair>& pairs);

std::string format_stats_table(const StageTimes& times, const StageCounters& counters);
void write_stats_json(const std::string& path, const StageTimes& times, const StageCounters& counters);

/// Hands drawn at grasp poses, accepted white, rejected red (per-group
/// materials). Jaw width comes from each grasp record.
void export_hands_obj(const std::string& path, const GripperModel& model,
                      const std::vector<Grasp>& accepted, const std::vector<Grasp>& rejected);

/// All debug artifacts for one run under `prefix`: exploded facets, sample
/// survival cloud, accepted/rejected hand scenes.
void export_debug_scene(const std::string& prefix, const TriangleMesh& mesh, const GripperModel& model,
                        const PreparedContacts& prep, const PlanResult& result);

/// Profile lookup order: literal path, then $GRASPFORGE_PROFILE_DIR, then the
/// bundled profiles/ directory next to the binary's working directory.
std::string resolve_gripper_profile(const std::string& name);

}  // namespace graspforge
