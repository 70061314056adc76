// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The GraspForge Authors
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace graspforge;
namespace fs = std::filesystem;

namespace {

std::string temp_path(const std::string& name) {
    return (fs::temp_directory_path() / ("graspforge_test_" + name)).string();
}

double uniform01(std::mt19937_64& rng) { return (double)(rng() >> 11) * 0x1.0p-53; }

}  // namespace

TEST_SUITE_BEGIN("mesh");

TEST_CASE("unit cube obj loads with expected indexing") {
    auto path = temp_path("cube.obj");
    fixtures::write_unit_cube_obj(path, false);
    auto mesh = load_mesh(path, MeshFormat::Obj);
    CHECK(mesh.triangle_count() == 12);
    CHECK(mesh.vertices.size() == 8);
    CHECK(mesh.watertight);
    CHECK(mesh.com_from_volume);
    CHECK(mesh.com.x == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mesh.com.y == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mesh.com.z == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mesh.total_area == doctest::Approx(6.0));
    CHECK(mesh.signed_volume == doctest::Approx(1.0));
    std::remove(path.c_str());
}

TEST_CASE("duplicated vertices weld to the exact-coordinate set") {
    auto path = temp_path("cube_dup.obj");
    fixtures::write_unit_cube_obj(path, true);
    auto mesh = load_mesh(path);
    // weld oracle: count distinct exact coordinate triples in the input
    CHECK(mesh.vertices.size() == 8);
    CHECK(mesh.welded_vertices == 36 - 8);
    CHECK(mesh.triangle_count() == 12);
    CHECK(mesh.watertight);
    std::remove(path.c_str());
}

TEST_CASE("degenerate triangle among 12 is dropped with a warning flag") {
    auto path = temp_path("cube_degen.obj");
    {
        std::vector<Vec3> v;
        std::vector<std::array<int, 3>> t;
        fixtures::append_box_raw(v, t, {0, 0, 0}, {1, 1, 1});
        t.pop_back();  // drop one real face triangle
        std::ofstream out(path);
        for (const auto& p : v) out << "v " << p.x << ' ' << p.y << ' ' << p.z << '\n';
        for (const auto& tr : t) out << "f " << tr[0] + 1 << ' ' << tr[1] + 1 << ' ' << tr[2] + 1 << '\n';
        out << "f 1 1 2\n";  // zero-area
    }
    auto mesh = load_mesh(path);
    CHECK(mesh.triangle_count() == 11);
    CHECK(mesh.degenerate_dropped == 1);
    CHECK_FALSE(mesh.watertight);
    std::remove(path.c_str());
}

TEST_CASE("stl ascii and binary readers agree with obj") {
    auto obj_path = temp_path("c.obj");
    auto ascii_path = temp_path("c_ascii.stl");
    auto bin_path = temp_path("c_bin.stl");
    fixtures::write_unit_cube_obj(obj_path, false);
    fixtures::write_cube_stl_ascii(ascii_path, 1.0);
    fixtures::write_cube_stl_binary(bin_path, 1.0);

    auto obj = load_mesh(obj_path);
    auto ascii = load_mesh(ascii_path);   // sniffed
    auto bin = load_mesh(bin_path);       // sniffed
    for (const auto* m : {&ascii, &bin}) {
        CHECK(m->triangle_count() == 12);
        CHECK(m->vertices.size() == 8);
        CHECK(m->watertight);
        CHECK((m->com - obj.com).norm() < 1e-9);
        CHECK(m->total_area == doctest::Approx(obj.total_area));
    }
    // binary layout: 80-byte header + count + 50 bytes per triangle
    CHECK(fs::file_size(bin_path) == 84 + 50 * 12);
    for (const auto& p : {obj_path, ascii_path, bin_path}) std::remove(p.c_str());
}

TEST_CASE("parse and empty-mesh errors") {
    auto path = temp_path("bad.obj");
    {
        std::ofstream out(path);
        out << "v 0 0 0\nf 1 2 99\n";
    }
    CHECK_THROWS_AS(load_mesh(path, MeshFormat::Obj), ParseError);
    {
        std::ofstream out(path);
        out << "v 0 0 0\nv 1 0 0\nv 0 1 0\n";
    }
    CHECK_THROWS_AS(load_mesh(path, MeshFormat::Obj), EmptyMeshError);
    std::remove(path.c_str());
}

TEST_CASE("com falls back to surface centroid for inverted shells") {
    auto cube = fixtures::make_cube(2.0);
    std::vector<std::array<int, 3>> flipped;
    for (auto t : cube.triangles) flipped.push_back({t[0], t[2], t[1]});
    auto inverted = build_mesh(cube.vertices, flipped);
    CHECK(inverted.signed_volume < 0.0);
    CHECK_FALSE(inverted.com_from_volume);
    CHECK((inverted.com - Vec3{1, 1, 1}).norm() < 1e-9);  // centroid still the center
}

TEST_CASE("com invariant under vertex and triangle reordering") {
    auto base = fixtures::make_icosphere(25.0, 2);
    std::vector<Vec3> moved = base.vertices;  // off-origin so relative error is meaningful
    for (auto& v : moved) v += Vec3{30, -12, 7};
    auto mesh = build_mesh(moved, base.triangles);
    // deterministic permutations
    std::vector<int> vperm(mesh.vertices.size());
    for (size_t i = 0; i < vperm.size(); ++i) vperm[i] = (int)i;
    std::mt19937_64 rng(7);
    std::shuffle(vperm.begin(), vperm.end(), rng);
    std::vector<int> vinv(vperm.size());
    for (size_t i = 0; i < vperm.size(); ++i) vinv[vperm[i]] = (int)i;

    std::vector<Vec3> vertices(mesh.vertices.size());
    for (size_t i = 0; i < vperm.size(); ++i) vertices[vinv[i]] = mesh.vertices[i];
    std::vector<std::array<int, 3>> triangles;
    for (const auto& t : mesh.triangles) triangles.push_back({vinv[t[0]], vinv[t[1]], vinv[t[2]]});
    std::shuffle(triangles.begin(), triangles.end(), rng);

    auto reordered = build_mesh(vertices, triangles);
    CHECK((reordered.com - mesh.com).norm() / mesh.com.norm() < 1e-9);
    CHECK(reordered.signed_volume == doctest::Approx(mesh.signed_volume).epsilon(1e-12));
}

TEST_CASE("adjacency is symmetric") {
    for (const auto& mesh : {fixtures::make_cube(1.0), fixtures::make_icosphere(10.0, 1)}) {
        for (size_t t = 0; t < mesh.triangle_count(); ++t)
            for (int n : mesh.adjacency[t]) {
                const auto& back = mesh.adjacency[n];
                CHECK(std::find(back.begin(), back.end(), (int)t) != back.end());
            }
    }
}

TEST_CASE("ray cast axis-aligned examples") {
    auto cube = fixtures::make_cube(1.0);
    auto hit = ray_cast(cube, Ray{{0.5, 0.5, -1.0}, {0, 0, 1}});
    REQUIRE(hit.has_value());
    CHECK(hit->distance == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((hit->point - Vec3{0.5, 0.5, 0.0}).norm() < 1e-9);

    // origin on the bottom face pointing outward: nothing behind
    CHECK_FALSE(ray_cast(cube, Ray{{0.5, 0.5, 0.0}, {0, 0, -1}}).has_value());
}

TEST_CASE("1000 random rays match the plane-barycentric oracle") {
    auto cube = fixtures::make_cube(1.0);
    std::mt19937_64 rng(42);
    int hits = 0;
    for (int i = 0; i < 1000; ++i) {
        Vec3 origin{uniform01(rng) * 4 - 2, uniform01(rng) * 4 - 2, uniform01(rng) * 4 - 2};
        Vec3 target{uniform01(rng), uniform01(rng), uniform01(rng)};
        Vec3 dir = (target - origin).normalized();
        Ray ray{origin, dir};
        auto a = ray_cast(cube, ray);
        auto b = oracles::ray_cast(cube, ray);
        REQUIRE(a.has_value() == b.has_value());
        if (a) {
            ++hits;
            CHECK(a->distance == doctest::Approx(b->distance).epsilon(1e-9));
            CHECK((a->point - b->point).norm() < 1e-9);
            // tied distances across the face diagonal may pick either triangle
            if (a->triangle != b->triangle)
                CHECK(a->distance == doctest::Approx(b->distance).epsilon(1e-12));
        }
    }
    CHECK(hits > 500);  // rays aim at the cube, most should land
}

TEST_CASE("ray hits lie on the triangle plane") {
    auto sphere = fixtures::make_icosphere(10.0, 2);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        Vec3 origin{uniform01(rng) * 60 - 30, uniform01(rng) * 60 - 30, uniform01(rng) * 60 - 30};
        Vec3 dir = (Vec3{uniform01(rng) * 10 - 5, uniform01(rng) * 10 - 5, uniform01(rng) * 10 - 5} - origin)
                       .normalized();
        auto hit = ray_cast(sphere, Ray{origin, dir});
        if (!hit) continue;
        CHECK(hit->distance >= 0.0);
        auto v = sphere.triangle_vertices(hit->triangle);
        double off = std::abs((hit->point - v[0]).dot(tri_raw_normal(v[0], v[1], v[2]).normalized()));
        CHECK(off < 1e-6);
    }
}

TEST_CASE("facet-restricted ray cast only tests member triangles") {
    auto cube = fixtures::make_cube(1.0);
    // bottom face triangles are those with normal -z
    std::vector<int> bottom;
    for (size_t t = 0; t < cube.triangle_count(); ++t)
        if (cube.face_normals[t].z < -0.5) bottom.push_back((int)t);
    REQUIRE(bottom.size() == 2);
    Ray up{{0.5, 0.5, -1.0}, {0, 0, 1}};
    auto hit = ray_cast(cube, std::span<const int>(bottom), up);
    REQUIRE(hit.has_value());
    CHECK(hit->distance == doctest::Approx(1.0));
    // the same ray restricted to the top face hits it instead (distance 2)
    std::vector<int> top;
    for (size_t t = 0; t < cube.triangle_count(); ++t)
        if (cube.face_normals[t].z > 0.5) top.push_back((int)t);
    auto hit_top = ray_cast(cube, std::span<const int>(top), up);
    REQUIRE(hit_top.has_value());
    CHECK(hit_top->distance == doctest::Approx(2.0));
}

TEST_CASE("save_obj round trip preserves geometry") {
    auto mesh = fixtures::make_icosphere(5.0, 1);
    auto path = temp_path("roundtrip.obj");
    save_obj(path, mesh);
    auto back = load_mesh(path);
    CHECK(back.triangle_count() == mesh.triangle_count());
    CHECK(back.vertices.size() == mesh.vertices.size());
    CHECK((back.com - mesh.com).norm() < 1e-9);
    std::remove(path.c_str());
}

TEST_SUITE_END();
