#include <catch2/catch_amalgamated.hpp>

#include "steenrod/verify.hpp"

using namespace steenrod;

// Reduced-sample runs of the seeded suites; the acceptance binary runs them
// at full scale.

TEST_CASE("action table reproduces all 36 cells") {
    auto res = run_action_table();
    for (const auto& item : res.items) {
        INFO(item.name << ": " << item.detail);
        CHECK(item.pass);
    }
}

TEST_CASE("property suites pass on a reduced sample count") {
    PropertyConfig cfg;
    cfg.seed = 42;
    cfg.samples = 60;
    auto res = run_property_suites(cfg);
    for (const auto& item : res.items) {
        INFO(item.name << ": " << item.detail);
        CHECK(item.pass);
    }
}

TEST_CASE("property suites are deterministic for a fixed seed") {
    PropertyConfig cfg;
    cfg.seed = 7;
    cfg.samples = 15;
    auto a = run_property_suites(cfg);
    auto b = run_property_suites(cfg);
    REQUIRE(a.items.size() == b.items.size());
    for (std::size_t i = 0; i < a.items.size(); ++i) {
        CHECK(a.items[i].name == b.items[i].name);
        CHECK(a.items[i].pass == b.items[i].pass);
        CHECK(a.items[i].detail == b.items[i].detail);
    }
}

TEST_CASE("lemma-b run emits a verifiable certificate") {
    auto run = run_lemma_b();
    for (const auto& item : run.suite.items) {
        INFO(item.name << ": " << item.detail);
        CHECK(item.pass);
    }
    REQUIRE(run.certificates.size() == 1);
    CHECK(verify_certificate(run.certificates[0]).ok);
}

TEST_CASE("st3-hit runs for n = 1 and the rank-4 spot check") {
    auto r1 = run_st3_hit(1);
    for (const auto& item : r1.suite.items) {
        INFO(item.name);
        CHECK(item.pass);
    }
    auto r4 = run_st3_hit(1, 4);
    for (const auto& item : r4.suite.items) {
        INFO(item.name);
        CHECK(item.pass);
    }
}

TEST_CASE("theorem-main at a small degree bound") {
    TheoremMainConfig cfg;
    cfg.n = 1;
    cfg.d_max = 18;
    cfg.jobs = 2;
    auto run = run_theorem_main(cfg);
    for (const auto& item : run.suite.items) {
        INFO(item.name << ": " << item.detail);
        CHECK(item.pass);
    }
    cfg.refined = true;
    auto refined = run_theorem_main(cfg);
    for (const auto& item : refined.suite.items) {
        INFO(item.name << ": " << item.detail);
        CHECK(item.pass);
    }
}

TEST_CASE("margolis acceptance rows") {
    auto res = run_margolis_acceptance();
    for (const auto& item : res.items) {
        INFO(item.name);
        CHECK(item.pass);
    }
}

TEST_CASE("margolis command tabulates known closed forms") {
    auto pbar = run_margolis_cmd("Pbar(2)", 0, 12);
    for (const auto& item : pbar.items) CHECK(item.pass);
    auto d3 = run_margolis_cmd("D3", 0, 16);
    for (const auto& item : d3.items) CHECK(item.pass);
    auto p2 = run_margolis_cmd("P(2)", 1, 10);
    for (const auto& item : p2.items) CHECK(item.pass);
}
