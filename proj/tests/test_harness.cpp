#include <doctest.h>

#include <cmath>

#include "slicecf/harness.hpp"

using namespace slicecf;

namespace {

// Everything except wall-clock fields.
void check_same(const DropMetrics& a, const DropMetrics& b) {
    CHECK(a.seed == b.seed);
    CHECK(a.termination == b.termination);
    for (Scheme s : kSchemes) {
        CHECK(a[s].weighted_sum_rate == b[s].weighted_sum_rate);
        CHECK(a[s].embb_success_rate == b[s].embb_success_rate);
        CHECK(a[s].urllc_success_rate == b[s].urllc_success_rate);
        CHECK(a[s].admitted_urllc == b[s].admitted_urllc);
        CHECK(a[s].admitted_embb == b[s].admitted_embb);
        CHECK(a[s].iterations == b[s].iterations);
    }
}

}  // namespace

TEST_CASE("single eMBB UE is admitted and served") {
    SimConfig cfg;
    cfg.num_ues = 1;
    cfg.slice_mix = {1.0, 0.0};
    const auto d = run_drop(cfg, 3);
    CHECK(d[Scheme::proposed].admitted_embb == 1);
    CHECK(d[Scheme::proposed].embb_success_rate == 1.0);
    CHECK(d[Scheme::baseline].embb_success_rate == 1.0);
    CHECK(d.invariants.total() == 0);
}

TEST_CASE("drops are deterministic and respect oracle dominance") {
    SimConfig cfg;
    cfg.num_ues = 60;
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        const auto a = run_drop(cfg, seed);
        check_same(a, run_drop(cfg, seed));
        CHECK(a[Scheme::proposed].weighted_sum_rate <= a[Scheme::oracle].weighted_sum_rate * (1 + 1e-12));
        CHECK(a.invariants.total() == 0);
        for (Scheme s : kSchemes) {
            CHECK((a[s].embb_success_rate >= 0.0 && a[s].embb_success_rate <= 1.0));
            CHECK((a[s].urllc_success_rate >= 0.0 && a[s].urllc_success_rate <= 1.0));
        }
        // Proposed and oracle share the admitted set, hence the success rates.
        CHECK(a[Scheme::proposed].embb_success_rate == a[Scheme::oracle].embb_success_rate);
        CHECK(a[Scheme::proposed].urllc_success_rate == a[Scheme::oracle].urllc_success_rate);
        CHECK(a[Scheme::baseline].admitted_urllc + a[Scheme::baseline].admitted_embb == 60);
    }
}

TEST_CASE("proposed allocation of a drop terminates within T_max") {
    SimConfig cfg;
    const auto r = proposed_allocation(cfg, 9);
    CHECK(r.iterations_run <= cfg.t_max);
    CHECK(r.objective >= r.initial_objective);
}

TEST_CASE("campaign shape and seeding") {
    SimConfig cfg;
    SUBCASE("one drop equals the drop itself") {
        const auto c = run_campaign(cfg, SweepKind::single, {}, 1, 11, 1);
        REQUIRE(c.points.size() == 1);
        const auto d = run_drop(cfg, 11);
        for (Scheme s : kSchemes) {
            CHECK(c.points[0][s].weighted_sum_rate.mean == d[s].weighted_sum_rate);
            CHECK(c.points[0][s].weighted_sum_rate.std_error == 0.0);
            CHECK(c.points[0][s].urllc_success_rate.mean == d[s].urllc_success_rate);
        }
    }
    SUBCASE("different master seeds give different drops") {
        const auto a = run_campaign(cfg, SweepKind::single, {}, 2, 100, 1);
        const auto b = run_campaign(cfg, SweepKind::single, {}, 2, 200, 1);
        CHECK(a.points[0].seeds == std::vector<std::uint64_t>{100, 101});
        CHECK(a.points[0].drop_metrics[0][Scheme::proposed].weighted_sum_rate !=
              b.points[0].drop_metrics[0][Scheme::proposed].weighted_sum_rate);
    }
    SUBCASE("K sweep") {
        const auto c = run_campaign(cfg, SweepKind::num_ues, {25, 50, 75, 100}, 50, 1);
        REQUIRE(c.points.size() == 4);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(c.points[i].num_ues == 25 * static_cast<int>(i + 1));
            CHECK(c.points[i].drops == 50);
            CHECK(c.points[i].drop_metrics.size() == 50);
        }
    }
    SUBCASE("mix sweep") {
        const auto c = run_campaign(cfg, SweepKind::mix, {0.3, 0.7}, 2, 1);
        CHECK(c.points[1].urllc_fraction == 0.7);
        CHECK(c.points[1].drop_metrics[0].urllc_fraction == 0.7);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(run_campaign(cfg, SweepKind::single, {}, 0, 1), ConfigError);
        CHECK_THROWS_AS(run_campaign(cfg, SweepKind::num_ues, {}, 1, 1), ConfigError);
        CHECK_THROWS_AS(run_campaign(cfg, SweepKind::num_ues, {2.5}, 1, 1), ConfigError);
        CHECK_THROWS_AS(run_campaign(cfg, SweepKind::mix, {1.5}, 1, 1), ConfigError);
    }
}

TEST_CASE("worker count does not change results") {
    SimConfig cfg;
    cfg.num_ues = 40;
    const auto serial = run_campaign(cfg, SweepKind::single, {}, 6, 77, 1);
    const auto parallel = run_campaign(cfg, SweepKind::single, {}, 6, 77, 3);
    for (std::size_t i = 0; i < 6; ++i)
        check_same(serial.points[0].drop_metrics[i], parallel.points[0].drop_metrics[i]);
    CHECK(serial.points[0][Scheme::proposed].weighted_sum_rate.mean ==
          parallel.points[0][Scheme::proposed].weighted_sum_rate.mean);
    CHECK(worker_count(4, 2) == 2);
    CHECK(worker_count(1, 10) == 1);
}
