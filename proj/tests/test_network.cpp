#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "slicecf/network.hpp"

using namespace slicecf;

namespace {

// Independent brute force: all 9 lattice images, written out longhand.
double wrap_oracle(Point a, Point b, double side) {
    double best = 1e300;
    const double offsets[3] = {-side, 0.0, side};
    for (double ox : offsets)
        for (double oy : offsets)
            best = std::min(best, std::hypot(a.x() - (b.x() + ox), a.y() - (b.y() + oy)));
    return best;
}

}  // namespace

TEST_CASE("deployment slice counts and determinism") {
    SimConfig cfg;
    cfg.num_ues = 10;
    const auto dep = generate_deployment(cfg, 42);
    int urllc = 0;
    for (Slice s : dep.ue_slice) urllc += s == Slice::urllc;
    CHECK(urllc == 3);
    CHECK(dep.ue_slice.size() - urllc == 7);

    const auto again = generate_deployment(cfg, 42);
    for (std::size_t k = 0; k < dep.num_ues(); ++k) {
        CHECK(dep.ue_positions[k] == again.ue_positions[k]);
        CHECK(dep.ue_slice[k] == again.ue_slice[k]);
    }
    for (std::size_t m = 0; m < dep.ap_positions.size(); ++m) CHECK(dep.ap_positions[m] == again.ap_positions[m]);

    const auto other = generate_deployment(cfg, 43);
    CHECK(other.ue_positions[0] != dep.ue_positions[0]);
}

TEST_CASE("deployment coordinates stay inside the square") {
    SimConfig cfg;
    cfg.num_ues = 100;
    const auto dep = generate_deployment(cfg, 7);
    REQUIRE(dep.ue_positions.size() == 100);
    REQUIRE(dep.ap_positions.size() == 100);
    for (const auto* set : {&dep.ue_positions, &dep.ap_positions})
        for (const auto& p : *set) {
            CHECK(p.x() >= 0.0);
            CHECK(p.x() <= 1000.0);
            CHECK(p.y() >= 0.0);
            CHECK(p.y() <= 1000.0);
        }
}

TEST_CASE("wrap distance") {
    CHECK(wrap_distance({0, 0}, {999, 0}, 1000) == doctest::Approx(1.0));
    CHECK(wrap_distance({3, 4}, {3, 4}, 1000) == 0.0);
    CHECK(wrap_distance({0, 0}, {500, 500}, 1000) == doctest::Approx(707.1068).epsilon(1e-7));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1000.0);
    for (int i = 0; i < 200; ++i) {
        const Point a(u(rng), u(rng));
        const Point b(u(rng), u(rng));
        const double d = wrap_distance(a, b, 1000);
        CHECK(d == doctest::Approx(wrap_oracle(a, b, 1000)));
        CHECK(d <= 1000 / std::sqrt(2.0) + 1e-9);
        // Lattice translation of both points leaves the distance unchanged.
        const Point shift(u(rng), u(rng));
        auto wrap = [](Point p) { return Point(std::fmod(p.x(), 1000.0), std::fmod(p.y(), 1000.0)); };
        CHECK(wrap_distance(wrap(a + shift), wrap(b + shift), 1000) == doctest::Approx(d).epsilon(1e-9));
    }
}

TEST_CASE("three-slope path loss") {
    SimConfig cfg;
    CHECK(cost_hata_constant(cfg) == doctest::Approx(140.715083703908).epsilon(1e-12));
    CHECK(path_loss_db(1000, cfg) == doctest::Approx(-140.72).epsilon(1e-4));
    CHECK(path_loss_db(5, cfg) == doctest::Approx(-81.19963376894869).epsilon(1e-12));
    // Flat inside d0, clamp below 1 m.
    CHECK(path_loss_db(0.0, cfg) == path_loss_db(5.0, cfg));
    // Continuous at both breakpoints.
    CHECK(path_loss_db(10.0, cfg) == doctest::Approx(path_loss_db(10.0 + 1e-9, cfg)));
    CHECK(path_loss_db(50.0, cfg) == doctest::Approx(path_loss_db(50.0 + 1e-9, cfg)));
    double prev = path_loss_db(0.5, cfg);
    for (double d = 1.0; d < 1500.0; d *= 1.07) {
        const double pl = path_loss_db(d, cfg);
        CHECK(pl <= prev);
        prev = pl;
    }
}

TEST_CASE("large-scale coefficient") {
    SimConfig cfg;
    CHECK(large_scale_coeff(1000, 0.0, cfg) == doctest::Approx(std::pow(10.0, -14.0715083703908)).epsilon(1e-10));
    const double ratio = large_scale_coeff(300, 1.0, cfg) / large_scale_coeff(300, -1.0, cfg);
    CHECK(ratio == doctest::Approx(std::pow(10.0, 2 * 8.0 / 10.0)));
    // No shadowing inside d1.
    CHECK(large_scale_coeff(30, 2.0, cfg) == large_scale_coeff(30, 0.0, cfg));
    cfg.shadow_std_db = 0.0;
    CHECK(large_scale_coeff(300, 1.7, cfg) == std::pow(10.0, path_loss_db(300, cfg) / 10.0));
}

TEST_CASE("pilot assignment") {
    const auto single = assign_pilots(1, 10, 3);
    REQUIRE(single.size() == 1);
    CHECK(single[0] >= 0);
    CHECK(single[0] < 10);

    const auto pilots = assign_pilots(100, 10, 5);
    std::set<int> distinct(pilots.begin(), pilots.end());
    CHECK(distinct.size() < pilots.size());
    for (int p : pilots) CHECK((p >= 0 && p < 10));
    CHECK(assign_pilots(100, 10, 5) == pilots);
}

TEST_CASE("association by cumulative LSFC prefix") {
    Eigen::MatrixXd beta(3, 3);
    beta << 0.9, 0.05, 0.05,  //
        0.5, 0.3, 0.2,        //
        0.2, 0.5, 0.3;
    auto all = associate(beta, 1.0);
    for (const auto& v : all) CHECK(v.size() == 3);

    Eigen::MatrixXd one(1, 3);
    one << 0.9, 0.05, 0.05;
    CHECK(associate(one, 0.9)[0] == std::vector<int>{0});
    auto v = associate(beta, 0.95);
    CHECK(v[1] == std::vector<int>{0, 1, 2});
    CHECK(v[2] == std::vector<int>{1, 2, 0});

    // Monotone in the fraction.
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(1e-3, 1.0);
    Eigen::MatrixXd rnd(20, 30);
    for (Eigen::Index i = 0; i < rnd.size(); ++i) rnd.data()[i] = u(rng);
    std::vector<std::vector<int>> prev = associate(rnd, 0.05);
    for (double f : {0.2, 0.5, 0.8, 0.95, 1.0}) {
        auto cur = associate(rnd, f);
        for (std::size_t k = 0; k < cur.size(); ++k) {
            CHECK(!cur[k].empty());
            CHECK(cur[k].size() >= prev[k].size());
        }
        prev = std::move(cur);
    }
}

TEST_CASE("power control") {
    Eigen::MatrixXd beta(3, 2);
    beta << 1.0, 1.0,  //
        2.0, 2.0,      //
        4.0, 4.0;
    const std::vector<std::vector<int>> serving{{0, 1}, {0, 1}, {0, 1}};
    const auto pc = power_control(beta, serving);
    CHECK(pc.eta_p.isOnes());
    CHECK(pc.eta_d[0] == 1.0);  // below median, capped
    CHECK(pc.eta_d[1] == 1.0);  // at median
    CHECK(pc.eta_d[2] == doctest::Approx(0.5));

    Eigen::MatrixXd same = Eigen::MatrixXd::Constant(4, 3, 0.3);
    const auto pc2 = power_control(same, {{0}, {0}, {0}, {0}});
    CHECK(pc2.eta_d.isOnes());
}

TEST_CASE("channel state over a full drop") {
    SimConfig cfg;
    cfg.num_ues = 40;
    const auto dep = generate_deployment(cfg, 21);
    const auto state = build_channel(dep, cfg, 21);
    CHECK(state.beta.rows() == 40);
    CHECK(state.beta.cols() == 100);
    CHECK((state.beta.array() > 0.0).all());
    CHECK(state.beta.allFinite());
    CHECK((state.eta_d.array() > 0.0).all());
    CHECK((state.eta_d.array() <= 1.0).all());
    for (const auto& v : state.serving) CHECK(!v.empty());
    const auto again = build_channel(dep, cfg, 21);
    CHECK(again.beta == state.beta);
    CHECK(again.pilot_index == state.pilot_index);
}

TEST_CASE("UE profiles follow the traffic model") {
    SimConfig cfg;
    cfg.num_ues = 200;
    const auto dep = generate_deployment(cfg, 4);
    const auto profiles = generate_profiles(dep, 4);
    int premium = 0, embb = 0;
    for (const auto& p : profiles) {
        CHECK(p.weight > 0.0);
        if (p.slice == Slice::urllc) {
            CHECK(p.packet_bytes >= 32);
            CHECK(p.packet_bytes <= 64);
            CHECK(p.packet_bits == 8.0 * p.packet_bytes);
            CHECK(p.arrival_rate >= 5.0);
            CHECK(p.arrival_rate <= 25.0);
            CHECK(p.delay_budget >= 1e-3);
            CHECK(p.delay_budget <= 5e-3);
            CHECK(p.error_prob == 1e-5);
            CHECK(p.weight >= 2.0);
            CHECK(p.weight <= 4.0);
        } else {
            ++embb;
            premium += p.premium;
            if (p.premium) {
                CHECK(p.weight == 1.5);
                CHECK(p.min_rate >= 5e6);
                CHECK(p.min_rate <= 10e6);
            } else {
                CHECK(p.weight == 1.0);
                CHECK(p.min_rate >= 1e6);
                CHECK(p.min_rate <= 3e6);
            }
        }
    }
    CHECK(embb == 140);
    CHECK(premium == 42);
}
