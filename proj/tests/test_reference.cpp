#include <doctest.h>

#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "slicecf/admission.hpp"
#include "slicecf/allocation.hpp"
#include "slicecf/reference.hpp"

using namespace slicecf;

namespace {

Candidate ue(Slice s, double v, double b_min) { return {s, 1.0, v, b_min}; }

// Exhaustive search over surplus placements on a fixed lattice.
double grid_best(const std::vector<Candidate>& ues, double total, double step) {
    double floor = 0.0, base = 0.0;
    for (const auto& u : ues) {
        floor += u.b_min;
        base += efficiency(u) * u.b_min;
    }
    const int units = static_cast<int>(std::floor((total - floor) / step + 1e-9));
    double best = -1.0;
    std::function<void(std::size_t, int, double)> rec = [&](std::size_t i, int left, double acc) {
        if (i + 1 == ues.size()) {
            best = std::max(best, acc + efficiency(ues[i]) * left * step);
            return;
        }
        for (int q = 0; q <= left; ++q) rec(i + 1, left - q, acc + efficiency(ues[i]) * q * step);
    };
    rec(0, units, 0.0);
    return base + best;
}

}  // namespace

TEST_CASE("LP optimum closed form") {
    const std::vector<Candidate> ues{ue(Slice::urllc, 2.0, 1e6), ue(Slice::embb, 1.0, 1e6)};
    const auto r = lp_optimum(ues, 4e6);
    CHECK(r.bandwidth[0] == doctest::Approx(3e6));
    CHECK(r.bandwidth[1] == doctest::Approx(1e6));
    CHECK(r.objective == doctest::Approx(7e6));
    CHECK(r.slice_budgets[slice_index(Slice::urllc)] == doctest::Approx(3e6));

    const auto tight = lp_optimum(ues, 2e6);
    CHECK(tight.bandwidth[0] == 1e6);
    CHECK(tight.bandwidth[1] == 1e6);

    CHECK_THROWS_AS(lp_optimum(ues, 1.5e6), InfeasibleError);
    CHECK(lp_optimum({}, 5e6).objective == 0.0);
}

TEST_CASE("LP optimum matches a 0.01 MHz grid search") {
    std::mt19937_64 rng(101);
    const double step = 0.01e6;
    for (int t = 0; t < 10; ++t) {
        const int n = 2 + t % 5;
        std::uniform_real_distribution<double> v(0.2, 10.0), b(0.05e6, 2e6), surplus(0.02e6, 0.25e6);
        std::vector<Candidate> ues;
        double floor = 0.0;
        for (int i = 0; i < n; ++i) {
            ues.push_back(ue(i % 2 ? Slice::embb : Slice::urllc, v(rng), b(rng)));
            floor += ues.back().b_min;
        }
        const double total = floor + surplus(rng);
        double v_max = 0.0;
        for (const auto& u : ues) v_max = std::max(v_max, efficiency(u));
        const double lp = lp_optimum(ues, total).objective;
        const double grid = grid_best(ues, total, step);
        CHECK(lp >= grid * (1 - 1e-12));
        CHECK(lp - grid <= v_max * step * (1 + 1e-9));
    }
}

TEST_CASE("LP dominates the heuristic and QA") {
    std::mt19937_64 rng(55);
    for (int t = 0; t < 50; ++t) {
        std::vector<Candidate> ues;
        std::uniform_real_distribution<double> v(0.2, 10.0), b(0.05e6, 2e6);
        double floor = 0.0;
        for (int i = 0; i < 12; ++i) {
            ues.push_back(ue(i % 3 ? Slice::embb : Slice::urllc, v(rng), b(rng)));
            floor += ues.back().b_min;
        }
        const double total = 1.5 * floor;
        CHECK(lp_optimum(ues, total).objective >= weighted_objective(qa_allocate(total, ues), ues));
    }
}

TEST_CASE("brute-force admission basics") {
    SUBCASE("everyone fits") {
        const std::vector<Candidate> ues{ue(Slice::urllc, 3, 1), ue(Slice::embb, 1, 2), ue(Slice::embb, 2, 2)};
        const auto r = brute_force_admission(ues, 10, 2);
        CHECK(r.admitted_urllc.size() == 1);
        CHECK(r.admitted_embb.size() == 2);
        CHECK(r.total_efficiency == doctest::Approx(6.0));
    }
    SUBCASE("URLLC UE above its cap") {
        const std::vector<Candidate> ues{ue(Slice::urllc, 3, 9), ue(Slice::embb, 1, 2)};
        const auto r = brute_force_admission(ues, 10, 2);
        CHECK(r.admitted_urllc.empty());
        CHECK(r.admitted_embb.size() == 1);
    }
    SUBCASE("priority: maximal URLLC set even when eMBB would score more") {
        const std::vector<Candidate> ues{ue(Slice::urllc, 0.1, 4), ue(Slice::embb, 10, 7)};
        const auto r = brute_force_admission(ues, 10, 2);
        CHECK(r.admitted_urllc == std::vector<std::size_t>{0});
        CHECK(r.admitted_embb.empty());
    }
    SUBCASE("too many UEs") {
        std::vector<Candidate> many(16, ue(Slice::embb, 1, 1));
        CHECK_THROWS_AS(brute_force_admission(many, 10, 2), std::invalid_argument);
    }
}

TEST_CASE("greedy admission against the exhaustive oracle") {
    std::mt19937_64 rng(404);
    double ratio_sum = 0.0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        const int n = 1 + t % 12;
        std::uniform_real_distribution<double> v(0.2, 8.0), b(0.1, 5.0);
        std::vector<Candidate> ues;
        double demand = 0.0;
        for (int i = 0; i < n; ++i) {
            ues.push_back({i % 3 == 0 ? Slice::urllc : Slice::embb, i % 3 == 0 ? 3.0 : 1.0, v(rng), b(rng)});
            demand += ues.back().b_min;
        }
        const double total = std::max(1.0, demand * std::uniform_real_distribution<double>(0.3, 1.1)(rng));
        const AdmissionInput in{ues, total, 0.2 * total};
        const auto greedy = admit(in);
        double g = 0.0;
        for (std::size_t k = 0; k < ues.size(); ++k)
            if (greedy.alpha[k]) g += efficiency(ues[k]);
        const auto oracle = brute_force_admission(ues, total, 0.2 * total);
        CHECK(g <= oracle.total_efficiency * (1 + 1e-12) + 1e-12);
        ratio_sum += oracle.total_efficiency > 0 ? g / oracle.total_efficiency : 1.0;
    }
    MESSAGE("mean greedy/oracle ratio: " << ratio_sum / trials);
    CHECK(ratio_sum / trials >= 0.8);
}

TEST_CASE("analytic marginal utility") {
    CHECK(mu_analytic(std::vector<Candidate>{ue(Slice::urllc, 2.7, 1e5)}, 1e6) == doctest::Approx(2.7));
    CHECK(mu_analytic(std::vector<Candidate>{ue(Slice::embb, 4.0, 1e5), ue(Slice::embb, 4.0, 3e5)}, 1e6) ==
          doctest::Approx(4.0));
    CHECK_THROWS_AS(mu_analytic(std::vector<Candidate>{ue(Slice::embb, 1.0, 2e6)}, 1e6), InfeasibleError);
}

TEST_CASE("round-robin baseline") {
    std::vector<Candidate> hundred(100, ue(Slice::embb, 1.0, 1e6));
    const auto r = round_robin(hundred, 80e6);
    for (double b : r.bandwidth) CHECK(b == doctest::Approx(0.8e6));
    CHECK(std::accumulate(r.bandwidth.begin(), r.bandwidth.end(), 0.0) == doctest::Approx(80e6));

    const std::vector<Candidate> one{ue(Slice::urllc, 2.0, 1e9)};
    CHECK(round_robin(one, 80e6).bandwidth[0] == 80e6);
    CHECK_THROWS_AS(round_robin({}, 80e6), std::invalid_argument);
}
