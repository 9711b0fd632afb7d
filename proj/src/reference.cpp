#include "slicecf/reference.hpp"

#include <cmath>
#include <stdexcept>

#include "slicecf/allocation.hpp"

namespace slicecf {

namespace {

std::vector<double> slice_sums(std::span<const Candidate> ues, const std::vector<double>& b) {
    std::vector<double> sums(kNumSlices, 0.0);
    for (std::size_t i = 0; i < ues.size(); ++i) sums[slice_index(ues[i].slice)] += b[i];
    return sums;
}

}  // namespace

OracleResult lp_optimum(std::span<const Candidate> ues, double total_bandwidth) {
    OracleResult out;
    out.method = "lp_closed_form";
    out.bandwidth.resize(ues.size());
    double floor = 0.0;
    for (std::size_t i = 0; i < ues.size(); ++i) {
        if (!std::isfinite(ues[i].b_min)) throw InfeasibleError("lp_optimum: infinite minimum bandwidth");
        out.bandwidth[i] = ues[i].b_min;
        floor += ues[i].b_min;
    }
    if (floor > total_bandwidth + kBandwidthTolerance)
        throw InfeasibleError("lp_optimum: minimum demand exceeds total bandwidth");
    if (!ues.empty()) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < ues.size(); ++i)
            if (efficiency(ues[i]) > efficiency(ues[best])) best = i;
        out.bandwidth[best] += std::max(0.0, total_bandwidth - floor);
    }
    out.objective = weighted_objective(out.bandwidth, ues);
    out.slice_budgets = slice_sums(ues, out.bandwidth);
    return out;
}

BruteForceAdmission brute_force_admission(std::span<const Candidate> ues, double total_bandwidth,
                                          double embb_floor) {
    if (ues.size() > kBruteForceMaxUes) throw std::invalid_argument("brute_force_admission: more than 15 UEs");
    const double urllc_cap = total_bandwidth - embb_floor;
    const std::size_t n = ues.size();

    std::vector<std::size_t> urllc, embb;
    for (std::size_t k = 0; k < n; ++k) {
        if (!std::isfinite(ues[k].b_min)) continue;
        (ues[k].slice == Slice::urllc ? urllc : embb).push_back(k);
    }

    BruteForceAdmission best;
    bool found = false;
    const std::uint32_t urllc_masks = 1u << urllc.size();
    const std::uint32_t embb_masks = 1u << embb.size();
    for (std::uint32_t um = 0; um < urllc_masks; ++um) {
        double used = 0.0;
        double gain = 0.0;
        for (std::size_t i = 0; i < urllc.size(); ++i) {
            if (um >> i & 1u) {
                used += ues[urllc[i]].b_min;
                gain += efficiency(ues[urllc[i]]);
            }
        }
        if (used > urllc_cap) continue;
        // Priority: no feasible URLLC UE may be left out if it still fits.
        bool maximal = true;
        for (std::size_t i = 0; i < urllc.size() && maximal; ++i)
            if (!(um >> i & 1u) && used + ues[urllc[i]].b_min <= urllc_cap) maximal = false;
        if (!maximal) continue;

        for (std::uint32_t em = 0; em < embb_masks; ++em) {
            double total = used;
            double g = gain;
            for (std::size_t i = 0; i < embb.size(); ++i) {
                if (em >> i & 1u) {
                    total += ues[embb[i]].b_min;
                    g += efficiency(ues[embb[i]]);
                }
            }
            if (total > total_bandwidth) continue;
            if (!found || g > best.total_efficiency) {
                found = true;
                best.total_efficiency = g;
                best.admitted_urllc.clear();
                best.admitted_embb.clear();
                for (std::size_t i = 0; i < urllc.size(); ++i)
                    if (um >> i & 1u) best.admitted_urllc.push_back(urllc[i]);
                for (std::size_t i = 0; i < embb.size(); ++i)
                    if (em >> i & 1u) best.admitted_embb.push_back(embb[i]);
            }
        }
    }
    return best;
}

double mu_analytic(std::span<const Candidate> ues, double budget) {
    double floor = 0.0;
    for (const auto& u : ues) floor += u.b_min;
    if (budget < floor - kBandwidthTolerance) throw InfeasibleError("mu_analytic: budget below minimum demand");
    if (ues.empty()) return 0.0;
    double num = 0.0;
    double den = 0.0;
    for (const auto& u : ues) {
        const double v = efficiency(u);
        num += v * v * v;
        den += v * v;
    }
    if (den == 0.0) {
        // Equal split of the surplus when every phi vanishes.
        double mean = 0.0;
        for (const auto& u : ues) mean += efficiency(u);
        return mean / static_cast<double>(ues.size());
    }
    return num / den;
}

OracleResult round_robin(std::span<const Candidate> ues, double total_bandwidth) {
    if (ues.empty()) throw std::invalid_argument("round_robin: no UEs");
    OracleResult out;
    out.method = "round_robin";
    out.bandwidth.assign(ues.size(), total_bandwidth / static_cast<double>(ues.size()));
    out.objective = weighted_objective(out.bandwidth, ues);
    out.slice_budgets = slice_sums(ues, out.bandwidth);
    return out;
}

}  // namespace slicecf
