#include "slicecf/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

namespace slicecf {

AllocationParams AllocationParams::from_config(const SimConfig& cfg) {
    return {cfg.t_max, cfg.t_patience, cfg.eps_transfer, cfg.delta_b, cfg.mu_ratio, cfg.shrink_on_reject};
}

void AllocationParams::validate() const {
    if (t_max < 0 || t_patience < 1) throw ConfigError("allocation: t_max >= 0 and t_patience >= 1 required");
    if (!(eps_transfer > 0.0 && delta_b > 0.0)) throw ConfigError("allocation: eps_transfer, delta_b must be > 0");
    if (!(mu_ratio > 1.0)) throw ConfigError("allocation: mu_ratio must be > 1");
}

std::string_view termination_name(Termination t) {
    switch (t) {
        case Termination::mu_balanced: return "mu_balanced";
        case Termination::transfer_floor: return "transfer_floor";
        case Termination::patience: return "patience";
        case Termination::max_iter: return "max_iter";
    }
    return "unknown";
}

std::vector<double> qa_allocate(double budget, std::span<const Candidate> ues) {
    std::vector<double> b(ues.size());
    if (ues.empty()) return b;
    double floor = 0.0;
    double phi_sum = 0.0;
    std::size_t top = 0;
    for (std::size_t i = 0; i < ues.size(); ++i) {
        if (!std::isfinite(ues[i].b_min)) throw InfeasibleError("qa_allocate: infinite minimum bandwidth");
        floor += ues[i].b_min;
        const double phi = efficiency(ues[i]) * efficiency(ues[i]);
        phi_sum += phi;
        if (phi > efficiency(ues[top]) * efficiency(ues[top])) top = i;
    }
    if (budget < floor - kBandwidthTolerance)
        throw InfeasibleError("qa_allocate: budget " + std::to_string(budget) + " Hz below minimum demand " +
                              std::to_string(floor) + " Hz");
    const double surplus = std::max(0.0, budget - floor);
    double assigned = 0.0;
    for (std::size_t i = 0; i < ues.size(); ++i) {
        const double share = phi_sum > 0.0 ? efficiency(ues[i]) * efficiency(ues[i]) / phi_sum
                                            : 1.0 / static_cast<double>(ues.size());
        b[i] = ues[i].b_min + surplus * share;
        assigned += b[i];
    }
    b[top] += budget - assigned;
    return b;
}

double weighted_objective(std::span<const double> bandwidth, std::span<const Candidate> ues) {
    double f = 0.0;
    for (std::size_t i = 0; i < ues.size(); ++i) f += ues[i].weight * bandwidth[i] * ues[i].se;
    return f;
}

double marginal_utility(std::span<const SliceState> slices, std::size_t s, double delta_b) {
    const SliceState& slice = slices[s];
    const auto base = qa_allocate(slice.budget, slice.ues);
    const auto bumped = qa_allocate(slice.budget + delta_b, slice.ues);
    // Other slices are unchanged, so the global difference reduces to slice s;
    // differencing per UE avoids cancelling two large sums.
    double gain = 0.0;
    for (std::size_t i = 0; i < slice.ues.size(); ++i)
        gain += slice.ues[i].weight * slice.ues[i].se * (bumped[i] - base[i]);
    return gain / delta_b;
}

namespace {

struct Snapshot {
    std::vector<double> budgets;
    std::vector<std::vector<double>> per_ue;
    double objective = 0.0;
};

Snapshot evaluate(const std::vector<SliceState>& slices, std::uint64_t& visits) {
    Snapshot snap;
    for (const auto& s : slices) {
        snap.budgets.push_back(s.budget);
        snap.per_ue.push_back(qa_allocate(s.budget, s.ues));
        snap.objective += weighted_objective(snap.per_ue.back(), s.ues);
        visits += 2 * s.ues.size();
    }
    return snap;
}

}  // namespace

AllocationResult allocate_slices(std::vector<SliceState> slices, double total_bandwidth,
                                 const AllocationParams& params) {
    params.validate();
    const std::size_t num_slices = slices.size();
    double floor_sum = 0.0;
    std::size_t admitted = 0;
    for (auto& s : slices) {
        s.floor = 0.0;
        for (const auto& u : s.ues) s.floor += u.b_min;
        floor_sum += s.floor;
        admitted += s.ues.size();
    }
    if (floor_sum > total_bandwidth + kBandwidthTolerance)
        throw InfeasibleError("allocate: admitted minimum demand exceeds total bandwidth");

    // Slices without admitted UEs hold no bandwidth and never trade.
    std::vector<std::size_t> active;
    for (std::size_t s = 0; s < num_slices; ++s)
        if (!slices[s].ues.empty()) active.push_back(s);

    const double surplus = std::max(0.0, total_bandwidth - floor_sum);
    for (auto& s : slices) {
        s.budget = s.ues.empty() ? 0.0
                                 : s.floor + surplus * static_cast<double>(s.ues.size()) / static_cast<double>(admitted);
    }
    if (!active.empty()) {
        // Repair the split so the budgets sum to B.
        double sum = 0.0;
        for (std::size_t s : active) sum += slices[s].budget;
        slices[active.back()].budget += total_bandwidth - sum;
    }

    AllocationResult result;
    Snapshot current = evaluate(slices, result.ue_visits);
    Snapshot best = current;
    result.initial_objective = current.objective;

    int t = 0;
    int no_improvement = 0;
    double shrink = 1.0;
    Termination reason = Termination::max_iter;
    if (active.empty()) reason = Termination::mu_balanced;

    while (!active.empty() && t < params.t_max) {
        ++t;
        IterationRecord rec;
        rec.iteration = t;
        rec.mu.assign(num_slices, 0.0);
        for (std::size_t s : active) {
            rec.mu[s] = marginal_utility(slices, s, params.delta_b);
            result.ue_visits += 2 * slices[s].ues.size();
        }
        std::size_t donor = active.front();
        std::size_t receiver = active.front();
        // Strict comparisons keep the lowest slice index on ties.
        for (std::size_t s : active) {
            if (rec.mu[s] < rec.mu[donor]) donor = s;
            if (rec.mu[s] > rec.mu[receiver]) receiver = s;
        }
        rec.donor = static_cast<int>(donor);
        rec.receiver = static_cast<int>(receiver);
        rec.objective = current.objective;

        if (rec.mu[receiver] <= params.mu_ratio * rec.mu[donor]) {
            result.trace.push_back(std::move(rec));
            reason = Termination::mu_balanced;
            break;
        }
        const double mean_share = slices[donor].budget / static_cast<double>(slices[donor].ues.size());
        const double delta = shrink * std::min(mean_share, slices[donor].budget - slices[donor].floor);
        rec.delta_b = delta;
        if (delta < params.eps_transfer) {
            result.trace.push_back(std::move(rec));
            reason = Termination::transfer_floor;
            break;
        }

        std::vector<SliceState> candidate = slices;
        candidate[donor].budget -= delta;
        candidate[receiver].budget += delta;
        Snapshot trial = evaluate(candidate, result.ue_visits);

        if (trial.objective > current.objective) {
            slices = std::move(candidate);
            current = std::move(trial);
            if (current.objective > best.objective) best = current;
            no_improvement = 0;
            shrink = 1.0;
            rec.accepted = true;
        } else {
            ++no_improvement;
            if (params.shrink_on_reject) shrink *= 0.5;
        }
        rec.objective = current.objective;
        result.trace.push_back(std::move(rec));
        if (no_improvement >= params.t_patience) {
            reason = Termination::patience;
            break;
        }
    }

    result.iterations_run = t;
    result.termination = reason;
    result.objective = best.objective;
    result.slice_budgets = best.budgets;
    // Flatten in slice order; allocate() maps back to UE indices.
    for (const auto& per_slice : best.per_ue)
        result.bandwidth.insert(result.bandwidth.end(), per_slice.begin(), per_slice.end());
    return result;
}

AllocationResult allocate(const AdmissionInput& input, const AdmissionResult& admitted,
                          const AllocationParams& params) {
    std::vector<SliceState> slices(kNumSlices);
    std::vector<std::vector<std::size_t>> members(kNumSlices);
    for (Slice s : {Slice::urllc, Slice::embb}) {
        std::vector<std::size_t> idx = admitted.admitted(s);
        std::sort(idx.begin(), idx.end());
        for (std::size_t k : idx) slices[slice_index(s)].ues.push_back(input.ues[k]);
        members[slice_index(s)] = std::move(idx);
    }
    AllocationResult flat = allocate_slices(std::move(slices), input.total_bandwidth, params);

    std::vector<double> per_ue(input.ues.size(), 0.0);
    std::size_t pos = 0;
    for (const auto& group : members)
        for (std::size_t k : group) per_ue[k] = flat.bandwidth[pos++];
    flat.bandwidth = std::move(per_ue);
    return flat;
}

void write_trace_csv(std::ostream& out, const AllocationResult& result) {
    out << "iteration,mu_urllc,mu_embb,donor,delta_b_hz,accepted,objective\n";
    char line[256];
    for (const auto& r : result.trace) {
        const double mu_u = r.mu.size() > 0 ? r.mu[0] : 0.0;
        const double mu_e = r.mu.size() > 1 ? r.mu[1] : 0.0;
        std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%d,%.17g,%d,%.17g\n", r.iteration, mu_u, mu_e, r.donor,
                      r.delta_b, r.accepted ? 1 : 0, r.objective);
        out << line;
    }
}

}  // namespace slicecf
