#include "slicecf/admission.hpp"

#include <algorithm>
#include <cmath>

namespace slicecf {

namespace {

// Filter, sort and greedily fill one stage. `cumulative` carries the running
// demand across stages; `budget` is the stage ceiling on that cumulative.
std::vector<std::size_t> run_stage(const AdmissionInput& input, Slice slice, double filter_cap, double budget,
                                   double& cumulative, std::uint64_t& ops) {
    std::vector<std::size_t> feasible;
    for (std::size_t k = 0; k < input.ues.size(); ++k) {
        ++ops;
        const Candidate& c = input.ues[k];
        if (c.slice == slice && std::isfinite(c.b_min) && c.b_min <= filter_cap) feasible.push_back(k);
    }
    std::sort(feasible.begin(), feasible.end(), [&](std::size_t a, std::size_t b) {
        ++ops;
        const double ga = efficiency(input.ues[a]);
        const double gb = efficiency(input.ues[b]);
        if (ga != gb) return ga > gb;
        return a < b;
    });
    std::vector<std::size_t> admitted;
    for (std::size_t k : feasible) {
        ++ops;
        const double b = input.ues[k].b_min;
        if (cumulative + b <= budget) {
            admitted.push_back(k);
            cumulative += b;
        }
    }
    return admitted;
}

}  // namespace

void validate(const AdmissionInput& input) {
    if (!(input.total_bandwidth > 0.0)) throw ConfigError("admission: total bandwidth must be > 0");
    if (!(input.embb_floor >= 0.0 && input.embb_floor < input.total_bandwidth))
        throw ConfigError("admission: eMBB floor must be in [0, B)");
}

AdmissionResult admit(const AdmissionInput& input) {
    validate(input);
    AdmissionResult out;
    out.alpha.assign(input.ues.size(), 0);

    const double urllc_cap = input.total_bandwidth - input.embb_floor;
    double cumulative = 0.0;
    out.admitted_urllc = run_stage(input, Slice::urllc, urllc_cap, urllc_cap, cumulative, out.operations);
    out.used_urllc = cumulative;

    const double residual = input.total_bandwidth - out.used_urllc;
    out.admitted_embb = run_stage(input, Slice::embb, residual, input.total_bandwidth, cumulative, out.operations);
    double used_embb = 0.0;
    for (std::size_t k : out.admitted_embb) used_embb += input.ues[k].b_min;
    out.used_embb = used_embb;

    for (std::size_t k : out.admitted_urllc) out.alpha[k] = 1;
    for (std::size_t k : out.admitted_embb) out.alpha[k] = 1;
    return out;
}

}  // namespace slicecf
