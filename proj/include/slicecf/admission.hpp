#ifndef SLICECF_ADMISSION_HPP
#define SLICECF_ADMISSION_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "slicecf/config.hpp"

namespace slicecf {

/// One UE as seen by admission and allocation. b_min in Hz, may be +infinity.
struct Candidate {
    Slice slice = Slice::embb;
    double weight = 1.0;
    double se = 0.0;
    double b_min = 0.0;
};

/// Weighted spectral efficiency; the ranking key of both admission stages.
constexpr double efficiency(double weight, double se) { return weight * se; }
inline double efficiency(const Candidate& c) { return efficiency(c.weight, c.se); }

struct AdmissionInput {
    std::vector<Candidate> ues;
    double total_bandwidth = 0.0;
    double embb_floor = 0.0;  // B_eMBB^min, reserved against the URLLC stage only
};

struct AdmissionResult {
    std::vector<std::size_t> admitted_urllc;  // in admission order
    std::vector<std::size_t> admitted_embb;
    double used_urllc = 0.0;
    double used_embb = 0.0;
    std::vector<std::uint8_t> alpha;
    std::uint64_t operations = 0;  // comparator calls + per-UE filter/greedy steps

    double used(Slice s) const { return s == Slice::urllc ? used_urllc : used_embb; }
    const std::vector<std::size_t>& admitted(Slice s) const {
        return s == Slice::urllc ? admitted_urllc : admitted_embb;
    }
    std::size_t num_admitted() const { return admitted_urllc.size() + admitted_embb.size(); }
};

/// URLLC-first two-stage greedy knapsack. Candidates are ranked by descending
/// efficiency, ties by ascending UE index.
AdmissionResult admit(const AdmissionInput& input);

/// Throws ConfigError on B <= 0 or a floor outside [0, B).
void validate(const AdmissionInput& input);

}  // namespace slicecf

#endif  // SLICECF_ADMISSION_HPP
