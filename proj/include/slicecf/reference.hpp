#ifndef SLICECF_REFERENCE_HPP
#define SLICECF_REFERENCE_HPP

#include <span>
#include <string>
#include <vector>

#include "slicecf/admission.hpp"

namespace slicecf {

struct OracleResult {
    double objective = 0.0;
    std::vector<double> bandwidth;      // Hz, aligned with the input UEs
    std::vector<double> slice_budgets;  // Hz, indexed by slice
    std::string method;
};

/// Exact maximum of the linear bandwidth problem on a fixed admitted set:
/// minimums everywhere, all surplus to the highest w*SE (lowest index on ties).
OracleResult lp_optimum(std::span<const Candidate> ues, double total_bandwidth);

struct BruteForceAdmission {
    std::vector<std::size_t> admitted_urllc;
    std::vector<std::size_t> admitted_embb;
    double total_efficiency = 0.0;
};

inline constexpr std::size_t kBruteForceMaxUes = 15;

/// Exhaustive priority-respecting knapsack: the URLLC set must fit within
/// B - floor and be maximal, then eMBB fills the remainder. Maximizes the
/// summed efficiency. Throws std::invalid_argument for more than 15 UEs.
BruteForceAdmission brute_force_admission(std::span<const Candidate> ues, double total_bandwidth,
                                          double embb_floor);

/// Closed-form marginal utility of a slice under the QA rule.
double mu_analytic(std::span<const Candidate> ues, double budget);

/// Equal split of B over every UE, no admission.
OracleResult round_robin(std::span<const Candidate> ues, double total_bandwidth);

}  // namespace slicecf

#endif  // SLICECF_REFERENCE_HPP
