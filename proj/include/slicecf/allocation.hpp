#ifndef SLICECF_ALLOCATION_HPP
#define SLICECF_ALLOCATION_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "slicecf/admission.hpp"
#include "slicecf/config.hpp"

namespace slicecf {

/// Absolute tolerance (Hz) for budget bookkeeping and constraint checks.
inline constexpr double kBandwidthTolerance = 1e-6;

struct AllocationParams {
    int t_max = 50;
    int t_patience = 5;
    double eps_transfer = 0.01e6;
    double delta_b = 0.1e6;
    double mu_ratio = 1.05;
    // Halve the transfer after each rejection; off reproduces the reference loop.
    bool shrink_on_reject = false;

    static AllocationParams from_config(const SimConfig& cfg);
    void validate() const;
};

enum class Termination : std::uint8_t { mu_balanced, transfer_floor, patience, max_iter };
std::string_view termination_name(Termination t);

struct IterationRecord {
    int iteration = 0;
    std::vector<double> mu;  // per slice
    int donor = -1;
    int receiver = -1;
    double delta_b = 0.0;
    bool accepted = false;
    double objective = 0.0;  // objective after the accept/reject decision
};

struct AllocationResult {
    std::vector<double> slice_budgets;  // Hz, indexed by slice
    std::vector<double> bandwidth;      // Hz per UE, 0 for rejected UEs
    double objective = 0.0;
    double initial_objective = 0.0;
    int iterations_run = 0;
    Termination termination = Termination::max_iter;
    std::vector<IterationRecord> trace;
    std::uint64_t ue_visits = 0;  // per-UE work units spent in QA and MU calls
};

/// Minimum bandwidth plus a surplus share proportional to (w * SE)^2. The
/// returned vector sums to `budget` up to kBandwidthTolerance. Throws
/// InfeasibleError when the budget is short of the summed minimums.
std::vector<double> qa_allocate(double budget, std::span<const Candidate> ues);

/// Sum of w * b * SE over the given UEs.
double weighted_objective(std::span<const double> bandwidth, std::span<const Candidate> ues);

/// One slice of an allocation problem: its admitted UEs and the current budget.
struct SliceState {
    std::vector<Candidate> ues;
    double budget = 0.0;
    double floor = 0.0;  // sum of b_min
};

/// Forward-difference marginal utility of slice s at its current budget.
double marginal_utility(std::span<const SliceState> slices, std::size_t s, double delta_b);

/// Inter-slice transfer loop over arbitrary slices. Budgets in `slices` give
/// the per-slice floors; initial budgets are set from the surplus split.
AllocationResult allocate_slices(std::vector<SliceState> slices, double total_bandwidth,
                                 const AllocationParams& params);

/// Runs the transfer loop on an admission outcome. Rejected UEs get zero.
AllocationResult allocate(const AdmissionInput& input, const AdmissionResult& admitted,
                          const AllocationParams& params);

/// CSV rows: iteration,mu_urllc,mu_embb,donor,delta_b_hz,accepted,objective.
void write_trace_csv(std::ostream& out, const AllocationResult& result);

}  // namespace slicecf

#endif  // SLICECF_ALLOCATION_HPP
