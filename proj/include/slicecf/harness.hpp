#ifndef SLICECF_HARNESS_HPP
#define SLICECF_HARNESS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "slicecf/allocation.hpp"
#include "slicecf/config.hpp"

namespace slicecf {

enum class Scheme : std::uint8_t { proposed = 0, oracle = 1, baseline = 2 };
inline constexpr std::size_t kNumSchemes = 3;
inline constexpr std::array<Scheme, kNumSchemes> kSchemes{Scheme::proposed, Scheme::oracle, Scheme::baseline};
std::string_view scheme_name(Scheme s);

struct SchemeMetrics {
    double weighted_sum_rate = 0.0;  // weighted bits/s
    double embb_success_rate = 0.0;  // over every eMBB UE in the drop
    double urllc_success_rate = 0.0; // over every URLLC UE in the drop
    int admitted_urllc = 0;
    int admitted_embb = 0;
    std::int64_t runtime_ns = 0;     // scheme-specific stages only
    int iterations = 0;
};

/// Wall time per pipeline stage, nanoseconds.
struct StageRuntimes {
    std::int64_t channel = 0;
    std::int64_t link = 0;
    std::int64_t admission = 0;
    std::int64_t allocation = 0;
    std::int64_t oracle = 0;
    std::int64_t baseline = 0;
};

/// Hard invariant tallies for one drop; zero everywhere on a healthy run.
struct InvariantReport {
    int budget_conservation = 0;
    int slice_sum = 0;
    int below_minimum = 0;
    int admitted_qos = 0;
    int oracle_dominance = 0;

    int total() const { return budget_conservation + slice_sum + below_minimum + admitted_qos + oracle_dominance; }
};

struct DropMetrics {
    std::uint64_t seed = 0;
    int num_ues = 0;
    double urllc_fraction = 0.0;
    std::array<SchemeMetrics, kNumSchemes> schemes{};
    StageRuntimes stages{};
    InvariantReport invariants{};
    Termination termination = Termination::max_iter;

    const SchemeMetrics& operator[](Scheme s) const { return schemes[static_cast<std::size_t>(s)]; }
};

struct MeanStderr {
    double mean = 0.0;
    double std_error = 0.0;
};

struct SchemeSummary {
    MeanStderr weighted_sum_rate;
    MeanStderr embb_success_rate;
    MeanStderr urllc_success_rate;
    MeanStderr admitted_urllc;
    MeanStderr admitted_embb;
    MeanStderr iterations;
    double runtime_ns_median = 0.0;
};

struct SweepPoint {
    int num_ues = 0;
    double urllc_fraction = 0.0;
    int drops = 0;
    std::vector<std::uint64_t> seeds;
    std::array<SchemeSummary, kNumSchemes> schemes{};
    std::vector<DropMetrics> drop_metrics;

    const SchemeSummary& operator[](Scheme s) const { return schemes[static_cast<std::size_t>(s)]; }
};

enum class SweepKind : std::uint8_t { single, num_ues, mix };
std::string_view sweep_kind_name(SweepKind k);
SweepKind parse_sweep_kind(std::string_view name);

struct CampaignMetrics {
    SweepKind kind = SweepKind::single;
    std::uint64_t master_seed = 0;
    std::vector<SweepPoint> points;
};

/// One Monte Carlo realization through all three schemes. Throws
/// std::logic_error if an admitted UE misses its QoS under the proposed scheme.
DropMetrics run_drop(const SimConfig& cfg, std::uint64_t seed);

/// Re-runs the proposed pipeline of one drop and returns the allocation with its trace.
AllocationResult proposed_allocation(const SimConfig& cfg, std::uint64_t seed);

SweepPoint summarize(std::vector<DropMetrics> drops, int num_ues, double urllc_fraction);

/// Drop i uses seed master_seed + i. `values` are K counts or URLLC fractions
/// depending on kind (ignored for single). Worker count: `threads` if > 0,
/// else SLICECF_THREADS, else hardware concurrency.
CampaignMetrics run_campaign(const SimConfig& cfg, SweepKind kind, const std::vector<double>& values, int drops,
                             std::uint64_t master_seed, int threads = 0);

int worker_count(int requested, int work_items);

}  // namespace slicecf

#endif  // SLICECF_HARNESS_HPP
