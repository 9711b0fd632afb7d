#include "slicecf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "slicecf/admission.hpp"
#include "slicecf/link_metrics.hpp"
#include "slicecf/network.hpp"
#include "slicecf/reference.hpp"

namespace slicecf {

std::string_view scheme_name(Scheme s) {
    switch (s) {
        case Scheme::proposed: return "proposed";
        case Scheme::oracle: return "oracle";
        case Scheme::baseline: return "baseline";
    }
    return "unknown";
}

std::string_view sweep_kind_name(SweepKind k) {
    switch (k) {
        case SweepKind::single: return "single";
        case SweepKind::num_ues: return "K";
        case SweepKind::mix: return "mix";
    }
    return "unknown";
}

SweepKind parse_sweep_kind(std::string_view name) {
    if (name == "single") return SweepKind::single;
    if (name == "K") return SweepKind::num_ues;
    if (name == "mix") return SweepKind::mix;
    throw std::invalid_argument("unknown sweep kind: " + std::string(name));
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ns(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(b - a).count();
}

constexpr double kRateTolerance = 1e-6;   // bits/s
constexpr double kDelayTolerance = 1e-9;  // s

bool qos_met(const UeProfile& p, double bandwidth, double se) {
    if (!(bandwidth > 0.0)) return false;
    const double rate = bandwidth * se;
    if (p.slice == Slice::embb) return rate >= p.min_rate - kRateTolerance;
    return delay(rate, p) <= p.delay_budget + kDelayTolerance;
}

// Fills success rates, counts and objective for one scheme's per-UE bandwidths.
SchemeMetrics score(std::span<const UeProfile> profiles, std::span<const Candidate> ues,
                    std::span<const double> bandwidth) {
    SchemeMetrics m;
    int n_embb = 0, n_urllc = 0, ok_embb = 0, ok_urllc = 0;
    for (std::size_t k = 0; k < ues.size(); ++k) {
        const bool served = bandwidth[k] > 0.0;
        const bool ok = qos_met(profiles[k], bandwidth[k], ues[k].se);
        if (served) m.weighted_sum_rate += ues[k].weight * bandwidth[k] * ues[k].se;
        if (profiles[k].slice == Slice::urllc) {
            ++n_urllc;
            ok_urllc += ok;
            m.admitted_urllc += served;
        } else {
            ++n_embb;
            ok_embb += ok;
            m.admitted_embb += served;
        }
    }
    m.embb_success_rate = n_embb ? static_cast<double>(ok_embb) / n_embb : 0.0;
    m.urllc_success_rate = n_urllc ? static_cast<double>(ok_urllc) / n_urllc : 0.0;
    return m;
}

void check_budgets(InvariantReport& rep, std::span<const Candidate> ues, std::span<const std::uint8_t> alpha,
                   std::span<const double> bandwidth, std::span<const double> slice_budgets, double total) {
    std::vector<double> sums(kNumSlices, 0.0);
    bool any = false;
    for (std::size_t k = 0; k < ues.size(); ++k) {
        if (!alpha[k]) {
            if (bandwidth[k] != 0.0) ++rep.below_minimum;
            continue;
        }
        any = true;
        sums[slice_index(ues[k].slice)] += bandwidth[k];
        if (bandwidth[k] < ues[k].b_min - kBandwidthTolerance) ++rep.below_minimum;
    }
    double budget_total = 0.0;
    for (std::size_t s = 0; s < kNumSlices; ++s) {
        budget_total += slice_budgets[s];
        if (std::abs(sums[s] - slice_budgets[s]) > kBandwidthTolerance) ++rep.slice_sum;
    }
    if (any && std::abs(budget_total - total) > kBandwidthTolerance) ++rep.budget_conservation;
}

}  // namespace

DropMetrics run_drop(const SimConfig& cfg, std::uint64_t seed) {
    DropMetrics out;
    out.seed = seed;
    out.num_ues = cfg.num_ues;
    out.urllc_fraction = cfg.slice_mix.urllc;

    const auto t0 = Clock::now();
    const Deployment dep = generate_deployment(cfg, seed);
    const ChannelState state = build_channel(dep, cfg, seed);
    const std::vector<UeProfile> profiles = generate_profiles(dep, seed);
    const auto t1 = Clock::now();
    const LinkMetrics lm = compute_link_metrics(state, profiles, cfg);
    const auto t2 = Clock::now();

    const double total = cfg.total_bandwidth;
    AdmissionInput input;
    input.total_bandwidth = total;
    input.embb_floor = cfg.embb_min_fraction * total;
    input.ues.resize(profiles.size());
    for (std::size_t k = 0; k < profiles.size(); ++k)
        input.ues[k] = {profiles[k].slice, profiles[k].weight, lm.se[k], lm.b_min[k]};

    const AdmissionResult adm = admit(input);
    const auto t3 = Clock::now();
    const AllocationResult alloc = allocate(input, adm, AllocationParams::from_config(cfg));
    const auto t4 = Clock::now();

    std::vector<std::size_t> admitted_idx;
    for (std::size_t k = 0; k < input.ues.size(); ++k)
        if (adm.alpha[k]) admitted_idx.push_back(k);
    std::vector<Candidate> admitted_ues;
    for (std::size_t k : admitted_idx) admitted_ues.push_back(input.ues[k]);
    const OracleResult lp = lp_optimum(admitted_ues, total);
    std::vector<double> oracle_bw(input.ues.size(), 0.0);
    for (std::size_t i = 0; i < admitted_idx.size(); ++i) oracle_bw[admitted_idx[i]] = lp.bandwidth[i];
    const auto t5 = Clock::now();
    const OracleResult rr = round_robin(input.ues, total);
    const auto t6 = Clock::now();

    out.stages = {elapsed_ns(t0, t1), elapsed_ns(t1, t2), elapsed_ns(t2, t3),
                  elapsed_ns(t3, t4), elapsed_ns(t4, t5), elapsed_ns(t5, t6)};

    auto& proposed = out.schemes[static_cast<std::size_t>(Scheme::proposed)];
    auto& oracle = out.schemes[static_cast<std::size_t>(Scheme::oracle)];
    auto& baseline = out.schemes[static_cast<std::size_t>(Scheme::baseline)];
    proposed = score(profiles, input.ues, alloc.bandwidth);
    proposed.runtime_ns = out.stages.admission + out.stages.allocation;
    proposed.iterations = alloc.iterations_run;
    oracle = score(profiles, input.ues, oracle_bw);
    oracle.runtime_ns = out.stages.admission + out.stages.oracle;
    baseline = score(profiles, input.ues, rr.bandwidth);
    baseline.runtime_ns = out.stages.baseline;
    out.termination = alloc.termination;

    InvariantReport& rep = out.invariants;
    check_budgets(rep, input.ues, adm.alpha, alloc.bandwidth, alloc.slice_budgets, total);
    check_budgets(rep, input.ues, adm.alpha, oracle_bw, lp.slice_budgets, total);
    double rr_total = 0.0;
    for (double b : rr.bandwidth) rr_total += b;
    if (std::abs(rr_total - total) > kBandwidthTolerance) ++rep.budget_conservation;
    for (std::size_t k = 0; k < input.ues.size(); ++k) {
        if (!adm.alpha[k]) continue;
        if (!qos_met(profiles[k], alloc.bandwidth[k], input.ues[k].se)) ++rep.admitted_qos;
        if (!qos_met(profiles[k], oracle_bw[k], input.ues[k].se)) ++rep.admitted_qos;
    }
    if (alloc.objective > lp.objective * (1.0 + 1e-12) + 1e-6) ++rep.oracle_dominance;
    if (rep.admitted_qos != 0)
        throw std::logic_error("run_drop: admitted UE missed its QoS target (seed " + std::to_string(seed) + ")");
    return out;
}

AllocationResult proposed_allocation(const SimConfig& cfg, std::uint64_t seed) {
    const Deployment dep = generate_deployment(cfg, seed);
    const ChannelState state = build_channel(dep, cfg, seed);
    const std::vector<UeProfile> profiles = generate_profiles(dep, seed);
    const LinkMetrics lm = compute_link_metrics(state, profiles, cfg);
    AdmissionInput input;
    input.total_bandwidth = cfg.total_bandwidth;
    input.embb_floor = cfg.embb_min_fraction * cfg.total_bandwidth;
    for (std::size_t k = 0; k < profiles.size(); ++k)
        input.ues.push_back({profiles[k].slice, profiles[k].weight, lm.se[k], lm.b_min[k]});
    return allocate(input, admit(input), AllocationParams::from_config(cfg));
}

namespace {

template <typename Getter>
MeanStderr mean_stderr(const std::vector<DropMetrics>& drops, Getter get) {
    MeanStderr r;
    if (drops.empty()) return r;
    double sum = 0.0;
    for (const auto& d : drops) sum += get(d);
    r.mean = sum / static_cast<double>(drops.size());
    if (drops.size() > 1) {
        double ss = 0.0;
        for (const auto& d : drops) ss += (get(d) - r.mean) * (get(d) - r.mean);
        r.std_error = std::sqrt(ss / static_cast<double>(drops.size() - 1) / static_cast<double>(drops.size()));
    }
    return r;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

SweepPoint summarize(std::vector<DropMetrics> drops, int num_ues, double urllc_fraction) {
    SweepPoint p;
    p.num_ues = num_ues;
    p.urllc_fraction = urllc_fraction;
    p.drops = static_cast<int>(drops.size());
    for (const auto& d : drops) p.seeds.push_back(d.seed);
    for (Scheme s : kSchemes) {
        const auto i = static_cast<std::size_t>(s);
        SchemeSummary& sum = p.schemes[i];
        sum.weighted_sum_rate = mean_stderr(drops, [i](const DropMetrics& d) { return d.schemes[i].weighted_sum_rate; });
        sum.embb_success_rate = mean_stderr(drops, [i](const DropMetrics& d) { return d.schemes[i].embb_success_rate; });
        sum.urllc_success_rate =
            mean_stderr(drops, [i](const DropMetrics& d) { return d.schemes[i].urllc_success_rate; });
        sum.admitted_urllc =
            mean_stderr(drops, [i](const DropMetrics& d) { return double(d.schemes[i].admitted_urllc); });
        sum.admitted_embb = mean_stderr(drops, [i](const DropMetrics& d) { return double(d.schemes[i].admitted_embb); });
        sum.iterations = mean_stderr(drops, [i](const DropMetrics& d) { return double(d.schemes[i].iterations); });
        std::vector<double> rt;
        for (const auto& d : drops) rt.push_back(static_cast<double>(d.schemes[i].runtime_ns));
        sum.runtime_ns_median = median(std::move(rt));
    }
    p.drop_metrics = std::move(drops);
    return p;
}

int worker_count(int requested, int work_items) {
    int n = requested;
    if (n <= 0) {
        if (const char* env = std::getenv("SLICECF_THREADS")) n = std::atoi(env);
    }
    if (n <= 0) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return std::max(1, std::min(n, work_items));
}

CampaignMetrics run_campaign(const SimConfig& cfg, SweepKind kind, const std::vector<double>& values, int drops,
                             std::uint64_t master_seed, int threads) {
    if (drops < 1) throw ConfigError("run_campaign: drops must be >= 1");
    std::vector<SimConfig> point_cfgs;
    if (kind == SweepKind::single) {
        point_cfgs.push_back(cfg);
    } else {
        if (values.empty()) throw ConfigError("run_campaign: empty sweep");
        for (double v : values) {
            SimConfig c = cfg;
            if (kind == SweepKind::num_ues) {
                if (v < 1 || v != std::floor(v)) throw ConfigError("run_campaign: K values must be positive integers");
                c.num_ues = static_cast<int>(v);
            } else {
                c.slice_mix = {1.0 - v, v};
            }
            c.validate();
            point_cfgs.push_back(c);
        }
    }

    CampaignMetrics campaign;
    campaign.kind = kind;
    campaign.master_seed = master_seed;
    for (const SimConfig& c : point_cfgs) {
        std::vector<DropMetrics> results(drops);
        std::atomic<int> next{0};
        std::exception_ptr failure;
        std::atomic<bool> failed{false};
        auto work = [&] {
            for (int i = next++; i < drops && !failed; i = next++) {
                try {
                    results[i] = run_drop(c, master_seed + static_cast<std::uint64_t>(i));
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                }
            }
        };
        const int n = worker_count(threads, drops);
        if (n == 1) {
            work();
        } else {
            std::vector<std::jthread> pool;
            for (int w = 0; w < n; ++w) pool.emplace_back(work);
        }
        if (failure) std::rethrow_exception(failure);
        campaign.points.push_back(summarize(std::move(results), c.num_ues, c.slice_mix.urllc));
    }
    return campaign;
}

}  // namespace slicecf
