#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slicecf/config.hpp"
#include "slicecf/export.hpp"
#include "slicecf/harness.hpp"
#include "slicecf/plot.hpp"

namespace fs = std::filesystem;
using namespace slicecf;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

struct RunOptions {
    std::string config;
    int drops = 50;
    std::optional<std::uint64_t> seed;
    std::string out = "out";
    std::vector<double> values;
};

void add_run_options(CLI::App* cmd, RunOptions& o, bool sweep) {
    cmd->add_option("--config", o.config, "JSON simulation config (defaults apply when omitted)");
    cmd->add_option("--drops", o.drops, "Monte Carlo drops per sweep point")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "Master seed (defaults to rng_seed from the config)");
    cmd->add_option("--out", o.out, "Output directory");
    if (sweep) cmd->add_option("--values", o.values, "Sweep values")->delimiter(',')->required();
}

SimConfig resolve_config(const RunOptions& o) {
    SimConfig cfg = o.config.empty() ? SimConfig{} : load_config(o.config);
    cfg.validate();
    return cfg;
}

CampaignMetrics run_and_save(const RunOptions& o, SweepKind kind) {
    const SimConfig cfg = resolve_config(o);
    const std::uint64_t seed = o.seed.value_or(cfg.rng_seed);
    CampaignMetrics campaign = run_campaign(cfg, kind, o.values, o.drops, seed);
    fs::create_directories(o.out);
    save_campaign_json(fs::path(o.out) / "campaign.json", campaign);
    save_drops_csv(fs::path(o.out) / "drops.csv", campaign);
    return campaign;
}

void print_summary(const CampaignMetrics& campaign) {
    for (const auto& p : campaign.points) {
        std::cout << "K=" << p.num_ues << " urllc_fraction=" << p.urllc_fraction << " drops=" << p.drops << '\n';
        for (Scheme s : kSchemes) {
            const auto& m = p[s];
            std::cout << "  " << scheme_name(s) << ": weighted_sum_rate=" << m.weighted_sum_rate.mean / 1e6
                      << " Mbps  embb_success=" << m.embb_success_rate.mean
                      << "  urllc_success=" << m.urllc_success_rate.mean << '\n';
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cell-free massive MIMO eMBB/URLLC slicing simulator"};
    app.require_subcommand(1);

    RunOptions sim_opts, k_opts, mix_opts;
    std::string trace_path;
    auto* simulate = app.add_subcommand("simulate", "Run drops at a single operating point");
    add_run_options(simulate, sim_opts, false);
    simulate->add_option("--trace", trace_path, "Write the allocation trace of the first drop as CSV");

    auto* sweep_k = app.add_subcommand("sweep-k", "Sweep the number of UEs");
    add_run_options(sweep_k, k_opts, true);
    auto* sweep_mix = app.add_subcommand("sweep-mix", "Sweep the URLLC fraction of UEs");
    add_run_options(sweep_mix, mix_opts, true);

    std::string plot_kind, plot_in, plot_out;
    auto* plot = app.add_subcommand("plot", "Render an SVG figure from a campaign JSON");
    plot->add_option("--kind", plot_kind, "sumrate | success | runtime | sensitivity")->required();
    plot->add_option("--in", plot_in, "campaign.json")->required();
    plot->add_option("--out", plot_out, "Output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*simulate) {
            const auto campaign = run_and_save(sim_opts, SweepKind::single);
            if (!trace_path.empty()) {
                const SimConfig cfg = resolve_config(sim_opts);
                std::ofstream out(trace_path);
                write_trace_csv(out, proposed_allocation(cfg, campaign.master_seed));
            }
            print_summary(campaign);
        } else if (*sweep_k) {
            const auto campaign = run_and_save(k_opts, SweepKind::num_ues);
            if (campaign.points.size() >= 2) {
                for (auto kind : {PlotKind::sumrate, PlotKind::success, PlotKind::runtime}) {
                    const char* name = kind == PlotKind::sumrate ? "sumrate.svg"
                                       : kind == PlotKind::success ? "success.svg"
                                                                   : "runtime.svg";
                    emit_plot(campaign, kind, fs::path(k_opts.out) / name);
                }
            }
            print_summary(campaign);
        } else if (*sweep_mix) {
            const auto campaign = run_and_save(mix_opts, SweepKind::mix);
            emit_plot(campaign, PlotKind::sensitivity, fs::path(mix_opts.out) / "sensitivity.svg");
            print_summary(campaign);
        } else if (*plot) {
            emit_plot(load_campaign_json(plot_in), parse_plot_kind(plot_kind), plot_out);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible instance: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
