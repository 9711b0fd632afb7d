#include "slicecf/network.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

namespace slicecf {

namespace {

enum Stream : std::uint64_t {
    kPositions = 1,
    kSlices = 2,
    kShadowing = 3,
    kPilots = 4,
    kProfiles = 5,
};

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) { return std::mt19937_64(stream_seed(seed, stream)); }

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

Deployment generate_deployment(const SimConfig& cfg, std::uint64_t seed) {
    Deployment dep;
    auto rng = make_rng(seed, kPositions);
    std::uniform_real_distribution<double> coord(0.0, cfg.area_side);
    dep.ap_positions.reserve(cfg.num_aps);
    for (int m = 0; m < cfg.num_aps; ++m) {
        const double x = coord(rng);
        dep.ap_positions.emplace_back(x, coord(rng));
    }
    dep.ue_positions.reserve(cfg.num_ues);
    for (int k = 0; k < cfg.num_ues; ++k) {
        const double x = coord(rng);
        dep.ue_positions.emplace_back(x, coord(rng));
    }

    std::vector<int> order(cfg.num_ues);
    std::iota(order.begin(), order.end(), 0);
    auto slice_rng = make_rng(seed, kSlices);
    std::shuffle(order.begin(), order.end(), slice_rng);
    dep.ue_slice.assign(cfg.num_ues, Slice::embb);
    const int n_urllc = cfg.num_urllc();
    for (int i = 0; i < n_urllc; ++i) dep.ue_slice[order[i]] = Slice::urllc;
    return dep;
}

double wrap_distance(const Point& a, const Point& b, double side) {
    double best = std::numeric_limits<double>::infinity();
    for (int dx = -1; dx <= 1; ++dx) {
        for (int dy = -1; dy <= 1; ++dy) {
            const Point shifted = b + Point(dx * side, dy * side);
            best = std::min(best, (a - shifted).norm());
        }
    }
    return best;
}

double cost_hata_constant(const SimConfig& cfg) {
    const double lf = std::log10(cfg.carrier_freq_mhz);
    return 46.3 + 33.9 * lf - 13.82 * std::log10(cfg.ap_height_m) - (1.1 * lf - 0.7) * cfg.ue_height_m +
           (1.56 * lf - 0.8);
}

double path_loss_db(double distance_m, const SimConfig& cfg) {
    const double d = std::max(distance_m, 1.0);
    const double loss = cost_hata_constant(cfg);
    const double d0_km = cfg.d0_m / 1000.0;
    const double d1_km = cfg.d1_m / 1000.0;
    if (d > cfg.d1_m) return -loss - 35.0 * std::log10(d / 1000.0);
    if (d > cfg.d0_m) return -loss - 15.0 * std::log10(d1_km) - 20.0 * std::log10(d / 1000.0);
    return -loss - 15.0 * std::log10(d1_km) - 20.0 * std::log10(d0_km);
}

double large_scale_coeff(double distance_m, double z, const SimConfig& cfg) {
    double exponent_db = path_loss_db(distance_m, cfg);
    if (std::max(distance_m, 1.0) > cfg.d1_m) exponent_db += cfg.shadow_std_db * z;
    return std::pow(10.0, exponent_db / 10.0);
}

std::vector<int> assign_pilots(int num_ues, int tau_p, std::uint64_t seed) {
    auto rng = make_rng(seed, kPilots);
    std::uniform_int_distribution<int> pick(0, tau_p - 1);
    std::vector<int> pilots(num_ues);
    for (auto& p : pilots) p = pick(rng);
    return pilots;
}

std::vector<std::vector<int>> associate(const Eigen::MatrixXd& beta, double fraction) {
    const auto num_aps = static_cast<int>(beta.cols());
    std::vector<std::vector<int>> serving(beta.rows());
    std::vector<int> order(num_aps);
    for (Eigen::Index k = 0; k < beta.rows(); ++k) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return beta(k, a) > beta(k, b); });
        // Relative slack so a prefix that reaches the target exactly is not lost to rounding.
        const double target = fraction * beta.row(k).sum() * (1.0 - 1e-12);
        double acc = 0.0;
        for (int m : order) {
            serving[k].push_back(m);
            acc += beta(k, m);
            if (acc >= target) break;
        }
    }
    return serving;
}

PowerControl power_control(const Eigen::MatrixXd& beta, const std::vector<std::vector<int>>& serving) {
    const Eigen::Index num_ues = beta.rows();
    Eigen::VectorXd aggregate(num_ues);
    for (Eigen::Index k = 0; k < num_ues; ++k) {
        double s = 0.0;
        for (int m : serving[k]) s += beta(k, m);
        aggregate[k] = s;
    }
    std::vector<double> sorted(aggregate.data(), aggregate.data() + num_ues);
    std::sort(sorted.begin(), sorted.end());
    double reference = 0.0;
    if (num_ues > 0) {
        const auto mid = static_cast<std::size_t>(num_ues / 2);
        reference = num_ues % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    }
    PowerControl pc{Eigen::VectorXd::Ones(num_ues), Eigen::VectorXd(num_ues)};
    for (Eigen::Index k = 0; k < num_ues; ++k) pc.eta_d[k] = std::min(1.0, reference / aggregate[k]);
    return pc;
}

Eigen::MatrixXd large_scale_matrix(const Deployment& dep, const SimConfig& cfg, std::uint64_t seed) {
    const auto num_ues = static_cast<Eigen::Index>(dep.ue_positions.size());
    const auto num_aps = static_cast<Eigen::Index>(dep.ap_positions.size());
    auto rng = make_rng(seed, kShadowing);
    std::normal_distribution<double> shadow(0.0, 1.0);
    Eigen::MatrixXd beta(num_ues, num_aps);
    for (Eigen::Index k = 0; k < num_ues; ++k) {
        for (Eigen::Index m = 0; m < num_aps; ++m) {
            const double d = wrap_distance(dep.ue_positions[k], dep.ap_positions[m], cfg.area_side);
            beta(k, m) = large_scale_coeff(d, shadow(rng), cfg);
        }
    }
    return beta;
}

ChannelState build_channel(const Deployment& dep, const SimConfig& cfg, std::uint64_t seed) {
    ChannelState state;
    state.beta = large_scale_matrix(dep, cfg, seed);
    state.pilot_index = assign_pilots(static_cast<int>(dep.num_ues()), cfg.tau_p, seed);
    state.serving = associate(state.beta, cfg.association_fraction);
    auto pc = power_control(state.beta, state.serving);
    state.eta_p = std::move(pc.eta_p);
    state.eta_d = std::move(pc.eta_d);
    state.rho_p = cfg.rho_p();
    state.rho_d = cfg.rho_d();
    state.tau_p = cfg.tau_p;
    state.antennas = cfg.antennas_per_ap;
    return state;
}

std::vector<UeProfile> generate_profiles(const Deployment& dep, std::uint64_t seed) {
    auto rng = make_rng(seed, kProfiles);
    std::uniform_int_distribution<int> bytes(32, 64);
    std::uniform_real_distribution<double> arrivals(5.0, 25.0);
    std::uniform_real_distribution<double> budget(1e-3, 5e-3);
    std::uniform_real_distribution<double> urllc_weight(2.0, 4.0);
    std::uniform_real_distribution<double> premium_rate(5e6, 10e6);
    std::uniform_real_distribution<double> standard_rate(1e6, 3e6);

    // Exact 30% premium share among eMBB UEs via shuffled prefix.
    std::vector<std::size_t> embb;
    for (std::size_t k = 0; k < dep.num_ues(); ++k)
        if (dep.ue_slice[k] == Slice::embb) embb.push_back(k);
    std::shuffle(embb.begin(), embb.end(), rng);
    std::vector<bool> premium(dep.num_ues(), false);
    const auto n_premium = static_cast<std::size_t>(std::lround(0.3 * static_cast<double>(embb.size())));
    for (std::size_t i = 0; i < n_premium; ++i) premium[embb[i]] = true;

    std::vector<UeProfile> profiles(dep.num_ues());
    for (std::size_t k = 0; k < dep.num_ues(); ++k) {
        UeProfile& p = profiles[k];
        p.slice = dep.ue_slice[k];
        if (p.slice == Slice::urllc) {
            p.packet_bytes = bytes(rng);
            p.packet_bits = 8.0 * p.packet_bytes;
            p.arrival_rate = arrivals(rng);
            p.delay_budget = budget(rng);
            p.weight = urllc_weight(rng);
            p.error_prob = 1e-5;
        } else {
            p.premium = premium[k];
            p.weight = p.premium ? 1.5 : 1.0;
            p.min_rate = p.premium ? premium_rate(rng) : standard_rate(rng);
        }
    }
    return profiles;
}

}  // namespace slicecf
