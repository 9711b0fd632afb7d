#include "slicecf/link_metrics.hpp"

#include <limits>
#include <numbers>

namespace slicecf {

EstimationQuality<double> estimation_quality(const ChannelState& state) {
    return estimation_quality<double>(state.beta, state.pilot_index, state.eta_p, state.tau_p, state.rho_p);
}

double uplink_sinr(Eigen::Index k, const ChannelState& state, const Eigen::MatrixXd& gamma) {
    return uplink_sinr<double>(k, state.beta, gamma, state.pilot_index, state.eta_p, state.eta_d, state.serving[k],
                               state.antennas, state.rho_d);
}

double pilot_contamination_term(Eigen::Index k, const ChannelState& state, const Eigen::MatrixXd& gamma) {
    double coherent = 0.0;
    for (Eigen::Index j = 0; j < state.num_ues(); ++j) {
        if (j == k || state.pilot_index[j] != state.pilot_index[k]) continue;
        double aligned = 0.0;
        for (int m : state.serving[k])
            aligned += gamma(k, m) * std::sqrt(state.eta_p[j] / state.eta_p[k]) * state.beta(j, m) / state.beta(k, m);
        coherent += state.eta_d[j] * aligned * aligned;
    }
    return coherent;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double q_inverse(double theta) {
    if (!(theta > 0.0 && theta < 1.0)) throw std::domain_error("q_inverse: theta must be in (0,1)");
    // Q is strictly decreasing; bisect until the bracket collapses, then one Newton polish.
    double lo = -40.0;
    double hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (q_function(mid) > theta) lo = mid;
        else hi = mid;
    }
    double x = 0.5 * (lo + hi);
    const double density = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    if (density > 0.0) x += (q_function(x) - theta) / density;
    return x;
}

double channel_dispersion(double sinr) {
    const double inv = 1.0 / (1.0 + sinr);
    return 1.0 - inv * inv;
}

double spectral_efficiency(double sinr, const UeProfile& profile, const SimConfig& cfg) {
    const double prelog = 1.0 - cfg.pilot_overhead();
    const double shannon = std::log2(1.0 + sinr);
    if (profile.slice == Slice::embb) return prelog * shannon;
    const double blocklength = cfg.blocklength_per_byte * profile.packet_bytes;
    const double penalty =
        std::sqrt(channel_dispersion(sinr) / blocklength) * q_inverse(profile.error_prob) / std::numbers::ln2;
    return prelog * (shannon - penalty);
}

double urllc_min_rate(const UeProfile& profile) {
    if (profile.slice != Slice::urllc) throw std::invalid_argument("urllc_min_rate: eMBB profile");
    if (!(profile.delay_budget > 0.0)) throw std::invalid_argument("urllc_min_rate: delay budget must be > 0");
    return profile.packet_bits * (profile.arrival_rate + 1.0 / profile.delay_budget);
}

double min_bandwidth(double se, double r_min) {
    if (se <= 0.0) return std::numeric_limits<double>::infinity();
    return r_min / se;
}

double delay(double rate, const UeProfile& profile) {
    if (profile.slice != Slice::urllc) throw std::invalid_argument("delay: eMBB profile");
    const double service = rate / profile.packet_bits;
    if (!(service > profile.arrival_rate)) return std::numeric_limits<double>::infinity();
    return 1.0 / (service - profile.arrival_rate);
}

LinkMetrics compute_link_metrics(const ChannelState& state, std::span<const UeProfile> profiles,
                                 const SimConfig& cfg) {
    auto quality = estimation_quality(state);
    const Eigen::Index num_ues = state.num_ues();
    LinkMetrics lm;
    lm.sinr.resize(num_ues);
    lm.se.resize(num_ues);
    lm.dispersion.resize(num_ues);
    lm.b_min.resize(num_ues);
    lm.r_min_effective.resize(num_ues);
    for (Eigen::Index k = 0; k < num_ues; ++k) {
        const UeProfile& p = profiles[k];
        lm.sinr[k] = uplink_sinr(k, state, quality.gamma);
        lm.se[k] = spectral_efficiency(lm.sinr[k], p, cfg);
        lm.dispersion[k] = p.slice == Slice::urllc ? channel_dispersion(lm.sinr[k]) : 0.0;
        lm.r_min_effective[k] = p.slice == Slice::urllc ? urllc_min_rate(p) : p.min_rate;
        lm.b_min[k] = min_bandwidth(lm.se[k], lm.r_min_effective[k]);
    }
    lm.c = std::move(quality.c);
    lm.gamma = std::move(quality.gamma);
    return lm;
}

}  // namespace slicecf
