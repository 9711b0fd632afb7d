#ifndef SLICECF_LINK_METRICS_HPP
#define SLICECF_LINK_METRICS_HPP

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "slicecf/config.hpp"
#include "slicecf/network.hpp"

namespace slicecf {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct EstimationQuality {
    MatrixX<Scalar> c;
    MatrixX<Scalar> gamma;
};

/// MMSE estimate coefficients c_{k,m} and mean-square estimate power
/// gamma_{k,m}. Pilot contamination enters through UEs sharing a pilot index.
template <typename Scalar>
EstimationQuality<Scalar> estimation_quality(const MatrixX<Scalar>& beta, std::span<const int> pilots,
                                             const VectorX<Scalar>& eta_p, int tau_p, Scalar rho_p) {
    using std::sqrt;
    const Eigen::Index num_ues = beta.rows();
    const Eigen::Index num_aps = beta.cols();
    const Scalar pilot_snr = Scalar(tau_p) * rho_p;

    // Received pilot power per (pilot, AP).
    MatrixX<Scalar> per_pilot = MatrixX<Scalar>::Zero(tau_p, num_aps);
    for (Eigen::Index k = 0; k < num_ues; ++k) per_pilot.row(pilots[k]) += eta_p[k] * beta.row(k);

    EstimationQuality<Scalar> out{MatrixX<Scalar>(num_ues, num_aps), MatrixX<Scalar>(num_ues, num_aps)};
    for (Eigen::Index k = 0; k < num_ues; ++k) {
        const Scalar amp = sqrt(pilot_snr * eta_p[k]);
        for (Eigen::Index m = 0; m < num_aps; ++m) {
            const Scalar c = amp * beta(k, m) / (pilot_snr * per_pilot(pilots[k], m) + Scalar(1));
            out.c(k, m) = c;
            out.gamma(k, m) = amp * beta(k, m) * c;
        }
    }
    return out;
}

/// Closed-form uplink SINR of UE k with centralized combining over its serving set.
template <typename Scalar>
Scalar uplink_sinr(Eigen::Index k, const MatrixX<Scalar>& beta, const MatrixX<Scalar>& gamma,
                   std::span<const int> pilots, const VectorX<Scalar>& eta_p, const VectorX<Scalar>& eta_d,
                   std::span<const int> serving, int antennas, Scalar rho_d) {
    using std::sqrt;
    if (serving.empty()) throw std::invalid_argument("uplink_sinr: empty serving set");
    const Scalar n = Scalar(antennas);
    const Eigen::Index num_ues = beta.rows();

    Scalar gamma_sum(0);
    for (int m : serving) gamma_sum += gamma(k, m);
    const Scalar signal = n * n * rho_d * eta_d[k] * gamma_sum * gamma_sum;
    if (signal == Scalar(0)) return Scalar(0);

    Scalar non_coherent(0);
    Scalar coherent(0);
    for (Eigen::Index j = 0; j < num_ues; ++j) {
        Scalar cross(0);
        for (int m : serving) cross += gamma(k, m) * beta(j, m);
        non_coherent += eta_d[j] * cross;
        if (j != k && pilots[j] == pilots[k]) {
            const Scalar power_ratio = sqrt(eta_p[j] / eta_p[k]);
            Scalar aligned(0);
            for (int m : serving) aligned += gamma(k, m) * power_ratio * beta(j, m) / beta(k, m);
            coherent += eta_d[j] * aligned * aligned;
        }
    }
    const Scalar denom = n * rho_d * non_coherent + n * n * rho_d * coherent + n * gamma_sum;
    return signal / denom;
}

EstimationQuality<double> estimation_quality(const ChannelState& state);
double uplink_sinr(Eigen::Index k, const ChannelState& state, const Eigen::MatrixXd& gamma);

/// Coherent pilot-contamination term of the SINR denominator (without the N^2 rho_d factor).
double pilot_contamination_term(Eigen::Index k, const ChannelState& state, const Eigen::MatrixXd& gamma);

/// Inverse Gaussian Q-function; throws std::domain_error outside (0, 1).
double q_inverse(double theta);
double q_function(double x);

double channel_dispersion(double sinr);

/// Bits/s/Hz after pilot overhead. URLLC applies the normal-approximation
/// finite-blocklength penalty and may go negative.
double spectral_efficiency(double sinr, const UeProfile& profile, const SimConfig& cfg);

/// Service rate that keeps M/M/1 sojourn time at the delay budget.
double urllc_min_rate(const UeProfile& profile);

/// R_min / SE, or +infinity when se <= 0.
double min_bandwidth(double se, double r_min);

/// M/M/1 sojourn time at service rate R bits/s; +infinity if unstable.
double delay(double rate, const UeProfile& profile);

struct LinkMetrics {
    Eigen::MatrixXd c;
    Eigen::MatrixXd gamma;
    Eigen::VectorXd sinr;
    Eigen::VectorXd se;
    Eigen::VectorXd dispersion;
    Eigen::VectorXd b_min;
    Eigen::VectorXd r_min_effective;
};

LinkMetrics compute_link_metrics(const ChannelState& state, std::span<const UeProfile> profiles, const SimConfig& cfg);

}  // namespace slicecf

#endif  // SLICECF_LINK_METRICS_HPP
