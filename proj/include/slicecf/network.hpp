#ifndef SLICECF_NETWORK_HPP
#define SLICECF_NETWORK_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "slicecf/config.hpp"

namespace slicecf {

using Point = Eigen::Vector2d;

struct Deployment {
    std::vector<Point> ap_positions;
    std::vector<Point> ue_positions;
    std::vector<Slice> ue_slice;

    std::size_t num_ues() const { return ue_positions.size(); }
};

/// Per-UE QoS contract. Fields that do not apply to the UE's slice stay zero.
struct UeProfile {
    Slice slice = Slice::embb;
    double weight = 1.0;
    bool premium = false;     // eMBB only
    double min_rate = 0.0;    // eMBB, bits/s
    int packet_bytes = 0;     // URLLC
    double packet_bits = 0.0; // URLLC, 8 * packet_bytes
    double arrival_rate = 0.0;// URLLC, packets/s
    double delay_budget = 0.0;// URLLC, seconds
    double error_prob = 0.0;  // URLLC decoding error target
};

/// Large-scale channel statistics for one drop. Pilot indices are 0-based.
struct ChannelState {
    Eigen::MatrixXd beta;  // K x M, linear
    std::vector<int> pilot_index;
    Eigen::VectorXd eta_p;
    Eigen::VectorXd eta_d;
    std::vector<std::vector<int>> serving;
    double rho_p = 0.0;
    double rho_d = 0.0;
    int tau_p = 1;
    int antennas = 1;

    Eigen::Index num_ues() const { return beta.rows(); }
    Eigen::Index num_aps() const { return beta.cols(); }
};

Deployment generate_deployment(const SimConfig& cfg, std::uint64_t seed);

/// Toroidal distance: minimum over the 9 lattice translates of b.
double wrap_distance(const Point& a, const Point& b, double side);

/// COST-Hata constant L in dB for the configured frequency and antenna heights.
double cost_hata_constant(const SimConfig& cfg);

/// Three-slope path loss in dB (negative). Distances below 1 m are clamped.
double path_loss_db(double distance_m, const SimConfig& cfg);

/// Linear LSFC; shadowing with standard draw z applies only beyond d1.
double large_scale_coeff(double distance_m, double z, const SimConfig& cfg);

/// Uniform i.i.d. pilot indices in [0, tau_p).
std::vector<int> assign_pilots(int num_ues, int tau_p, std::uint64_t seed);

/// Shortest AP prefix (by descending beta) reaching fraction of the row's beta sum.
std::vector<std::vector<int>> associate(const Eigen::MatrixXd& beta, double fraction);

struct PowerControl {
    Eigen::VectorXd eta_p;
    Eigen::VectorXd eta_d;
};

/// Full pilot power; data power equalizes aggregate received power to the
/// median UE, capped at 1.
PowerControl power_control(const Eigen::MatrixXd& beta, const std::vector<std::vector<int>>& serving);

Eigen::MatrixXd large_scale_matrix(const Deployment& dep, const SimConfig& cfg, std::uint64_t seed);

ChannelState build_channel(const Deployment& dep, const SimConfig& cfg, std::uint64_t seed);

std::vector<UeProfile> generate_profiles(const Deployment& dep, std::uint64_t seed);

/// Independent generator per (seed, stream) so stages do not share draws.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace slicecf

#endif  // SLICECF_NETWORK_HPP
