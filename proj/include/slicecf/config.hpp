#ifndef SLICECF_CONFIG_HPP
#define SLICECF_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace slicecf {

/// Slice labels double as slice indices; URLLC is slice 0 so it wins index ties.
enum class Slice : std::uint8_t { urllc = 0, embb = 1 };
inline constexpr std::size_t kNumSlices = 2;

constexpr std::size_t slice_index(Slice s) { return static_cast<std::size_t>(s); }
std::string_view slice_name(Slice s);

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a bandwidth budget cannot cover the minimum demands placed in it.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SliceMix {
    double embb = 0.7;
    double urllc = 0.3;
};

/// Simulation parameters. Lengths in meters, powers in mW, bandwidths in Hz.
struct SimConfig {
    double area_side = 1000.0;
    int num_aps = 100;
    int antennas_per_ap = 4;
    int num_ues = 100;
    SliceMix slice_mix{};
    int tau_p = 10;
    int tau_c = 200;
    double pilot_power_mw = 100.0;
    double data_power_mw = 100.0;
    double shadow_std_db = 8.0;
    double total_bandwidth = 80e6;
    double noise_ref_bandwidth = 20e6;
    double noise_figure_db = 9.0;
    double carrier_freq_mhz = 1900.0;
    double ap_height_m = 15.0;
    double ue_height_m = 1.65;
    double d0_m = 10.0;
    double d1_m = 50.0;
    double association_fraction = 0.95;
    std::uint64_t rng_seed = 1;

    // Channel uses per packet byte in the finite-blocklength dispersion term.
    double blocklength_per_byte = 8.0;
    // eMBB soft floor as a fraction of total_bandwidth (admission stage 1 only).
    double embb_min_fraction = 0.2;
    int t_max = 50;
    int t_patience = 5;
    double eps_transfer = 0.01e6;
    double delta_b = 0.1e6;
    double mu_ratio = 1.05;
    bool shrink_on_reject = false;

    /// Throws ConfigError on the first violated invariant.
    void validate() const;

    double noise_power_mw() const;
    double rho_p() const { return pilot_power_mw / noise_power_mw(); }
    double rho_d() const { return data_power_mw / noise_power_mw(); }
    double pilot_overhead() const { return static_cast<double>(tau_p) / tau_c; }
    int num_urllc() const;
};

/// Strict parse: unknown keys and type mismatches raise ConfigError.
SimConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const SimConfig& cfg);
SimConfig load_config(const std::filesystem::path& path);

}  // namespace slicecf

#endif  // SLICECF_CONFIG_HPP
