#include "slicecf/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>

namespace slicecf {

std::string_view slice_name(Slice s) { return s == Slice::urllc ? "urllc" : "embb"; }

namespace {

constexpr double kBoltzmann = 1.380649e-23;
constexpr double kReferenceTemperature = 290.0;

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid config: " + what);
}

template <typename T>
T read_value(const nlohmann::json& v, const std::string& key) {
    try {
        if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean()) throw ConfigError(key + " must be a boolean");
        } else if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer()) throw ConfigError(key + " must be an integer");
        } else {
            if (!v.is_number()) throw ConfigError(key + " must be a number");
        }
        return v.get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(key + ": " + e.what());
    }
}

using Setter = std::function<void(SimConfig&, const nlohmann::json&)>;

template <typename T>
Setter field(T SimConfig::*member, const std::string& key) {
    return [member, key](SimConfig& c, const nlohmann::json& v) { c.*member = read_value<T>(v, key); };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"area_side", field(&SimConfig::area_side, "area_side")},
        {"num_aps", field(&SimConfig::num_aps, "num_aps")},
        {"antennas_per_ap", field(&SimConfig::antennas_per_ap, "antennas_per_ap")},
        {"num_ues", field(&SimConfig::num_ues, "num_ues")},
        {"slice_mix",
         [](SimConfig& c, const nlohmann::json& v) {
             if (!v.is_object()) throw ConfigError("slice_mix must be an object {embb, urllc}");
             for (const auto& [k, x] : v.items()) {
                 if (k == "embb") c.slice_mix.embb = read_value<double>(x, "slice_mix.embb");
                 else if (k == "urllc") c.slice_mix.urllc = read_value<double>(x, "slice_mix.urllc");
                 else throw ConfigError("unknown key slice_mix." + k);
             }
         }},
        {"tau_p", field(&SimConfig::tau_p, "tau_p")},
        {"tau_c", field(&SimConfig::tau_c, "tau_c")},
        {"pilot_power_mw", field(&SimConfig::pilot_power_mw, "pilot_power_mw")},
        {"data_power_mw", field(&SimConfig::data_power_mw, "data_power_mw")},
        {"shadow_std_db", field(&SimConfig::shadow_std_db, "shadow_std_db")},
        {"total_bandwidth", field(&SimConfig::total_bandwidth, "total_bandwidth")},
        {"noise_ref_bandwidth", field(&SimConfig::noise_ref_bandwidth, "noise_ref_bandwidth")},
        {"noise_figure_db", field(&SimConfig::noise_figure_db, "noise_figure_db")},
        {"carrier_freq_mhz", field(&SimConfig::carrier_freq_mhz, "carrier_freq_mhz")},
        {"ap_height_m", field(&SimConfig::ap_height_m, "ap_height_m")},
        {"ue_height_m", field(&SimConfig::ue_height_m, "ue_height_m")},
        {"d0_m", field(&SimConfig::d0_m, "d0_m")},
        {"d1_m", field(&SimConfig::d1_m, "d1_m")},
        {"association_fraction", field(&SimConfig::association_fraction, "association_fraction")},
        {"rng_seed", field(&SimConfig::rng_seed, "rng_seed")},
        {"blocklength_per_byte", field(&SimConfig::blocklength_per_byte, "blocklength_per_byte")},
        {"embb_min_fraction", field(&SimConfig::embb_min_fraction, "embb_min_fraction")},
        {"t_max", field(&SimConfig::t_max, "t_max")},
        {"t_patience", field(&SimConfig::t_patience, "t_patience")},
        {"eps_transfer", field(&SimConfig::eps_transfer, "eps_transfer")},
        {"delta_b", field(&SimConfig::delta_b, "delta_b")},
        {"mu_ratio", field(&SimConfig::mu_ratio, "mu_ratio")},
        {"shrink_on_reject", field(&SimConfig::shrink_on_reject, "shrink_on_reject")},
    };
    return table;
}

}  // namespace

void SimConfig::validate() const {
    require(std::isfinite(area_side) && area_side > 0, "area_side must be > 0");
    require(num_aps >= 1, "num_aps must be >= 1");
    require(antennas_per_ap >= 1, "antennas_per_ap must be >= 1");
    require(num_ues >= 1, "num_ues must be >= 1");
    require(slice_mix.embb >= 0 && slice_mix.urllc >= 0, "slice fractions must be non-negative");
    require(std::abs(slice_mix.embb + slice_mix.urllc - 1.0) <= 1e-9, "slice fractions must sum to 1");
    require(tau_p >= 1 && tau_p <= tau_c, "require 0 < tau_p <= tau_c");
    require(pilot_power_mw > 0 && data_power_mw > 0, "transmit powers must be > 0");
    require(shadow_std_db >= 0, "shadow_std_db must be >= 0");
    require(std::isfinite(total_bandwidth) && total_bandwidth > 0, "total_bandwidth must be > 0");
    require(noise_ref_bandwidth > 0, "noise_ref_bandwidth must be > 0");
    require(carrier_freq_mhz > 0 && ap_height_m > 0 && ue_height_m > 0, "frequency and heights must be > 0");
    require(d0_m > 0 && d1_m > d0_m, "require 0 < d0_m < d1_m");
    require(association_fraction > 0 && association_fraction <= 1, "association_fraction must be in (0,1]");
    require(blocklength_per_byte > 0, "blocklength_per_byte must be > 0");
    require(embb_min_fraction >= 0 && embb_min_fraction < 1, "embb_min_fraction must be in [0,1)");
    require(t_max >= 0 && t_patience >= 1, "t_max must be >= 0 and t_patience >= 1");
    require(eps_transfer > 0 && delta_b > 0, "eps_transfer and delta_b must be > 0");
    require(mu_ratio > 1, "mu_ratio must be > 1");
}

double SimConfig::noise_power_mw() const {
    // kT0 B F, converted from W to mW.
    return kBoltzmann * kReferenceTemperature * noise_ref_bandwidth * std::pow(10.0, noise_figure_db / 10.0) * 1e3;
}

int SimConfig::num_urllc() const { return static_cast<int>(std::lround(num_ues * slice_mix.urllc)); }

SimConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config document must be a JSON object");
    SimConfig cfg;
    const auto& table = setters();
    for (const auto& [key, value] : j.items()) {
        auto it = table.find(key);
        if (it == table.end()) throw ConfigError("unknown config key: " + key);
        it->second(cfg, value);
    }
    cfg.validate();
    return cfg;
}

nlohmann::json config_to_json(const SimConfig& c) {
    return {
        {"area_side", c.area_side},
        {"num_aps", c.num_aps},
        {"antennas_per_ap", c.antennas_per_ap},
        {"num_ues", c.num_ues},
        {"slice_mix", {{"embb", c.slice_mix.embb}, {"urllc", c.slice_mix.urllc}}},
        {"tau_p", c.tau_p},
        {"tau_c", c.tau_c},
        {"pilot_power_mw", c.pilot_power_mw},
        {"data_power_mw", c.data_power_mw},
        {"shadow_std_db", c.shadow_std_db},
        {"total_bandwidth", c.total_bandwidth},
        {"noise_ref_bandwidth", c.noise_ref_bandwidth},
        {"noise_figure_db", c.noise_figure_db},
        {"carrier_freq_mhz", c.carrier_freq_mhz},
        {"ap_height_m", c.ap_height_m},
        {"ue_height_m", c.ue_height_m},
        {"d0_m", c.d0_m},
        {"d1_m", c.d1_m},
        {"association_fraction", c.association_fraction},
        {"rng_seed", c.rng_seed},
        {"blocklength_per_byte", c.blocklength_per_byte},
        {"embb_min_fraction", c.embb_min_fraction},
        {"t_max", c.t_max},
        {"t_patience", c.t_patience},
        {"eps_transfer", c.eps_transfer},
        {"delta_b", c.delta_b},
        {"mu_ratio", c.mu_ratio},
        {"shrink_on_reject", c.shrink_on_reject},
    };
}

SimConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("malformed config JSON: " + std::string(e.what()));
    }
    return config_from_json(j);
}

}  // namespace slicecf
