#ifndef SLICECF_EXPORT_HPP
#define SLICECF_EXPORT_HPP

#include <filesystem>
#include <iosfwd>

#include <json.hpp>

#include "slicecf/harness.hpp"

namespace slicecf {

/// One row per drop per scheme:
/// seed,K,mix,scheme,weighted_sum_rate,embb_success,urllc_success,admitted_urllc,admitted_embb,runtime_ns,iterations
void write_drops_csv(std::ostream& out, const CampaignMetrics& campaign);

nlohmann::json campaign_to_json(const CampaignMetrics& campaign);
CampaignMetrics campaign_from_json(const nlohmann::json& j);

void save_campaign_json(const std::filesystem::path& path, const CampaignMetrics& campaign);
CampaignMetrics load_campaign_json(const std::filesystem::path& path);
void save_drops_csv(const std::filesystem::path& path, const CampaignMetrics& campaign);

}  // namespace slicecf

#endif  // SLICECF_EXPORT_HPP
