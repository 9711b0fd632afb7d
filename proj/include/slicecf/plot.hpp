#ifndef SLICECF_PLOT_HPP
#define SLICECF_PLOT_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "slicecf/harness.hpp"

namespace slicecf {

enum class PlotKind : std::uint8_t { sumrate, success, runtime, sensitivity };
PlotKind parse_plot_kind(std::string_view name);

/// Self-contained SVG document. Line kinds need at least two sweep points.
std::string render_plot(const CampaignMetrics& campaign, PlotKind kind);

void emit_plot(const CampaignMetrics& campaign, PlotKind kind, const std::filesystem::path& path);

}  // namespace slicecf

#endif  // SLICECF_PLOT_HPP
