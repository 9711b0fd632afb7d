#include "slicecf/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace slicecf {

PlotKind parse_plot_kind(std::string_view name) {
    if (name == "sumrate") return PlotKind::sumrate;
    if (name == "success") return PlotKind::success;
    if (name == "runtime") return PlotKind::runtime;
    if (name == "sensitivity") return PlotKind::sensitivity;
    throw ConfigError("unknown plot kind: " + std::string(name));
}

namespace {

constexpr std::array<const char*, kNumSchemes> kColors{"#1f77b4", "#d62728", "#2ca02c"};
constexpr double kPanelWidth = 520.0;
constexpr double kPanelHeight = 340.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 55.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

double nice_step(double range) {
    if (!(range > 0.0)) return 1.0;
    const double raw = range / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
        if (raw <= m * mag) return m * mag;
    return 10.0 * mag;
}

using Metric = std::function<double(const SweepPoint&, Scheme)>;

struct Panel {
    std::string title;
    std::string y_label;
    Metric metric;
};

class Chart {
public:
    Chart(double width, double height) : width_(width), height_(height) {
        out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
             << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
             << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n"
             << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
             << "\" fill=\"white\"/>\n";
    }

    void text(double x, double y, const std::string& s, const char* anchor = "middle", double rotate = 0.0) {
        out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"sans-serif\" font-size=\"12\" "
             << "text-anchor=\"" << anchor << '"';
        if (rotate != 0.0) out_ << " transform=\"rotate(" << num(rotate) << ' ' << num(x) << ' ' << num(y) << ")\"";
        out_ << '>' << s << "</text>\n";
    }

    void line(double x0, double y0, double x1, double y1, const char* stroke = "black", double w = 1.0) {
        out_ << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x1) << "\" y2=\"" << num(y1)
             << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(w) << "\"/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const char* stroke, const std::string& id) {
        out_ << "<polyline class=\"series\" id=\"" << id << "\" fill=\"none\" stroke=\"" << stroke
             << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i)
            out_ << (i ? " " : "") << num(pts[i].first) << ',' << num(pts[i].second);
        out_ << "\"/>\n";
        for (const auto& [x, y] : pts)
            out_ << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"3\" fill=\"" << stroke << "\"/>\n";
    }

    void rect(double x, double y, double w, double h, const char* fill, const std::string& cls) {
        out_ << "<rect class=\"" << cls << "\" x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
             << "\" height=\"" << num(h) << "\" fill=\"" << fill << "\"/>\n";
    }

    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

    double width() const { return width_; }
    double height() const { return height_; }

private:
    double width_;
    double height_;
    std::ostringstream out_;
};

struct Axes {
    double left, top, plot_w, plot_h;
    double y_max;
    double y_of(double v) const { return top + plot_h - plot_h * v / y_max; }
};

Axes draw_axes(Chart& c, double origin_x, double origin_y, const Panel& panel, double data_max,
               const std::string& x_label) {
    Axes a{origin_x + kMarginLeft, origin_y + kMarginTop, kPanelWidth - kMarginLeft - kMarginRight,
           kPanelHeight - kMarginTop - kMarginBottom, 1.0};
    const double step = nice_step(data_max > 0.0 ? data_max : 1.0);
    a.y_max = step * std::max(1.0, std::ceil(data_max / step));
    c.text(origin_x + kPanelWidth / 2, origin_y + 22, panel.title);
    c.line(a.left, a.top, a.left, a.top + a.plot_h);
    c.line(a.left, a.top + a.plot_h, a.left + a.plot_w, a.top + a.plot_h);
    for (double v = 0.0; v <= a.y_max + 1e-9 * a.y_max; v += step) {
        const double y = a.y_of(v);
        c.line(a.left - 4, y, a.left, y);
        c.line(a.left, y, a.left + a.plot_w, y, "#e0e0e0", 0.5);
        c.text(a.left - 7, y + 4, tick_label(v), "end");
    }
    c.text(a.left + a.plot_w / 2, origin_y + kPanelHeight - 12, x_label);
    c.text(origin_x + 16, a.top + a.plot_h / 2, panel.y_label, "middle", -90.0);
    return a;
}

void draw_legend(Chart& c, double x, double y) {
    for (Scheme s : kSchemes) {
        const auto i = static_cast<std::size_t>(s);
        c.rect(x + 110.0 * i, y - 10, 12, 12, kColors[i], "legend");
        c.text(x + 110.0 * i + 18, y, std::string(scheme_name(s)), "start");
    }
}

double sweep_x(const CampaignMetrics& campaign, const SweepPoint& p) {
    return campaign.kind == SweepKind::mix ? p.urllc_fraction : static_cast<double>(p.num_ues);
}

std::string x_axis_label(const CampaignMetrics& campaign) {
    return campaign.kind == SweepKind::mix ? "URLLC fraction of UEs" : "number of UEs K";
}

std::string line_chart(const CampaignMetrics& campaign, const std::vector<Panel>& panels,
                       const std::vector<Scheme>& schemes) {
    if (campaign.points.size() < 2) throw ConfigError("line plots need at least two sweep points");
    Chart c(kPanelWidth * panels.size(), kPanelHeight + 30);
    double x_min = sweep_x(campaign, campaign.points.front());
    double x_max = x_min;
    for (const auto& p : campaign.points) {
        x_min = std::min(x_min, sweep_x(campaign, p));
        x_max = std::max(x_max, sweep_x(campaign, p));
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        const Panel& panel = panels[pi];
        double data_max = 0.0;
        for (const auto& p : campaign.points)
            for (Scheme s : schemes) data_max = std::max(data_max, panel.metric(p, s));
        const Axes a = draw_axes(c, kPanelWidth * pi, 0.0, panel, data_max, x_axis_label(campaign));
        auto x_of = [&](double x) { return a.left + a.plot_w * (x - x_min) / (x_max - x_min); };
        for (const auto& p : campaign.points) {
            const double x = x_of(sweep_x(campaign, p));
            c.line(x, a.top + a.plot_h, x, a.top + a.plot_h + 4);
            c.text(x, a.top + a.plot_h + 18, tick_label(sweep_x(campaign, p)));
        }
        for (Scheme s : schemes) {
            std::vector<std::pair<double, double>> pts;
            for (const auto& p : campaign.points) pts.emplace_back(x_of(sweep_x(campaign, p)), a.y_of(panel.metric(p, s)));
            c.polyline(pts, kColors[static_cast<std::size_t>(s)],
                       std::string(scheme_name(s)) + "-" + std::to_string(pi));
        }
    }
    draw_legend(c, kMarginLeft, kPanelHeight + 20);
    return c.finish();
}

std::string bar_chart(const CampaignMetrics& campaign, const std::vector<Panel>& panels) {
    if (campaign.points.empty()) throw ConfigError("sensitivity plot needs at least one sweep point");
    Chart c(kPanelWidth * panels.size(), kPanelHeight + 30);
    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        const Panel& panel = panels[pi];
        double data_max = 0.0;
        for (const auto& p : campaign.points)
            for (Scheme s : kSchemes) data_max = std::max(data_max, panel.metric(p, s));
        const Axes a = draw_axes(c, kPanelWidth * pi, 0.0, panel, data_max, "eMBB/URLLC mix");
        const double group_w = a.plot_w / static_cast<double>(campaign.points.size());
        const double bar_w = group_w * 0.8 / kNumSchemes;
        for (std::size_t g = 0; g < campaign.points.size(); ++g) {
            const auto& p = campaign.points[g];
            const double gx = a.left + group_w * g + group_w * 0.1;
            for (Scheme s : kSchemes) {
                const auto i = static_cast<std::size_t>(s);
                const double v = panel.metric(p, s);
                const double y = a.y_of(v);
                c.rect(gx + bar_w * i, y, bar_w, a.top + a.plot_h - y, kColors[i], "bar");
            }
            const int embb_pct = static_cast<int>(std::lround(100.0 * (1.0 - p.urllc_fraction)));
            c.text(gx + group_w * 0.4, a.top + a.plot_h + 18,
                   std::to_string(embb_pct) + "/" + std::to_string(100 - embb_pct));
        }
    }
    draw_legend(c, kMarginLeft, kPanelHeight + 20);
    return c.finish();
}

double mbps(const SweepPoint& p, Scheme s) { return p[s].weighted_sum_rate.mean / 1e6; }
double embb_pct(const SweepPoint& p, Scheme s) { return 100.0 * p[s].embb_success_rate.mean; }
double urllc_pct(const SweepPoint& p, Scheme s) { return 100.0 * p[s].urllc_success_rate.mean; }

}  // namespace

std::string render_plot(const CampaignMetrics& campaign, PlotKind kind) {
    const std::vector<Scheme> all(kSchemes.begin(), kSchemes.end());
    switch (kind) {
        case PlotKind::sumrate:
            return line_chart(campaign, {{"Average weighted sum-rate", "weighted sum-rate (Mbps)", mbps}}, all);
        case PlotKind::success:
            return line_chart(campaign,
                              {{"eMBB success rate", "success rate (%)", embb_pct},
                               {"URLLC success rate", "success rate (%)", urllc_pct}},
                              all);
        case PlotKind::runtime:
            return line_chart(campaign,
                              {{"Median allocation runtime", "runtime (us)",
                                [](const SweepPoint& p, Scheme s) { return p[s].runtime_ns_median / 1e3; }}},
                              all);
        case PlotKind::sensitivity:
            return bar_chart(campaign, {{"Weighted sum-rate", "weighted sum-rate (Mbps)", mbps},
                                        {"eMBB success rate", "success rate (%)", embb_pct},
                                        {"URLLC success rate", "success rate (%)", urllc_pct}});
    }
    throw std::invalid_argument("unknown plot kind");
}

void emit_plot(const CampaignMetrics& campaign, PlotKind kind, const std::filesystem::path& path) {
    const std::string svg = render_plot(campaign, kind);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << svg;
}

}  // namespace slicecf
