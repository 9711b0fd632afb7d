#include "slicecf/export.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace slicecf {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Scheme parse_scheme(const std::string& name) {
    for (Scheme s : kSchemes)
        if (scheme_name(s) == name) return s;
    throw std::invalid_argument("unknown scheme: " + name);
}

Termination parse_termination(const std::string& name) {
    for (Termination t : {Termination::mu_balanced, Termination::transfer_floor, Termination::patience,
                          Termination::max_iter})
        if (termination_name(t) == name) return t;
    throw std::invalid_argument("unknown termination reason: " + name);
}

nlohmann::json to_json(const MeanStderr& m) { return {{"mean", m.mean}, {"stderr", m.std_error}}; }
MeanStderr mean_stderr_from(const nlohmann::json& j) { return {j.at("mean").get<double>(), j.at("stderr").get<double>()}; }

nlohmann::json to_json(const SchemeMetrics& m) {
    return {{"weighted_sum_rate", m.weighted_sum_rate}, {"embb_success_rate", m.embb_success_rate},
            {"urllc_success_rate", m.urllc_success_rate}, {"admitted_urllc", m.admitted_urllc},
            {"admitted_embb", m.admitted_embb},         {"runtime_ns", m.runtime_ns},
            {"iterations", m.iterations}};
}

SchemeMetrics scheme_metrics_from(const nlohmann::json& j) {
    SchemeMetrics m;
    m.weighted_sum_rate = j.at("weighted_sum_rate").get<double>();
    m.embb_success_rate = j.at("embb_success_rate").get<double>();
    m.urllc_success_rate = j.at("urllc_success_rate").get<double>();
    m.admitted_urllc = j.at("admitted_urllc").get<int>();
    m.admitted_embb = j.at("admitted_embb").get<int>();
    m.runtime_ns = j.at("runtime_ns").get<std::int64_t>();
    m.iterations = j.at("iterations").get<int>();
    return m;
}

nlohmann::json to_json(const DropMetrics& d) {
    nlohmann::json schemes = nlohmann::json::object();
    for (Scheme s : kSchemes) schemes[std::string(scheme_name(s))] = to_json(d[s]);
    const auto& st = d.stages;
    const auto& iv = d.invariants;
    return {{"seed", d.seed},
            {"K", d.num_ues},
            {"mix", d.urllc_fraction},
            {"schemes", schemes},
            {"runtime_ns",
             {{"channel", st.channel},
              {"link", st.link},
              {"admission", st.admission},
              {"allocation", st.allocation},
              {"oracle", st.oracle},
              {"baseline", st.baseline}}},
            {"invariant_violations",
             {{"budget_conservation", iv.budget_conservation},
              {"slice_sum", iv.slice_sum},
              {"below_minimum", iv.below_minimum},
              {"admitted_qos", iv.admitted_qos},
              {"oracle_dominance", iv.oracle_dominance}}},
            {"termination", std::string(termination_name(d.termination))}};
}

DropMetrics drop_from(const nlohmann::json& j) {
    DropMetrics d;
    d.seed = j.at("seed").get<std::uint64_t>();
    d.num_ues = j.at("K").get<int>();
    d.urllc_fraction = j.at("mix").get<double>();
    for (const auto& [name, v] : j.at("schemes").items())
        d.schemes[static_cast<std::size_t>(parse_scheme(name))] = scheme_metrics_from(v);
    const auto& rt = j.at("runtime_ns");
    d.stages = {rt.at("channel").get<std::int64_t>(),    rt.at("link").get<std::int64_t>(),
                rt.at("admission").get<std::int64_t>(),  rt.at("allocation").get<std::int64_t>(),
                rt.at("oracle").get<std::int64_t>(),     rt.at("baseline").get<std::int64_t>()};
    const auto& iv = j.at("invariant_violations");
    d.invariants = {iv.at("budget_conservation").get<int>(), iv.at("slice_sum").get<int>(),
                    iv.at("below_minimum").get<int>(), iv.at("admitted_qos").get<int>(),
                    iv.at("oracle_dominance").get<int>()};
    d.termination = parse_termination(j.at("termination").get<std::string>());
    return d;
}

nlohmann::json to_json(const SchemeSummary& s) {
    return {{"weighted_sum_rate", to_json(s.weighted_sum_rate)},
            {"embb_success_rate", to_json(s.embb_success_rate)},
            {"urllc_success_rate", to_json(s.urllc_success_rate)},
            {"admitted_urllc", to_json(s.admitted_urllc)},
            {"admitted_embb", to_json(s.admitted_embb)},
            {"iterations", to_json(s.iterations)},
            {"runtime_ns_median", s.runtime_ns_median}};
}

SchemeSummary summary_from(const nlohmann::json& j) {
    SchemeSummary s;
    s.weighted_sum_rate = mean_stderr_from(j.at("weighted_sum_rate"));
    s.embb_success_rate = mean_stderr_from(j.at("embb_success_rate"));
    s.urllc_success_rate = mean_stderr_from(j.at("urllc_success_rate"));
    s.admitted_urllc = mean_stderr_from(j.at("admitted_urllc"));
    s.admitted_embb = mean_stderr_from(j.at("admitted_embb"));
    s.iterations = mean_stderr_from(j.at("iterations"));
    s.runtime_ns_median = j.at("runtime_ns_median").get<double>();
    return s;
}

}  // namespace

void write_drops_csv(std::ostream& out, const CampaignMetrics& campaign) {
    out << "seed,K,mix,scheme,weighted_sum_rate,embb_success,urllc_success,admitted_urllc,admitted_embb,runtime_ns,"
           "iterations\n";
    for (const auto& point : campaign.points) {
        for (const auto& d : point.drop_metrics) {
            for (Scheme s : kSchemes) {
                const SchemeMetrics& m = d[s];
                out << d.seed << ',' << d.num_ues << ',' << fmt_double(d.urllc_fraction) << ',' << scheme_name(s)
                    << ',' << fmt_double(m.weighted_sum_rate) << ',' << fmt_double(m.embb_success_rate) << ','
                    << fmt_double(m.urllc_success_rate) << ',' << m.admitted_urllc << ',' << m.admitted_embb << ','
                    << m.runtime_ns << ',' << m.iterations << '\n';
            }
        }
    }
}

nlohmann::json campaign_to_json(const CampaignMetrics& campaign) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : campaign.points) {
        nlohmann::json schemes = nlohmann::json::object();
        for (Scheme s : kSchemes) schemes[std::string(scheme_name(s))] = to_json(p[s]);
        nlohmann::json drops = nlohmann::json::array();
        for (const auto& d : p.drop_metrics) drops.push_back(to_json(d));
        points.push_back({{"K", p.num_ues},
                          {"mix", p.urllc_fraction},
                          {"drops", p.drops},
                          {"seeds", p.seeds},
                          {"schemes", schemes},
                          {"drop_metrics", drops}});
    }
    return {{"sweep", std::string(sweep_kind_name(campaign.kind))},
            {"master_seed", campaign.master_seed},
            {"points", points}};
}

CampaignMetrics campaign_from_json(const nlohmann::json& j) {
    CampaignMetrics c;
    try {
        c.kind = parse_sweep_kind(j.at("sweep").get<std::string>());
        c.master_seed = j.at("master_seed").get<std::uint64_t>();
        for (const auto& pj : j.at("points")) {
            SweepPoint p;
            p.num_ues = pj.at("K").get<int>();
            p.urllc_fraction = pj.at("mix").get<double>();
            p.drops = pj.at("drops").get<int>();
            p.seeds = pj.at("seeds").get<std::vector<std::uint64_t>>();
            for (const auto& [name, v] : pj.at("schemes").items())
                p.schemes[static_cast<std::size_t>(parse_scheme(name))] = summary_from(v);
            for (const auto& dj : pj.at("drop_metrics")) p.drop_metrics.push_back(drop_from(dj));
            c.points.push_back(std::move(p));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed campaign JSON: ") + e.what());
    }
    return c;
}

void save_campaign_json(const std::filesystem::path& path, const CampaignMetrics& campaign) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << campaign_to_json(campaign).dump(2) << '\n';
}

CampaignMetrics load_campaign_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open campaign file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("malformed campaign JSON: ") + e.what());
    }
    return campaign_from_json(j);
}

void save_drops_csv(const std::filesystem::path& path, const CampaignMetrics& campaign) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_drops_csv(out, campaign);
}

}  // namespace slicecf
