#include "sihdr/report.hpp"

#include <cstdio>
#include <json.hpp>

#include "sihdr/pipeline.hpp"

namespace sihdr {

namespace {

std::string fixed6(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

nlohmann::json to_json(const MetricReport& r)
{
    return nlohmann::json{{"gmsd", r.gmsd},
                          {"de_input", r.de_input},
                          {"de_output", r.de_output},
                          {"m_i", r.mean_illumination},
                          {"accepted", r.accepted},
                          {"solver_residual", r.solver_residual},
                          {"solver_iterations", r.solver_iterations},
                          {"metric_plane", "cielab_lightness"}};
}

} // namespace

std::string format_report(const MetricReport& r)
{
    std::string out = "# gmsd and entropy measured on CIELAB lightness (L*/100); NIQE not computed\n";
    out += "gmsd=" + fixed6(r.gmsd) + "\n";
    out += "de_input=" + fixed6(r.de_input) + "\n";
    out += "de_output=" + fixed6(r.de_output) + "\n";
    out += "m_i=" + fixed6(r.mean_illumination) + "\n";
    out += std::string("gate=") + (r.accepted ? "accepted" : "declined") + "\n";
    out += "solver_residual=" + fixed6(r.solver_residual) + "\n";
    out += "solver_iterations=" + std::to_string(r.solver_iterations) + "\n";
    return out;
}

std::string report_to_json(const MetricReport& report)
{
    return to_json(report).dump(2);
}

std::string report_to_json(const PipelineResult& result)
{
    nlohmann::json j = to_json(result.report);
    j["declined"] = result.declined;
    if (result.declined)
        j["decline_reason"] = result.decline_reason;
    j["levels_generated"] = result.trace.levels_generated;
    j["zero_weight_pixels"] = result.trace.zero_weight_pixels;
    return j.dump(2);
}

} // namespace sihdr
