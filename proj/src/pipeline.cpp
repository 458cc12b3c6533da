#include "sihdr/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "sihdr/enhance.hpp"
#include "sihdr/error.hpp"
#include "sihdr/fusion.hpp"
#include "sihdr/wls.hpp"

namespace sihdr {

Plane percentile_stretch(const Plane& p, double percentile)
{
    if (p.empty())
        throw InvalidInput("percentile_stretch: empty plane");
    std::vector<double> sorted(p.values().begin(), p.values().end());
    std::sort(sorted.begin(), sorted.end());
    auto at = [&](double pct) {
        const double pos = pct / 100.0 * static_cast<double>(sorted.size() - 1);
        return sorted[static_cast<std::size_t>(std::lround(pos))];
    };
    const double lo = at(percentile);
    const double hi = at(100.0 - percentile);
    Plane out = p;
    if (!(hi > lo))
        return out;
    for (double& v : out.values())
        v = (v - lo) / (hi - lo);
    return out;
}

namespace {

std::string format_gate_reason(double low, double high)
{
    std::ostringstream os;
    os << "mean illumination outside [" << low << ", " << high << "]";
    return os.str();
}

} // namespace

PipelineResult run_pipeline(const RgbImage& image, const PipelineConfig& config)
{
    config.validate();
    if (image.empty())
        throw InvalidInput("run_pipeline: empty image");

    PipelineResult result;
    RgbImage input = image;
    clamp_unit(input);

    const Plane luminance = extract_luminance(input);
    const SolveResult solved = wls_filter(luminance, config.lambda, config.alpha, config.eps, config.solver_tol,
                                          config.solver_max_iter);
    result.trace.solver_calls = 1;
    const Decomposition parts = retinex_decompose(luminance, solved.solution);

    MetricReport& report = result.report;
    report.mean_illumination = parts.stats.mean;
    report.solver_residual = solved.relative_residual;
    report.solver_iterations = solved.iterations;
    report.de_input = discrete_entropy(luminance);

    const bool dump = config.dump_intermediates;
    if (dump) {
        result.intermediates["L"] = luminance;
        result.intermediates["I"] = parts.illumination;
        result.intermediates["R"] = parts.reflectance;
        result.intermediates["BM"] = parts.brightness;
        result.intermediates["DM"] = parts.darkness;
    }

    const VirtualExposureSet vevs = select_vevs(parts.stats.mean, config.levels, config.gate_low, config.gate_high);
    report.accepted = vevs.accepted;
    if (!vevs.accepted) {
        result.declined = true;
        result.decline_reason = format_gate_reason(config.gate_low, config.gate_high);
        result.output = input;
        result.luminance_final = luminance;
        report.de_output = report.de_input;
        report.gmsd = 0.0;
        return result;
    }

    // Raw illumination statistics: m_I_raw = mean(I), M = max(I).
    const double max_illum = parts.stats.max;
    const double mean_illum_raw = plane_mean(parts.illumination);
    const Plane reflectance =
        selective_reflectance_scaling(parts.reflectance, parts.illumination, mean_illum_raw, config.gamma_r);

    const ScaleFunctionParams params{parts.stats.mean, config.sigma_s,
                                     scale_amplitude(std::min(mean_illum_raw, max_illum), max_illum), max_illum};

    ExposureStack stack;
    stack.levels.reserve(config.levels);
    for (std::size_t k = 0; k < vevs.levels.size(); ++k) {
        ExposureLevel level;
        level.vev = vevs.levels[k];
        level.scale = scale_function(level.vev, params);
        // Working on the raw illumination with DM scaled by M equals
        // M * (1 + f)(BM + f DM); at f = 0 it returns I untouched.
        level.illumination = generate_virtual_illumination(parts.illumination, parts.darkness, level.scale, max_illum);
        level.luminance = reproduce_luminance(reflectance, level.illumination);
        level.weight = weight_map(level.illumination, k + 1, vevs.levels.size(), config.weight_inverse, config.eps);
        ++result.trace.levels_generated;
        stack.levels.push_back(std::move(level));
    }

    FuseResult fused = fuse(stack);
    result.trace.zero_weight_pixels = fused.zero_weight_pixels;
    Plane final_luminance = config.stretch_percentile > 0.0
                                ? percentile_stretch(fused.luminance, config.stretch_percentile)
                                : std::move(fused.luminance);
    clamp_unit(final_luminance);
    for (double& v : final_luminance.values())
        v = std::max(v, kLuminanceFloor);

    result.output = tone_reproduce(input, luminance, final_luminance, config.gamma_t);
    result.luminance_final = final_luminance;

    report.de_output = discrete_entropy(extract_luminance(result.output));
    report.gmsd = gmsd(luminance, extract_luminance(result.output));

    if (dump) {
        result.intermediates["R_prime"] = reflectance;
        result.intermediates["L_prime"] = final_luminance;
        for (std::size_t k = 0; k < stack.levels.size(); ++k) {
            const std::string suffix = std::to_string(k + 1);
            result.intermediates["I_" + suffix] = stack.levels[k].illumination;
            result.intermediates["w_" + suffix] = stack.levels[k].weight;
            if (config.dump_level_luminance)
                result.intermediates["L_" + suffix] = stack.levels[k].luminance;
        }
    }
    return result;
}

} // namespace sihdr
