#include "sihdr/enhance.hpp"

#include <algorithm>
#include <cmath>

#include "sihdr/error.hpp"

namespace sihdr {

Plane selective_reflectance_scaling(const Plane& reflectance, const Plane& illumination, double mean_illumination,
                                    double gamma)
{
    if (!(mean_illumination > 0.0))
        throw InvalidParameter("selective_reflectance_scaling: mean illumination must be positive");
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw InvalidParameter("selective_reflectance_scaling: gamma must lie in (0,1]");
    if (!reflectance.same_shape(illumination))
        throw InvalidInput("selective_reflectance_scaling: shape mismatch");

    Plane out = reflectance;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double lum = illumination[i];
        if (!(lum > 0.0))
            throw InvalidInput("selective_reflectance_scaling: illumination must be positive");
        if (lum > mean_illumination)
            out[i] = reflectance[i] * std::pow(lum / mean_illumination, gamma);
    }
    return out;
}

double scale_amplitude(double mean_illumination, double max_illumination)
{
    if (!(mean_illumination > 0.0) || !(max_illumination > 0.0))
        throw InvalidInput("scale_amplitude: mean and max must be positive");
    if (mean_illumination > max_illumination)
        throw InvalidInput("scale_amplitude: mean exceeds max");
    return 1.0 - mean_illumination / max_illumination;
}

double scale_function(double v, const ScaleFunctionParams& params)
{
    if (!(params.smoothness > 0.0))
        throw InvalidParameter("scale_function: smoothness must be positive");
    if (!(params.amplitude >= 0.0 && params.amplitude <= 1.0))
        throw InvalidParameter("scale_function: amplitude must lie in [0,1]");
    if (!(v >= 0.0 && v <= 1.0))
        throw InvalidInput("scale_function: v must lie in [0,1]");

    return params.amplitude * (1.0 / (1.0 + std::exp(-params.smoothness * (v - params.mean_level))) - 0.5);
}

VirtualExposureSet select_vevs(double mean_level, std::size_t count, double gate_low, double gate_high)
{
    if (count < 3)
        throw InvalidParameter("select_vevs: at least three levels are required");
    if (!(gate_low < gate_high))
        throw InvalidParameter("select_vevs: gate_low must be below gate_high");

    VirtualExposureSet set;
    if (!(mean_level >= gate_low && mean_level <= gate_high))
        return set;

    set.accepted = true;
    const std::size_t mid = (count + 1) / 2; // 1-based index of the original level
    const std::size_t above = count - mid;
    set.levels.reserve(count);
    // a(1-t) + bt keeps the N = 5 midpoints bitwise equal to (a + b) / 2
    auto mix = [](double a, double b, double t) { return a * (1.0 - t) + b * t; };
    for (std::size_t k = 0; k + 1 < mid; ++k)
        set.levels.push_back(mix(gate_low, mean_level, static_cast<double>(k) / static_cast<double>(mid - 1)));
    set.levels.push_back(mean_level);
    for (std::size_t j = 1; j <= above; ++j)
        set.levels.push_back(mix(mean_level, gate_high, static_cast<double>(j) / static_cast<double>(above)));
    return set;
}

Plane generate_virtual_illumination(const Plane& illumination, const Plane& darkness, double f,
                                    double darkness_scale)
{
    if (!(std::abs(f) <= 0.5))
        throw InvalidParameter("generate_virtual_illumination: |f| must not exceed 1/2");
    if (!(darkness_scale > 0.0))
        throw InvalidParameter("generate_virtual_illumination: darkness scale must be positive");
    if (!illumination.same_shape(darkness))
        throw InvalidInput("generate_virtual_illumination: shape mismatch");

    Plane out(illumination.width(), illumination.height());
    const double gain = 1.0 + f;
    const double local = f * darkness_scale;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double dm = darkness[i];
        if (!(illumination[i] > 0.0) || !(dm >= 0.0 && dm <= 1.0))
            throw InvalidInput("generate_virtual_illumination: I must be positive and DM in [0,1]");
        out[i] = std::max(gain * (illumination[i] + local * dm), kLuminanceFloor);
    }
    return out;
}

} // namespace sihdr
