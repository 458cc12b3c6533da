#include "sihdr/fusion.hpp"

#include <algorithm>
#include <cmath>

#include "sihdr/error.hpp"

namespace sihdr {

Plane reproduce_luminance(const Plane& reflectance, const Plane& illumination)
{
    if (!reflectance.same_shape(illumination))
        throw InvalidInput("reproduce_luminance: shape mismatch");
    Plane out(reflectance.width(), reflectance.height());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = std::exp(reflectance[i]) * illumination[i];
    return out;
}

Plane weight_map(const Plane& illumination, std::size_t k, std::size_t count, WeightInverse mode, double eps)
{
    if (count == 0 || k < 1 || k > count)
        throw InvalidInput("weight_map: level index out of range");
    if (mode == WeightInverse::reciprocal_eps && !(eps > 0.0))
        throw InvalidParameter("weight_map: eps must be positive");

    Plane normalized = normalize_plane(illumination).first;
    if (k <= (count + 1) / 2)
        return normalized;

    for (double& v : normalized.values())
        v = mode == WeightInverse::complement ? 1.0 - v : 1.0 / (v + eps);
    return normalized;
}

FuseResult fuse(const ExposureStack& stack)
{
    if (stack.levels.empty())
        throw InvalidInput("fuse: empty stack");
    const Plane& first = stack.levels.front().luminance;
    for (const auto& level : stack.levels)
        if (!level.luminance.same_shape(first) || !level.weight.same_shape(first))
            throw InvalidInput("fuse: stack planes differ in shape");

    FuseResult result{Plane(first.width(), first.height()), 0};
    for (std::size_t i = 0; i < first.size(); ++i) {
        double numerator = 0.0;
        double denominator = 0.0;
        for (const auto& level : stack.levels) {
            numerator += level.luminance[i] * level.weight[i];
            denominator += level.weight[i];
        }
        if (!(denominator > 0.0)) {
            ++result.zero_weight_pixels;
            denominator += kWeightSumFloor;
        }
        result.luminance[i] = numerator / denominator;
    }
    return result;
}

RgbImage tone_reproduce(const RgbImage& original, const Plane& luminance, const Plane& new_luminance, double gamma)
{
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw InvalidParameter("tone_reproduce: gamma must lie in (0,1]");
    if (!original.red.same_shape(luminance) || !luminance.same_shape(new_luminance))
        throw InvalidInput("tone_reproduce: shape mismatch");

    RgbImage out(original.width(), original.height());
    for (std::size_t i = 0; i < luminance.size(); ++i) {
        const double lum = luminance[i];
        if (!(lum >= kLuminanceFloor))
            throw InvalidInput("tone_reproduce: luminance below floor");
        for (int c = 0; c < 3; ++c) {
            const double ratio = original.channel(c)[i] / lum;
            const double v = gamma == 1.0 ? new_luminance[i] * ratio : new_luminance[i] * std::pow(ratio, gamma);
            out.channel(c)[i] = v;
        }
    }
    clamp_unit(out);
    return out;
}

} // namespace sihdr
