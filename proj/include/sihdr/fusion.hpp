#pragma once

#include <cstddef>
#include <vector>

#include "sihdr/image.hpp"

namespace sihdr {

/// How dark-seeking levels turn the normalized illumination into a weight.
enum class WeightInverse {
    complement,    // 1 - Ibar
    reciprocal_eps // 1 / (Ibar + eps)
};

struct ExposureLevel {
    double vev = 0.0;  // v_k
    double scale = 0.0; // f(v_k)
    Plane illumination; // I_k
    Plane luminance;    // L_k
    Plane weight;       // w_k
};

/// Levels ordered by increasing virtual exposure value.
struct ExposureStack {
    std::vector<ExposureLevel> levels;
    std::size_t size() const noexcept { return levels.size(); }
};

struct FuseResult {
    Plane luminance;
    std::size_t zero_weight_pixels = 0; // pixels where sum_k w_k was not positive
};

/// Weight-sum guard for pixels where every level has zero weight.
inline constexpr double kWeightSumFloor = 1e-9;

/// L_k = exp(R') * I_k.
Plane reproduce_luminance(const Plane& reflectance, const Plane& illumination);

/// Weight for level k (1-based) of N. Levels k <= ceil(N/2) use the normalized
/// illumination; later levels use its inverse as selected by `mode`.
Plane weight_map(const Plane& illumination, std::size_t k, std::size_t count,
                 WeightInverse mode = WeightInverse::complement, double eps = 1e-4);

/// Pixelwise weighted average of the level luminances.
FuseResult fuse(const ExposureStack& stack);

/// C' = L_new * (C / L)^gamma per channel, clamped to [0,1].
RgbImage tone_reproduce(const RgbImage& original, const Plane& luminance, const Plane& new_luminance,
                        double gamma = 1.0);

} // namespace sihdr
