#pragma once

#include <cstddef>
#include <vector>

#include "sihdr/image.hpp"

namespace sihdr {

/// Parameters of the sigmoid that maps a virtual exposure value to an
/// illumination scale factor.
struct ScaleFunctionParams {
    double mean_level = 0.5;   // m_I: inflection point, mean of the normalized illumination
    double smoothness = 1.0;   // sigma_s
    double amplitude = 0.5;    // r = 1 - m_I_raw / M
    double max_illumination = 1.0;
};

struct VirtualExposureSet {
    std::vector<double> levels; // nondecreasing; levels[ceil(N/2)-1] == mean_level
    bool accepted = false;
};

/// Multiplies the reflectance by (I / mean)^gamma wherever I > mean; leaves it
/// untouched elsewhere. `mean_illumination` is the mean of the same (raw) plane.
Plane selective_reflectance_scaling(const Plane& reflectance, const Plane& illumination, double mean_illumination,
                                    double gamma);

/// r = 1 - mean / max.
double scale_amplitude(double mean_illumination, double max_illumination);

/// r * (sigmoid(sigma_s * (v - m_I)) - 1/2).
double scale_function(double v, const ScaleFunctionParams& params);

/// Virtual exposure levels around `mean_level`. Rejected (empty levels) when
/// the mean lies outside [gate_low, gate_high].
///
/// The middle level ceil(N/2) is the mean itself. Lower levels are spaced
/// linearly from gate_low up to the mean, upper levels linearly from the mean
/// to gate_high; N = 5 gives {low, (low+m)/2, m, (m+high)/2, high}.
VirtualExposureSet select_vevs(double mean_level, std::size_t count = 5, double gate_low = 0.2,
                               double gate_high = 0.8);

/// I_k = (1 + f) * (I + f * darkness_scale * DM), floored at kLuminanceFloor.
///
/// With a normalized I pass darkness_scale = 1. With the raw illumination pass
/// its normalization divisor M so the result equals M times the normalized form
/// while f = 0 still reproduces I bit for bit.
Plane generate_virtual_illumination(const Plane& illumination, const Plane& darkness, double f,
                                    double darkness_scale = 1.0);

} // namespace sihdr
