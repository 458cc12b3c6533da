#pragma once

#include <cstddef>

#include "sihdr/image.hpp"

namespace sihdr {

/// Summary attached to every pipeline run. NIQE is not computed.
struct MetricReport {
    double gmsd = 0.0;
    double de_input = 0.0;
    double de_output = 0.0;
    double mean_illumination = 0.0; // m_I
    bool accepted = false;
    double solver_residual = 0.0;
    int solver_iterations = 0;
};

/// Shannon entropy (bits) of a `bins`-bin histogram spanning [min, max] of the plane.
double discrete_entropy(const Plane& p, std::size_t bins = 256);

/// Gradient magnitude similarity deviation between two [0,1] planes.
///
/// Both planes are scaled to [0,255], averaged over 2x2 blocks and decimated
/// by 2, then differentiated with 3x3 Prewitt kernels (zero padding). The
/// score is the population standard deviation of
///   (2 g_r g_d + c) / (g_r^2 + g_d^2 + c),  c = 170.
/// 0 means identical structure; the value never exceeds 0.5.
double gmsd(const Plane& reference, const Plane& distorted);

inline constexpr double kGmsdStabilizer = 170.0;

} // namespace sihdr
