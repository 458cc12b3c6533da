#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "sihdr/config.hpp"
#include "sihdr/image.hpp"
#include "sihdr/metrics.hpp"

namespace sihdr {

/// Counters describing which stages actually ran.
struct PipelineTrace {
    int solver_calls = 0;
    int levels_generated = 0;  // virtual illuminations synthesized
    std::size_t zero_weight_pixels = 0;
};

struct PipelineResult {
    RgbImage output;
    Plane luminance_final;                    // L' (L itself when declined)
    MetricReport report;
    std::map<std::string, Plane> intermediates; // filled when config.dump_intermediates
    bool declined = false;
    std::string decline_reason;
    PipelineTrace trace;
};

/// Decompose -> scale reflectance -> synthesize virtual exposures -> fuse ->
/// rebuild color. Images whose mean normalized illumination falls outside the
/// configured gates are returned unchanged with `declined` set.
///
/// Intermediate names: L, I, R, R_prime, BM, DM, L_prime, I_<k>, w_<k> and,
/// with dump_level_luminance, L_<k> (k is 1-based).
PipelineResult run_pipeline(const RgbImage& image, const PipelineConfig& config);

/// Affine stretch so the given lower/upper percentiles land on 0 and 1.
Plane percentile_stretch(const Plane& p, double percentile);

} // namespace sihdr
