#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "sihdr/fusion.hpp"

namespace sihdr {

/// Every tunable of the enhancement pipeline. Defaults reproduce the published
/// constants (gamma_r 0.5, sigma_s 1, gamma_t 1, gates 0.2/0.8, five levels);
/// lambda/alpha/eps follow the usual WLS filter defaults.
struct PipelineConfig {
    double lambda = 1.0;
    double alpha = 1.2;
    double eps = 1e-4;
    double gamma_r = 0.5;
    double gamma_t = 1.0;
    double sigma_s = 1.0;
    std::size_t levels = 5;
    double solver_tol = 1e-4;
    int solver_max_iter = 2000;
    double gate_low = 0.2;
    double gate_high = 0.8;
    WeightInverse weight_inverse = WeightInverse::complement;
    bool dump_intermediates = false;
    bool dump_level_luminance = false; // also keep L_k when dumping
    bool hdr_export = false;
    double display_min_nits = 0.0015;
    double display_max_nits = 3000.0;
    double stretch_percentile = 0.0; // 0 disables the display stretch of L'

    /// Throws InvalidParameter naming the first offending field.
    void validate() const;
};

/// Applies one `key = value` setting. Keys are case-insensitive and accept
/// '-' or '_' as separators (gamma-r, gamma_r, weight_inverse, ...).
void apply_setting(PipelineConfig& config, std::string_view key, std::string_view value);

/// Reads a line-oriented `key = value` file on top of `config`. Blank lines and
/// lines starting with '#' are ignored.
void load_config_file(PipelineConfig& config, const std::filesystem::path& path);

WeightInverse parse_weight_inverse(std::string_view text);
std::string_view to_string(WeightInverse mode);

} // namespace sihdr
