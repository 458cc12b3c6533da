#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sihdr/image.hpp"

namespace sihdr {

struct PipelineConfig;

/// Linear radiance triple, one per pixel.
struct HdrImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::array<float, 3>> pixels;
};

/// Shared-exponent encoding: decoded value = mantissa * 2^(e - 128) / 256.
/// Mantissas are rounded to nearest, so every channel decodes within
/// max(r,g,b) / 256 of its input. Values below 1e-32 encode as all zeros.
std::array<std::uint8_t, 4> encode_rgbe(float r, float g, float b);

/// "#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y <h> +X <w>\n"
std::string rgbe_header(std::size_t width, std::size_t height);

/// Header followed by flat (non run-length) scanlines, top row first.
std::vector<std::uint8_t> encode_rgbe_file(const HdrImage& image);

/// Maps L' in [0,1] linearly onto [display_min_nits, display_max_nits] and
/// rebuilds color with the per-channel ratios of the original
/// (C / L)^gamma_t, giving absolute radiance in cd/m^2.
HdrImage radiance_from_luminance(const Plane& luminance, const RgbImage& original, const Plane& original_luminance,
                                 const PipelineConfig& config);

/// radiance_from_luminance + encode_rgbe_file, written to `path`.
void write_rgbe(const Plane& luminance, const RgbImage& original, const std::filesystem::path& path,
                const PipelineConfig& config);

} // namespace sihdr
