#include "sihdr/rgbe.hpp"

#include <algorithm>
#include <cmath>

#include "sihdr/config.hpp"
#include "sihdr/error.hpp"
#include "sihdr/image_io.hpp"

namespace sihdr {

std::array<std::uint8_t, 4> encode_rgbe(float r, float g, float b)
{
    const double red = std::max(0.0, static_cast<double>(r));
    const double green = std::max(0.0, static_cast<double>(g));
    const double blue = std::max(0.0, static_cast<double>(b));
    const double peak = std::max({red, green, blue});
    if (!(peak >= 1e-32))
        return {0, 0, 0, 0};

    int exponent = 0;
    std::frexp(peak, &exponent);
    // peak / 2^exponent lies in [0.5, 1); rounding may carry the peak mantissa to 256
    if (std::lround(std::ldexp(peak, 8 - exponent)) > 255)
        ++exponent;
    if (exponent > 127)
        exponent = 127; // saturate: beyond ~1.7e38 the format cannot represent the value
    if (exponent < -128)
        return {0, 0, 0, 0};

    auto mantissa = [exponent](double v) {
        return static_cast<std::uint8_t>(std::min<long>(255, std::lround(std::ldexp(v, 8 - exponent))));
    };
    return {mantissa(red), mantissa(green), mantissa(blue), static_cast<std::uint8_t>(exponent + 128)};
}

std::string rgbe_header(std::size_t width, std::size_t height)
{
    return "#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y " + std::to_string(height) + " +X " + std::to_string(width) + "\n";
}

std::vector<std::uint8_t> encode_rgbe_file(const HdrImage& image)
{
    if (image.pixels.size() != image.width * image.height)
        throw InvalidInput("encode_rgbe_file: pixel count does not match dimensions");
    const std::string header = rgbe_header(image.width, image.height);
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + image.pixels.size() * 4);
    for (const auto& px : image.pixels) {
        const auto bytes = encode_rgbe(px[0], px[1], px[2]);
        out.insert(out.end(), bytes.begin(), bytes.end());
    }
    return out;
}

HdrImage radiance_from_luminance(const Plane& luminance, const RgbImage& original, const Plane& original_luminance,
                                 const PipelineConfig& config)
{
    if (!luminance.same_shape(original.red) || !luminance.same_shape(original_luminance) || luminance.empty())
        throw InvalidInput("radiance_from_luminance: shape mismatch");
    if (!(config.display_max_nits > config.display_min_nits) || !(config.display_min_nits > 0.0))
        throw InvalidParameter("radiance_from_luminance: invalid display range");

    HdrImage out{luminance.width(), luminance.height(), std::vector<std::array<float, 3>>(luminance.size())};
    const double span = config.display_max_nits - config.display_min_nits;
    for (std::size_t i = 0; i < luminance.size(); ++i) {
        const double lum = luminance[i];
        if (!(lum > 0.0))
            throw InvalidInput("write_rgbe: luminance must be strictly positive");
        const double nits = config.display_min_nits + span * std::min(lum, 1.0);
        const double base = std::max(original_luminance[i], kLuminanceFloor);
        for (int c = 0; c < 3; ++c) {
            const double ratio = original.channel(c)[i] / base;
            out.pixels[i][c] = static_cast<float>(nits * std::pow(ratio, config.gamma_t));
        }
    }
    return out;
}

void write_rgbe(const Plane& luminance, const RgbImage& original, const std::filesystem::path& path,
                const PipelineConfig& config)
{
    const Plane original_luminance = extract_luminance(original);
    write_file_bytes(path, encode_rgbe_file(radiance_from_luminance(luminance, original, original_luminance, config)));
}

} // namespace sihdr
