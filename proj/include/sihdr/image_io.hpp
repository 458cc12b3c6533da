#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "sihdr/image.hpp"

namespace sihdr {

struct DecodedImage {
    RgbImage image;
    int bit_depth = 8; // 8 or 16
};

/// Decodes PNG (any color type, 1-16 bit; alpha dropped) or binary PPM (P6).
/// The format is detected from the file signature, not the extension.
DecodedImage decode_image(std::span<const std::uint8_t> bytes);
DecodedImage decode_image_file(const std::filesystem::path& path);
RgbImage read_image(const std::filesystem::path& path);

enum class ImageFormat { png, ppm };

/// Picks the format from the extension: .ppm/.pnm -> PPM, anything else PNG.
ImageFormat format_for_path(const std::filesystem::path& path);

/// Quantizes [0,1] values with round-half-up: q = floor(v * maxval + 0.5).
std::vector<std::uint8_t> encode_image(const RgbImage& image, ImageFormat format, int bit_depth = 8);
void write_image(const RgbImage& image, const std::filesystem::path& path, int bit_depth = 8);

/// Writes a single plane as a grayscale PNG (values clamped to [0,1]).
void write_gray_png(const Plane& plane, const std::filesystem::path& path, int bit_depth = 8);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

} // namespace sihdr
