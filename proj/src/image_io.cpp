#include "sihdr/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "sihdr/error.hpp"

namespace sihdr {

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("write failed for " + path.string());
}

namespace {

std::uint16_t quantize(double v, double maxval)
{
    if (std::isnan(v))
        v = 0.0;
    v = std::clamp(v, 0.0, 1.0);
    return static_cast<std::uint16_t>(std::floor(v * maxval + 0.5));
}

// ---- PPM -------------------------------------------------------------------

class PpmHeaderReader {
public:
    explicit PpmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    unsigned long next_number()
    {
        skip_space_and_comments();
        if (pos_ >= bytes_.size())
            throw TruncatedFile("ppm: header ends early");
        if (!std::isdigit(bytes_[pos_]))
            throw UnsupportedFormat("ppm: malformed header");
        unsigned long v = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            v = v * 10 + (bytes_[pos_] - '0');
            if (v > (1ul << 30))
                throw UnsupportedFormat("ppm: header value out of range");
            ++pos_;
        }
        return v;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t raster_offset()
    {
        if (pos_ >= bytes_.size())
            throw TruncatedFile("ppm: missing raster");
        if (!std::isspace(bytes_[pos_]))
            throw UnsupportedFormat("ppm: malformed header");
        return pos_ + 1;
    }

private:
    void skip_space_and_comments()
    {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_]))
                ++pos_;
            else if (bytes_[pos_] == '#')
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n')
                    ++pos_;
            else
                break;
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 2;
};

DecodedImage decode_ppm(std::span<const std::uint8_t> bytes)
{
    PpmHeaderReader header(bytes);
    const auto width = header.next_number();
    const auto height = header.next_number();
    const auto maxval = header.next_number();
    if (width == 0 || height == 0)
        throw UnsupportedFormat("ppm: zero-sized image");
    if (maxval == 0 || maxval > 65535)
        throw UnsupportedFormat("ppm: maxval must lie in [1, 65535]");

    const std::size_t offset = header.raster_offset();
    const std::size_t sample_bytes = maxval < 256 ? 1 : 2;
    const std::size_t needed = width * height * 3 * sample_bytes;
    if (bytes.size() - offset < needed)
        throw TruncatedFile("ppm: raster has " + std::to_string(bytes.size() - offset) + " bytes, expected "
                            + std::to_string(needed));

    DecodedImage out{RgbImage(width, height), sample_bytes == 1 ? 8 : 16};
    const std::uint8_t* p = bytes.data() + offset;
    const double scale = 1.0 / static_cast<double>(maxval);
    for (std::size_t i = 0; i < width * height; ++i) {
        for (int c = 0; c < 3; ++c) {
            unsigned v = *p++;
            if (sample_bytes == 2)
                v = (v << 8) | *p++;
            out.image.channel(c)[i] = std::min(static_cast<double>(v) * scale, 1.0);
        }
    }
    return out;
}

std::vector<std::uint8_t> encode_ppm(const RgbImage& image, int bit_depth)
{
    const unsigned maxval = bit_depth == 16 ? 65535u : 255u;
    const std::string header =
        "P6\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n" + std::to_string(maxval) + "\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + image.pixel_count() * 3 * (bit_depth / 8));
    for (std::size_t i = 0; i < image.pixel_count(); ++i) {
        for (int c = 0; c < 3; ++c) {
            const std::uint16_t q = quantize(image.channel(c)[i], maxval);
            if (bit_depth == 16)
                out.push_back(static_cast<std::uint8_t>(q >> 8));
            out.push_back(static_cast<std::uint8_t>(q & 0xff));
        }
    }
    return out;
}

// ---- PNG -------------------------------------------------------------------
//
// libpng reports errors with longjmp. The functions below keep every object
// with a nontrivial destructor outside the setjmp scope.

struct PngContext {
    std::span<const std::uint8_t> input;
    std::size_t cursor = 0;
    std::vector<std::uint8_t>* output = nullptr;
    bool truncated = false;
    char message[256] = {};
};

void png_error_handler(png_structp png, png_const_charp msg)
{
    auto* ctx = static_cast<PngContext*>(png_get_error_ptr(png));
    std::snprintf(ctx->message, sizeof ctx->message, "%s", msg);
    png_longjmp(png, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

void png_read_from_span(png_structp png, png_bytep dst, png_size_t length)
{
    auto* ctx = static_cast<PngContext*>(png_get_io_ptr(png));
    if (ctx->input.size() - ctx->cursor < length) {
        ctx->truncated = true;
        png_error(png, "unexpected end of data");
    }
    std::memcpy(dst, ctx->input.data() + ctx->cursor, length);
    ctx->cursor += length;
}

void png_write_to_vector(png_structp png, png_bytep src, png_size_t length)
{
    auto* ctx = static_cast<PngContext*>(png_get_io_ptr(png));
    ctx->output->insert(ctx->output->end(), src, src + length);
}

void png_flush_noop(png_structp) {}

struct PngRaster {
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int bit_depth = 8;
    std::vector<std::uint8_t> pixels; // RGB, 1 or 2 big-endian bytes per sample
};

bool decode_png_raw(PngContext& ctx, PngRaster& raster, std::vector<png_bytep>& rows)
{
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &ctx, png_error_handler, png_warning_handler);
    if (!png)
        return false;
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        return false;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        return false;
    }

    png_set_read_fn(png, &ctx, png_read_from_span);
    png_read_info(png, info);

    const int color_type = png_get_color_type(png, info);
    if (color_type == PNG_COLOR_TYPE_PALETTE)
        png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    if (color_type & PNG_COLOR_MASK_ALPHA)
        png_set_strip_alpha(png);
    png_read_update_info(png, info);

    raster.width = png_get_image_width(png, info);
    raster.height = png_get_image_height(png, info);
    raster.bit_depth = png_get_bit_depth(png, info) == 16 ? 16 : 8;
    const std::size_t rowbytes = png_get_rowbytes(png, info);
    if (png_get_channels(png, info) != 3 || rowbytes != std::size_t{raster.width} * 3 * (raster.bit_depth / 8)) {
        std::snprintf(ctx.message, sizeof ctx.message, "unexpected channel layout");
        png_destroy_read_struct(&png, &info, nullptr);
        return false;
    }
    raster.pixels.resize(rowbytes * raster.height);
    rows.resize(raster.height);
    for (png_uint_32 y = 0; y < raster.height; ++y)
        rows[y] = raster.pixels.data() + y * rowbytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return true;
}

DecodedImage decode_png(std::span<const std::uint8_t> bytes)
{
    PngContext ctx;
    ctx.input = bytes;
    PngRaster raster;
    std::vector<png_bytep> rows;
    if (!decode_png_raw(ctx, raster, rows)) {
        if (ctx.truncated)
            throw TruncatedFile(std::string("png: ") + ctx.message);
        throw UnsupportedFormat(std::string("png: ") + ctx.message);
    }

    DecodedImage out{RgbImage(raster.width, raster.height), raster.bit_depth};
    const double scale = raster.bit_depth == 16 ? 1.0 / 65535.0 : 1.0 / 255.0;
    const std::uint8_t* p = raster.pixels.data();
    for (std::size_t i = 0; i < out.image.pixel_count(); ++i) {
        for (int c = 0; c < 3; ++c) {
            unsigned v = *p++;
            if (raster.bit_depth == 16)
                v = (v << 8) | *p++;
            out.image.channel(c)[i] = static_cast<double>(v) * scale;
        }
    }
    return out;
}

bool encode_png_raw(PngContext& ctx, png_uint_32 width, png_uint_32 height, int bit_depth, int color_type,
                    std::vector<png_bytep>& rows)
{
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &ctx, png_error_handler, png_warning_handler);
    if (!png)
        return false;
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        return false;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        return false;
    }
    png_set_write_fn(png, &ctx, png_write_to_vector, png_flush_noop);
    png_set_IHDR(png, info, width, height, bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return true;
}

std::vector<std::uint8_t> encode_png(std::span<const Plane* const> channels, int bit_depth)
{
    const Plane& first = *channels.front();
    const std::size_t width = first.width();
    const std::size_t height = first.height();
    const std::size_t bytes_per_sample = bit_depth == 16 ? 2 : 1;
    const double maxval = bit_depth == 16 ? 65535.0 : 255.0;
    const std::size_t rowbytes = width * channels.size() * bytes_per_sample;

    std::vector<std::uint8_t> pixels(rowbytes * height);
    std::uint8_t* p = pixels.data();
    for (std::size_t i = 0; i < first.size(); ++i) {
        for (const Plane* ch : channels) {
            const std::uint16_t q = quantize((*ch)[i], maxval);
            if (bytes_per_sample == 2)
                *p++ = static_cast<std::uint8_t>(q >> 8);
            *p++ = static_cast<std::uint8_t>(q & 0xff);
        }
    }
    std::vector<png_bytep> rows(height);
    for (std::size_t y = 0; y < height; ++y)
        rows[y] = pixels.data() + y * rowbytes;

    std::vector<std::uint8_t> out;
    PngContext ctx;
    ctx.output = &out;
    const int color_type = channels.size() == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY;
    if (!encode_png_raw(ctx, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), bit_depth, color_type,
                        rows))
        throw IoError(std::string("png encode failed: ") + ctx.message);
    return out;
}

void check_depth(int bit_depth)
{
    if (bit_depth != 8 && bit_depth != 16)
        throw InvalidParameter("bit depth must be 8 or 16");
}

} // namespace

DecodedImage decode_image(std::span<const std::uint8_t> bytes)
{
    static constexpr std::uint8_t png_signature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (bytes.size() >= 8 && std::equal(std::begin(png_signature), std::end(png_signature), bytes.begin()))
        return decode_png(bytes);
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6')
        return decode_ppm(bytes);
    if (bytes.size() < 8)
        throw TruncatedFile("file too short to identify its format");
    throw UnsupportedFormat("unrecognized image format (expected PNG or binary PPM)");
}

DecodedImage decode_image_file(const std::filesystem::path& path)
{
    const auto bytes = read_file_bytes(path);
    try {
        return decode_image(bytes);
    } catch (const IoError& e) {
        if (dynamic_cast<const TruncatedFile*>(&e))
            throw TruncatedFile(path.string() + ": " + e.what());
        throw UnsupportedFormat(path.string() + ": " + e.what());
    }
}

RgbImage read_image(const std::filesystem::path& path)
{
    return decode_image_file(path).image;
}

ImageFormat format_for_path(const std::filesystem::path& path)
{
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".ppm" || ext == ".pnm" ? ImageFormat::ppm : ImageFormat::png;
}

std::vector<std::uint8_t> encode_image(const RgbImage& image, ImageFormat format, int bit_depth)
{
    check_depth(bit_depth);
    if (image.empty())
        throw InvalidInput("cannot encode an empty image");
    if (format == ImageFormat::ppm)
        return encode_ppm(image, bit_depth);
    const Plane* channels[] = {&image.red, &image.green, &image.blue};
    return encode_png(channels, bit_depth);
}

void write_image(const RgbImage& image, const std::filesystem::path& path, int bit_depth)
{
    write_file_bytes(path, encode_image(image, format_for_path(path), bit_depth));
}

void write_gray_png(const Plane& plane, const std::filesystem::path& path, int bit_depth)
{
    check_depth(bit_depth);
    if (plane.empty())
        throw InvalidInput("cannot encode an empty plane");
    const Plane* channels[] = {&plane};
    write_file_bytes(path, encode_png(channels, bit_depth));
}

} // namespace sihdr
