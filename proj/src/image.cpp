#include "sihdr/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sihdr/error.hpp"

namespace sihdr {

Plane::Plane(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height), data_(width * height, fill)
{
}

Plane::Plane(std::size_t width, std::size_t height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data))
{
    if (data_.size() != width * height)
        throw InvalidInput("plane data length " + std::to_string(data_.size()) + " does not match "
                           + std::to_string(width) + "x" + std::to_string(height));
}

RgbImage::RgbImage(std::size_t width, std::size_t height)
    : red(width, height), green(width, height), blue(width, height)
{
}

RgbImage::RgbImage(Plane r, Plane g, Plane b) : red(std::move(r)), green(std::move(g)), blue(std::move(b))
{
    if (!red.same_shape(green) || !red.same_shape(blue))
        throw InvalidInput("RGB channels differ in size");
}

double plane_min(const Plane& p)
{
    if (p.empty())
        throw InvalidInput("empty plane");
    return *std::min_element(p.values().begin(), p.values().end());
}

double plane_max(const Plane& p)
{
    if (p.empty())
        throw InvalidInput("empty plane");
    return *std::max_element(p.values().begin(), p.values().end());
}

double plane_mean(const Plane& p)
{
    if (p.empty())
        throw InvalidInput("empty plane");
    long double sum = 0.0L;
    for (double v : p.values())
        sum += v;
    return static_cast<double>(sum / static_cast<long double>(p.size()));
}

void clamp_unit(Plane& plane)
{
    for (double& v : plane.values())
        v = std::isnan(v) ? 0.0 : std::clamp(v, 0.0, 1.0);
}

void clamp_unit(RgbImage& image)
{
    for (int c = 0; c < 3; ++c)
        clamp_unit(image.channel(c));
}

namespace {

double srgb_to_linear(double c)
{
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t)
{
    constexpr double delta = 6.0 / 29.0;
    if (t > delta * delta * delta)
        return std::cbrt(t);
    return t / (3.0 * delta * delta) + 4.0 / 29.0;
}

} // namespace

Plane extract_luminance(const RgbImage& image)
{
    if (image.empty())
        throw InvalidInput("extract_luminance: zero-sized image");

    Plane out(image.width(), image.height());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double r = srgb_to_linear(std::clamp(image.red[i], 0.0, 1.0));
        const double g = srgb_to_linear(std::clamp(image.green[i], 0.0, 1.0));
        const double b = srgb_to_linear(std::clamp(image.blue[i], 0.0, 1.0));
        // Y row of the sRGB->XYZ matrix, white normalised to Yn = 1
        const double y = 0.2126 * r + 0.7152 * g + 0.0722 * b;
        const double lstar = 116.0 * lab_f(y) - 16.0;
        out[i] = std::clamp(lstar / 100.0, kLuminanceFloor, 1.0);
    }
    return out;
}

std::pair<Plane, PlaneStats> normalize_plane(const Plane& p)
{
    if (p.empty())
        throw InvalidInput("normalize_plane: empty plane");
    const double peak = plane_max(p);
    if (!(peak > 0.0) || !std::isfinite(peak))
        throw DegenerateInput("normalize_plane: maximum is not positive");

    Plane out(p.width(), p.height());
    for (std::size_t i = 0; i < p.size(); ++i)
        out[i] = p[i] / peak;
    // exact max of 1 even when p[i]/peak rounds
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] == peak)
            out[i] = 1.0;
    return {out, PlaneStats{plane_mean(out), peak}};
}

Plane brightness_map(const Plane& illumination)
{
    if (!illumination.empty() && plane_min(illumination) < 0.0)
        throw InvalidInput("brightness_map: illumination must be nonnegative");
    return normalize_plane(illumination).first;
}

Plane darkness_map(const Plane& brightness)
{
    if (brightness.empty())
        throw InvalidInput("darkness_map: empty plane");
    Plane out(brightness.width(), brightness.height());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double b = brightness[i];
        if (!(b >= 0.0 && b <= 1.0))
            throw InvalidInput("darkness_map: brightness map must lie in [0,1]");
        out[i] = 1.0 - b;
    }
    return out;
}

} // namespace sihdr
