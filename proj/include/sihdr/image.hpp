#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace sihdr {

/// Floor applied to luminance and illumination so logs and ratios stay defined.
inline constexpr double kLuminanceFloor = 1e-4;

/// Single-channel raster, row-major, one double per pixel.
class Plane {
public:
    Plane() = default;
    Plane(std::size_t width, std::size_t height, double fill = 0.0);
    Plane(std::size_t width, std::size_t height, std::vector<double> data);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t x, std::size_t y) noexcept { return data_[y * width_ + x]; }
    double operator()(std::size_t x, std::size_t y) const noexcept { return data_[y * width_ + x]; }
    double& operator[](std::size_t i) noexcept { return data_[i]; }
    double operator[](std::size_t i) const noexcept { return data_[i]; }

    std::span<double> values() noexcept { return data_; }
    std::span<const double> values() const noexcept { return data_; }

    bool same_shape(const Plane& other) const noexcept
    {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const Plane&, const Plane&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<double> data_;
};

/// Three-channel color image with values in [0,1].
struct RgbImage {
    Plane red;
    Plane green;
    Plane blue;

    RgbImage() = default;
    RgbImage(std::size_t width, std::size_t height);
    RgbImage(Plane r, Plane g, Plane b);

    std::size_t width() const noexcept { return red.width(); }
    std::size_t height() const noexcept { return red.height(); }
    std::size_t pixel_count() const noexcept { return red.size(); }
    bool empty() const noexcept { return red.empty(); }

    Plane& channel(int c) noexcept { return c == 0 ? red : (c == 1 ? green : blue); }
    const Plane& channel(int c) const noexcept { return c == 0 ? red : (c == 1 ? green : blue); }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

struct PlaneStats {
    double mean = 0.0; // m_I when taken over a normalized illumination
    double max = 0.0;  // M, the normalization divisor
};

double plane_min(const Plane& p);
double plane_max(const Plane& p);
double plane_mean(const Plane& p);

/// Clamps every channel into [0,1]; NaN becomes 0.
void clamp_unit(RgbImage& image);
void clamp_unit(Plane& plane);

/// CIELAB L* / 100 (sRGB primaries, D65 white), floored at kLuminanceFloor.
Plane extract_luminance(const RgbImage& image);

/// Divides by the plane maximum. Stats carry the mean of the result and the original max.
std::pair<Plane, PlaneStats> normalize_plane(const Plane& p);

Plane brightness_map(const Plane& illumination);

/// 1 - BM, the bounded complement of the brightness map.
Plane darkness_map(const Plane& brightness);

} // namespace sihdr
