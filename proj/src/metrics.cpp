#include "sihdr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sihdr/error.hpp"

namespace sihdr {

double discrete_entropy(const Plane& p, std::size_t bins)
{
    if (p.empty())
        throw InvalidInput("discrete_entropy: empty plane");
    if (bins == 0)
        throw InvalidParameter("discrete_entropy: bins must be positive");

    const auto [lo_it, hi_it] = std::minmax_element(p.values().begin(), p.values().end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw InvalidInput("discrete_entropy: non-finite pixel");
    if (hi == lo)
        return 0.0;

    std::vector<std::size_t> histogram(bins, 0);
    const double scale = static_cast<double>(bins) / (hi - lo);
    for (double v : p.values()) {
        auto b = static_cast<std::size_t>((v - lo) * scale);
        histogram[std::min(b, bins - 1)]++;
    }

    const double n = static_cast<double>(p.size());
    double entropy = 0.0;
    for (std::size_t count : histogram) {
        if (count == 0)
            continue;
        const double q = static_cast<double>(count) / n;
        entropy -= q * std::log2(q);
    }
    return entropy;
}

namespace {

// 2x2 box average followed by decimation; samples past the border count as zero.
std::vector<double> downsample(const Plane& p, std::size_t& out_w, std::size_t& out_h)
{
    const std::size_t w = p.width();
    const std::size_t h = p.height();
    out_w = (w + 1) / 2;
    out_h = (h + 1) / 2;
    std::vector<double> out(out_w * out_h, 0.0);
    for (std::size_t y = 0; y < out_h; ++y) {
        for (std::size_t x = 0; x < out_w; ++x) {
            const std::size_t sx = 2 * x;
            const std::size_t sy = 2 * y;
            double acc = p(sx, sy);
            if (sx + 1 < w)
                acc += p(sx + 1, sy);
            if (sy + 1 < h) {
                acc += p(sx, sy + 1);
                if (sx + 1 < w)
                    acc += p(sx + 1, sy + 1);
            }
            out[y * out_w + x] = 255.0 * acc / 4.0;
        }
    }
    return out;
}

// Prewitt magnitude computed separably: central difference along one axis,
// three-tap sum along the other.
std::vector<double> gradient_magnitude(const std::vector<double>& img, std::size_t w, std::size_t h)
{
    auto at = [&](std::ptrdiff_t x, std::ptrdiff_t y) -> double {
        if (x < 0 || y < 0 || x >= static_cast<std::ptrdiff_t>(w) || y >= static_cast<std::ptrdiff_t>(h))
            return 0.0;
        return img[static_cast<std::size_t>(y) * w + static_cast<std::size_t>(x)];
    };

    std::vector<double> dx(w * h), dy(w * h), sx(w * h), sy(w * h);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const auto ix = static_cast<std::ptrdiff_t>(x);
            const auto iy = static_cast<std::ptrdiff_t>(y);
            dx[y * w + x] = at(ix + 1, iy) - at(ix - 1, iy);
            sy[y * w + x] = at(ix - 1, iy) + at(ix, iy) + at(ix + 1, iy);
        }
    }
    std::vector<double> mag(w * h);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const std::size_t i = y * w + x;
            double gx = dx[i];
            double gy = (y + 1 < h ? sy[i + w] : 0.0) - (y > 0 ? sy[i - w] : 0.0);
            if (y > 0)
                gx += dx[i - w];
            if (y + 1 < h)
                gx += dx[i + w];
            gx /= 3.0;
            gy /= 3.0;
            mag[i] = std::sqrt(gx * gx + gy * gy);
        }
    }
    return mag;
}

} // namespace

double gmsd(const Plane& reference, const Plane& distorted)
{
    if (reference.empty() || !reference.same_shape(distorted))
        throw InvalidInput("gmsd: images must share a nonempty shape");

    std::size_t w = 0, h = 0;
    const auto ref = downsample(reference, w, h);
    const auto dis = downsample(distorted, w, h);
    const auto gr = gradient_magnitude(ref, w, h);
    const auto gd = gradient_magnitude(dis, w, h);

    const std::size_t n = gr.size();
    std::vector<double> similarity(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        similarity[i] = (2.0 * gr[i] * gd[i] + kGmsdStabilizer) / (gr[i] * gr[i] + gd[i] * gd[i] + kGmsdStabilizer);
        mean += similarity[i];
    }
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double s : similarity)
        var += (s - mean) * (s - mean);
    return std::sqrt(var / static_cast<double>(n));
}

} // namespace sihdr
