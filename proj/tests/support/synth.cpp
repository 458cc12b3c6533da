#include "synth.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace sihdr::test {

Plane random_plane(std::size_t w, std::size_t h, std::uint64_t seed, double lo, double hi)
{
    Rng rng(seed);
    Plane p(w, h);
    for (double& v : p.values())
        v = rng.uniform(lo, hi);
    return p;
}

RgbImage random_image(std::size_t w, std::size_t h, std::uint64_t seed)
{
    return RgbImage(random_plane(w, h, seed, 0.0, 1.0), random_plane(w, h, seed + 1, 0.0, 1.0),
                    random_plane(w, h, seed + 2, 0.0, 1.0));
}

RgbImage constant_image(std::size_t w, std::size_t h, double r, double g, double b)
{
    return RgbImage(Plane(w, h, r), Plane(w, h, g), Plane(w, h, b));
}

Plane value_noise(std::size_t w, std::size_t h, std::uint64_t seed, double base_cell, int octaves)
{
    Plane out(w, h, 0.0);
    Rng rng(seed);
    double amplitude = 1.0;
    double total = 0.0;
    double cell = base_cell;
    for (int o = 0; o < octaves; ++o) {
        const auto gw = static_cast<std::size_t>(std::ceil(static_cast<double>(w) / cell)) + 2;
        const auto gh = static_cast<std::size_t>(std::ceil(static_cast<double>(h) / cell)) + 2;
        std::vector<double> lattice(gw * gh);
        for (double& v : lattice)
            v = rng.uniform();
        for (std::size_t y = 0; y < h; ++y) {
            const double fy = static_cast<double>(y) / cell;
            const auto y0 = static_cast<std::size_t>(fy);
            const double ty = fy - static_cast<double>(y0);
            const double sy = ty * ty * (3.0 - 2.0 * ty);
            for (std::size_t x = 0; x < w; ++x) {
                const double fx = static_cast<double>(x) / cell;
                const auto x0 = static_cast<std::size_t>(fx);
                const double tx = fx - static_cast<double>(x0);
                const double sx = tx * tx * (3.0 - 2.0 * tx);
                const double a = lattice[y0 * gw + x0];
                const double b = lattice[y0 * gw + x0 + 1];
                const double c = lattice[(y0 + 1) * gw + x0];
                const double d = lattice[(y0 + 1) * gw + x0 + 1];
                const double top = a + (b - a) * sx;
                const double bottom = c + (d - c) * sx;
                out(x, y) += amplitude * (top + (bottom - top) * sy);
            }
        }
        total += amplitude;
        amplitude *= 0.5;
        cell = std::max(1.0, cell / 2.0);
    }
    for (double& v : out.values())
        v /= total;
    return out;
}

namespace {

struct Tint {
    double r, g, b;
};

void paint(RgbImage& img, std::size_t x, std::size_t y, double level, Tint tint)
{
    img.red(x, y) = std::clamp(level * tint.r, 0.0, 1.0);
    img.green(x, y) = std::clamp(level * tint.g, 0.0, 1.0);
    img.blue(x, y) = std::clamp(level * tint.b, 0.0, 1.0);
}

} // namespace

RgbImage synthetic_photo(Scene scene, std::size_t w, std::size_t h, std::uint64_t seed)
{
    RgbImage img(w, h);
    const Plane coarse = value_noise(w, h, seed, std::max<double>(8.0, static_cast<double>(w) / 6.0), 3);
    const Plane fine = value_noise(w, h, seed + 101, 4.0, 2);
    Rng grain(seed + 202);
    const double W = static_cast<double>(w);
    const double H = static_cast<double>(h);

    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const double u = static_cast<double>(x) / W;
            const double v = static_cast<double>(y) / H;
            const double texture = 0.75 + 0.5 * (fine(x, y) - 0.5) + 0.02 * (grain.uniform() - 0.5);
            double level = 0.0;
            Tint tint{1.0, 1.0, 1.0};
            switch (scene) {
            case Scene::backlit: {
                const bool window = u > 0.35 && u < 0.95 && v < 0.6;
                const bool figure = std::hypot(u - 0.55, (v - 0.75) * 1.3) < 0.28 || (u > 0.45 && u < 0.65 && v > 0.5);
                if (figure) {
                    level = 0.06 + 0.05 * coarse(x, y);
                    tint = {1.0, 0.85, 0.75};
                } else if (window) {
                    level = 0.75 + 0.22 * coarse(x, y);
                    tint = {0.92, 0.97, 1.0};
                } else {
                    level = 0.12 + 0.1 * coarse(x, y);
                    tint = {0.9, 0.8, 0.7};
                }
                break;
            }
            case Scene::indoor: {
                const double light = 0.15 + 0.75 * std::exp(-((u - 0.2) * (u - 0.2) + (v - 0.3) * (v - 0.3)) / 0.08);
                level = light * (0.6 + 0.4 * coarse(x, y));
                tint = u > 0.6 && v > 0.55 ? Tint{0.9, 0.5, 0.3} : Tint{0.85, 0.9, 0.8};
                break;
            }
            case Scene::low_light: {
                const double lamp = std::exp(-((u - 0.7) * (u - 0.7) + (v - 0.25) * (v - 0.25)) / 0.01);
                level = 0.05 + 0.08 * coarse(x, y) + 0.85 * lamp;
                tint = {1.0, 0.85, 0.6};
                break;
            }
            case Scene::landscape: {
                const double horizon = 0.45 + 0.08 * std::sin(6.0 * u) + 0.05 * coarse(x, y);
                if (v < horizon) {
                    level = 0.65 + 0.3 * (1.0 - v) * coarse(x, y);
                    tint = {0.7, 0.85, 1.0};
                } else {
                    level = 0.1 + 0.35 * coarse(x, y) * (1.2 - v);
                    tint = {0.5, 0.9, 0.4};
                }
                break;
            }
            case Scene::portrait: {
                const bool face = std::hypot((u - 0.5) * 1.2, v - 0.45) < 0.25;
                const double side = 0.25 + 0.6 * u;
                level = face ? side * (0.8 + 0.2 * coarse(x, y)) : 0.2 + 0.25 * coarse(x, y);
                tint = face ? Tint{1.0, 0.8, 0.7} : Tint{0.4, 0.5, 0.7};
                break;
            }
            }
            paint(img, x, y, level * texture, tint);
        }
    }
    return img;
}

RgbImage patch_image(std::size_t w, std::size_t h, double background, double patch, double bright_fraction,
                     std::uint64_t seed)
{
    RgbImage img(w, h);
    const Plane tex = value_noise(w, h, seed, 6.0, 2);
    const double side = std::sqrt(bright_fraction);
    const auto pw = static_cast<std::size_t>(std::lround(side * static_cast<double>(w)));
    const auto ph = static_cast<std::size_t>(std::lround(side * static_cast<double>(h)));
    const std::size_t x0 = (w - pw) / 2;
    const std::size_t y0 = (h - ph) / 2;
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const bool inside = x >= x0 && x < x0 + pw && y >= y0 && y < y0 + ph;
            const double base = inside ? patch : background;
            const double v = std::clamp(base * (0.9 + 0.2 * tex(x, y)), 0.0, 1.0);
            img.red(x, y) = v;
            img.green(x, y) = v;
            img.blue(x, y) = v;
        }
    }
    return img;
}

Plane step_edge(std::size_t w, std::size_t h, double left, double right)
{
    Plane p(w, h);
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x)
            p(x, y) = x < w / 2 ? left : right;
    return p;
}

} // namespace sihdr::test
