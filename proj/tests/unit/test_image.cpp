#include <doctest.h>

#include "sihdr/error.hpp"
#include "sihdr/image.hpp"
#include "synth.hpp"

using namespace sihdr;

namespace {

double gray_lightness(double g)
{
    return extract_luminance(test::constant_image(1, 1, g, g, g))[0];
}

} // namespace

TEST_CASE("extract_luminance: white, black and mid-gray")
{
    CHECK(gray_lightness(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gray_lightness(0.0) == kLuminanceFloor);
    // frozen from an independent sRGB -> CIELAB converter (skimage.color.rgb2lab)
    CHECK(gray_lightness(0.5) == doctest::Approx(0.5338896474).epsilon(1e-6));
    CHECK(gray_lightness(0.25) == doctest::Approx(0.2698291777).epsilon(1e-6));
    CHECK(gray_lightness(0.1) == doctest::Approx(0.0901044276).epsilon(1e-6));

    const Plane color = extract_luminance(test::constant_image(1, 1, 0.2, 0.4, 0.6));
    CHECK(color[0] == doctest::Approx(0.4200800059).epsilon(1e-4));
}

TEST_CASE("extract_luminance: zero-sized image is rejected")
{
    CHECK_THROWS_AS(extract_luminance(RgbImage{}), InvalidInput);
}

TEST_CASE("extract_luminance is monotone in gray level and bounded")
{
    double previous = 0.0;
    for (int level = 0; level <= 1000; ++level) {
        const double l = gray_lightness(level / 1000.0);
        CHECK(l >= previous);
        CHECK(l >= kLuminanceFloor);
        CHECK(l <= 1.0);
        previous = l;
    }
}

TEST_CASE("normalize_plane")
{
    SUBCASE("constant plane")
    {
        auto [p, stats] = normalize_plane(Plane(3, 2, 0.4));
        for (double v : p.values())
            CHECK(v == 1.0);
        CHECK(stats.mean == 1.0);
        CHECK(stats.max == 0.4);
    }
    SUBCASE("two pixels")
    {
        auto [p, stats] = normalize_plane(Plane(2, 1, {0.0, 1.0}));
        CHECK(p[0] == 0.0);
        CHECK(p[1] == 1.0);
        CHECK(stats.mean == 0.5);
    }
    SUBCASE("ramp")
    {
        auto [p, stats] = normalize_plane(Plane(4, 1, {1, 2, 3, 4}));
        CHECK(p == Plane(4, 1, {0.25, 0.5, 0.75, 1.0}));
        CHECK(stats.mean == 0.625);
        CHECK(stats.max == 4.0);
    }
    SUBCASE("degenerate")
    {
        CHECK_THROWS_AS(normalize_plane(Plane(3, 3, 0.0)), DegenerateInput);
        CHECK_THROWS_AS(normalize_plane(Plane{}), InvalidInput);
    }
}

TEST_CASE("normalize_plane: max is exactly one and renormalizing is the identity")
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Plane p = test::random_plane(7, 5, seed, 0.001, 3.7);
        const auto [once, s1] = normalize_plane(p);
        CHECK(plane_max(once) == 1.0);
        const auto [twice, s2] = normalize_plane(once);
        CHECK(twice == once);
        CHECK(s2.max == 1.0);
        CHECK(s1.mean >= 0.0);
        CHECK(s1.mean <= s1.max);
    }
}

TEST_CASE("brightness and darkness maps")
{
    CHECK(brightness_map(Plane(2, 1, {2, 4})) == Plane(2, 1, {0.5, 1.0}));
    CHECK(brightness_map(Plane(3, 3, 0.7)) == Plane(3, 3, 1.0));
    CHECK(darkness_map(Plane(1, 1, 1.0))[0] == 0.0);
    CHECK(darkness_map(Plane(1, 1, 0.0))[0] == 1.0);
    CHECK(darkness_map(Plane(2, 1, {0.25, 0.75})) == Plane(2, 1, {0.75, 0.25}));
    CHECK_THROWS_AS(darkness_map(Plane(1, 1, 1.5)), InvalidInput);
    CHECK_THROWS_AS(brightness_map(Plane(2, 1, {-1.0, 2.0})), InvalidInput);
}

TEST_CASE("BM + DM == 1 exactly")
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Plane bm = brightness_map(test::random_plane(16, 16, seed, 1e-4, 1.0));
        const Plane dm = darkness_map(bm);
        for (std::size_t i = 0; i < bm.size(); ++i)
            REQUIRE(bm[i] + dm[i] == 1.0);
    }
}

TEST_CASE("Plane rejects mismatched data length")
{
    CHECK_THROWS_AS(Plane(2, 2, std::vector<double>{1.0, 2.0}), InvalidInput);
    CHECK_THROWS_AS(RgbImage(Plane(2, 2), Plane(2, 2), Plane(3, 2)), InvalidInput);
}
