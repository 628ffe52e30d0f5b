#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "cvdloss/color.hpp"
#include "cvdloss/gradient.hpp"

using namespace cvdloss;

namespace {

OklabImage constant_image(int w, int h, Oklab c) {
    OklabImage img{w, h, {}};
    img.pixels.resize(3u * w * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) img.set(x, y, c);
    }
    return img;
}

OklabImage random_image(int w, int h, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uL(0, 1), uab(-0.3, 0.3);
    OklabImage img{w, h, {}};
    img.pixels.resize(3u * w * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) img.set(x, y, {uL(rng), uab(rng), uab(rng)});
    }
    return img;
}

}  // namespace

TEST_CASE("images below 2x2 are rejected") {
    CHECK_THROWS_AS(gradient_magnitude_map(constant_image(1, 5, {})), std::invalid_argument);
    CHECK_THROWS_AS(gradient_magnitude_map(constant_image(5, 1, {})), std::invalid_argument);
    CHECK_NOTHROW(gradient_magnitude_map(constant_image(2, 2, {})));
}

TEST_CASE("constant image gives the zero map") {
    const auto map = gradient_magnitude_map(constant_image(8, 6, {0.5, 0.1, -0.1}));
    CHECK(map.width == 8);
    CHECK(map.height == 6);
    for (double v : map.values) CHECK(v == 0.0);
}

TEST_CASE("step edge: support confined to the seam, value HyAB(A,B)/2") {
    const Oklab a{0.6, 0.2, 0.1};
    const Oklab b{0.4, -0.15, 0.05};
    const int w = 10, h = 6;
    OklabImage img = constant_image(w, h, a);
    for (int y = 0; y < h; ++y) {
        for (int x = w / 2; x < w; ++x) img.set(x, y, b);
    }
    const auto map = gradient_magnitude_map(img);
    const double expected = hyab(a, b) / 2.0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double v = map.at(x, y);
            if (x == w / 2 - 1 || x == w / 2) {
                CHECK(std::abs(v - expected) < 1e-12);
            } else {
                CHECK(v == 0.0);
            }
        }
    }
}

TEST_CASE("values are nonnegative and finite on random images") {
    const auto map = gradient_magnitude_map(random_image(32, 32, 5));
    for (double v : map.values) {
        CHECK(v >= 0.0);
        CHECK(std::isfinite(v));
    }
}

TEST_CASE("translation equivariance in the interior") {
    const OklabImage img = random_image(20, 20, 9);
    // shift content one pixel left
    OklabImage shifted{img.width, img.height, img.pixels};
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width - 1; ++x) shifted.set(x, y, img.at(x + 1, y));
    }
    const auto g = gradient_magnitude_map(img);
    const auto gs = gradient_magnitude_map(shifted);
    for (int y = 2; y < img.height - 2; ++y) {
        for (int x = 2; x < img.width - 3; ++x) {
            CHECK(gs.at(x, y) == doctest::Approx(g.at(x + 1, y)).epsilon(1e-12));
        }
    }
}

TEST_CASE("chroma scaling at constant lightness scales the map") {
    OklabImage img = random_image(12, 12, 21);
    for (int y = 0; y < 12; ++y) {
        for (int x = 0; x < 12; ++x) {
            Oklab c = img.at(x, y);
            c.L = 0.5;
            img.set(x, y, c);
        }
    }
    OklabImage doubled = img;
    for (std::size_t i = 0; i < doubled.pixels.size(); i += 3) {
        doubled.pixels[i + 1] *= 2.0;
        doubled.pixels[i + 2] *= 2.0;
    }
    const auto g1 = gradient_magnitude_map(img);
    const auto g2 = gradient_magnitude_map(doubled);
    for (std::size_t i = 0; i < g1.values.size(); ++i) {
        CHECK(g2.values[i] == doctest::Approx(2.0 * g1.values[i]).epsilon(1e-9));
    }
}
