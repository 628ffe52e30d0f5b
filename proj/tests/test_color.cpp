#include <doctest.h>

#include <cmath>
#include <random>

#include "cvdloss/color.hpp"

using namespace cvdloss;

TEST_CASE("sRGB transfer endpoints") {
    CHECK(srgb_channel_to_linear(0) == 0.0);
    CHECK(srgb_channel_to_linear(255) == 1.0);
    CHECK(linear_to_srgb_channel(0.0) == 0);
    CHECK(linear_to_srgb_channel(1.0) == 255);
}

TEST_CASE("sRGB decode of mid-gray code") {
    // ((128/255 + 0.055)/1.055)^2.4
    CHECK(srgb_channel_to_linear(128) == doctest::Approx(0.215860500114).epsilon(1e-9));
}

TEST_CASE("sRGB decode is monotone") {
    for (int c = 1; c < 256; ++c) {
        CHECK(srgb_channel_to_linear(static_cast<std::uint8_t>(c)) >
              srgb_channel_to_linear(static_cast<std::uint8_t>(c - 1)));
    }
}

TEST_CASE("sRGB round trip is the identity on all 256 codes") {
    for (int c = 0; c < 256; ++c) {
        const auto code = static_cast<std::uint8_t>(c);
        CHECK(linear_to_srgb_channel(srgb_channel_to_linear(code)) == code);
    }
}

TEST_CASE("encode clips out-of-range values") {
    CHECK(linear_to_srgb_channel(-0.5) == 0);
    CHECK(linear_to_srgb_channel(1.5) == 255);
}

TEST_CASE("OKLab fixed points") {
    const Oklab black = linear_rgb_to_oklab({0, 0, 0});
    CHECK(black.L == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(black.a == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(black.b == doctest::Approx(0.0).epsilon(1e-12));

    const Oklab white = linear_rgb_to_oklab({1, 1, 1});
    CHECK(white.L == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(white.a) < 1e-3);
    CHECK(std::abs(white.b) < 1e-3);
}

TEST_CASE("OKLab of pure linear red matches the reference matrices") {
    const Oklab red = linear_rgb_to_oklab({1, 0, 0});
    CHECK(red.L == doctest::Approx(0.62795536).epsilon(1e-6));
    CHECK(red.a == doctest::Approx(0.22486306).epsilon(1e-6));
    CHECK(red.b == doctest::Approx(0.12584630).epsilon(1e-6));
}

TEST_CASE("oklab_to_linear_rgb inverts near-white") {
    const Rgb rgb = oklab_to_linear_rgb({1.0, 0.0, 0.0});
    CHECK(rgb.r == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(rgb.g == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(rgb.b == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("linear<->OKLab round trip on a 9^3 grid") {
    for (int i = 0; i < 9; ++i) {
        for (int j = 0; j < 9; ++j) {
            for (int k = 0; k < 9; ++k) {
                const Rgb in{i / 8.0, j / 8.0, k / 8.0};
                const Rgb out = oklab_to_linear_rgb(linear_rgb_to_oklab(in));
                CHECK(std::abs(out.r - in.r) < 1e-6);
                CHECK(std::abs(out.g - in.g) < 1e-6);
                CHECK(std::abs(out.b - in.b) < 1e-6);
            }
        }
    }
}

TEST_CASE("hyab examples") {
    const Oklab c{0.3, 0.1, -0.2};
    CHECK(hyab(c, c) == 0.0);
    CHECK(hyab({1, 0, 0}, {0, 0, 0}) == doctest::Approx(1.0));
    CHECK(hyab({0.5, 0.03, 0.04}, {0.5, 0, 0}) == doctest::Approx(0.05));
}

TEST_CASE("hyab is a symmetric premetric with a lightness lower bound") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uL(0, 1), uab(-0.4, 0.4);
    for (int n = 0; n < 1000; ++n) {
        const Oklab x{uL(rng), uab(rng), uab(rng)};
        const Oklab y{uL(rng), uab(rng), uab(rng)};
        const double d = hyab(x, y);
        CHECK(d >= 0.0);
        CHECK(d == hyab(y, x));
        CHECK(d >= std::abs(x.L - y.L));
        CHECK(hyab(x, x) == 0.0);
    }
}

TEST_CASE("encode_srgb reports the clipped fraction") {
    LinearRgbImage img{2, 1, {0.5, -0.1, 0.2, 1.2, 0.3, 0.4}};
    double clip = -1;
    const Srgb8Image out = encode_srgb(img, &clip);
    CHECK(clip == doctest::Approx(2.0 / 6.0));
    CHECK(out.pixels.size() == 6);
}
