#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace cvdloss {

struct Rgb {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
};

struct Oklab {
    double L = 0.0;
    double a = 0.0;
    double b = 0.0;
};

// 8-bit sRGB raster, row-major RGB triples. The I/O boundary type; all
// math happens in the floating-point images below.
struct Srgb8Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // 3 * width * height

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

    const std::uint8_t* at(int x, int y) const {
        return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
    }
    std::uint8_t* at(int x, int y) {
        return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
    }
};

// Linear-light RGB in double precision. Values may leave [0,1] mid-pipeline
// (simulation and daltonization both produce transient out-of-gamut colors);
// clipping happens only at sRGB encode.
struct LinearRgbImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;  // 3 * width * height

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

    Rgb at(int x, int y) const {
        const double* p = pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
        return {p[0], p[1], p[2]};
    }
    void set(int x, int y, const Rgb& c) {
        double* p = pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
    }
};

struct OklabImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;  // 3 * width * height, (L, a, b) triples

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

    Oklab at(int x, int y) const {
        const double* p = pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
        return {p[0], p[1], p[2]};
    }
    void set(int x, int y, const Oklab& c) {
        double* p = pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
        p[0] = c.L;
        p[1] = c.a;
        p[2] = c.b;
    }
};

// Per-pixel nonnegative gradient magnitudes.
struct GradientMagnitudeMap {
    int width = 0;
    int height = 0;
    std::vector<double> values;  // width * height

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

    double at(int x, int y) const {
        return values[static_cast<std::size_t>(y) * width + x];
    }
};

}  // namespace cvdloss
