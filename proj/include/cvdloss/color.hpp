#pragma once

#include <cmath>
#include <cstdint>

#include "cvdloss/image.hpp"

namespace cvdloss {

// Piecewise sRGB electro-optical transfer function and its inverse.
double srgb_channel_to_linear(std::uint8_t code);
std::uint8_t linear_to_srgb_channel(double v);

// OKLab conversion, constants per the published reference.
Oklab linear_rgb_to_oklab(const Rgb& p);
Rgb oklab_to_linear_rgb(const Oklab& c);

LinearRgbImage decode_srgb(const Srgb8Image& img);
Srgb8Image encode_srgb(const LinearRgbImage& img);

// encode_srgb that also reports the fraction of channel values that fell
// outside [0,1] and were clipped.
Srgb8Image encode_srgb(const LinearRgbImage& img, double* clip_fraction);

OklabImage to_oklab(const LinearRgbImage& img);

// HyAB distance: city-block in lightness, Euclidean in the chroma plane.
inline double hyab(const Oklab& c1, const Oklab& c2) {
    const double da = c1.a - c2.a;
    const double db = c1.b - c2.b;
    return std::abs(c1.L - c2.L) + std::sqrt(da * da + db * db);
}

}  // namespace cvdloss
