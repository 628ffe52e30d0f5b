#include "cvdloss/color.hpp"

#include <algorithm>
#include <array>

namespace cvdloss {
namespace {

// Decode table for the 256 sRGB codes; built once, read-only afterwards.
const std::array<double, 256>& decode_table() {
    static const std::array<double, 256> table = [] {
        std::array<double, 256> t{};
        for (int i = 0; i < 256; ++i) {
            const double c = i / 255.0;
            t[i] = c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
        }
        return t;
    }();
    return table;
}

}  // namespace

double srgb_channel_to_linear(std::uint8_t code) { return decode_table()[code]; }

std::uint8_t linear_to_srgb_channel(double v) {
    v = std::clamp(v, 0.0, 1.0);
    const double e = v <= 0.0031308 ? 12.92 * v : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
    return static_cast<std::uint8_t>(std::lround(e * 255.0));
}

// Linear sRGB -> OKLab, verbatim constants from the reference definition.
Oklab linear_rgb_to_oklab(const Rgb& p) {
    const double l = 0.4122214708 * p.r + 0.5363325363 * p.g + 0.0514459929 * p.b;
    const double m = 0.2119034982 * p.r + 0.6806995451 * p.g + 0.1073969566 * p.b;
    const double s = 0.0883024619 * p.r + 0.2817188376 * p.g + 0.6299787005 * p.b;

    const double l_ = std::cbrt(l);
    const double m_ = std::cbrt(m);
    const double s_ = std::cbrt(s);

    return {
        0.2104542553 * l_ + 0.7936177850 * m_ - 0.0040720468 * s_,
        1.9779984951 * l_ - 2.4285922050 * m_ + 0.4505937099 * s_,
        0.0259040371 * l_ + 0.7827717662 * m_ - 0.8086757660 * s_,
    };
}

Rgb oklab_to_linear_rgb(const Oklab& c) {
    const double l_ = c.L + 0.3963377774 * c.a + 0.2158037573 * c.b;
    const double m_ = c.L - 0.1055613458 * c.a - 0.0638541728 * c.b;
    const double s_ = c.L - 0.0894841775 * c.a - 1.2914855480 * c.b;

    const double l = l_ * l_ * l_;
    const double m = m_ * m_ * m_;
    const double s = s_ * s_ * s_;

    return {
        +4.0767416621 * l - 3.3077115913 * m + 0.2309699292 * s,
        -1.2684380046 * l + 2.6097574011 * m - 0.3413193965 * s,
        -0.0041960863 * l - 0.7034186147 * m + 1.7076147010 * s,
    };
}

LinearRgbImage decode_srgb(const Srgb8Image& img) {
    const auto& table = decode_table();
    LinearRgbImage out{img.width, img.height, std::vector<double>(img.pixels.size())};
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        out.pixels[i] = table[img.pixels[i]];
    }
    return out;
}

Srgb8Image encode_srgb(const LinearRgbImage& img) { return encode_srgb(img, nullptr); }

Srgb8Image encode_srgb(const LinearRgbImage& img, double* clip_fraction) {
    Srgb8Image out{img.width, img.height, std::vector<std::uint8_t>(img.pixels.size())};
    std::size_t clipped = 0;
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const double v = img.pixels[i];
        if (v < 0.0 || v > 1.0) ++clipped;
        out.pixels[i] = linear_to_srgb_channel(v);
    }
    if (clip_fraction) {
        *clip_fraction = img.pixels.empty() ? 0.0 : static_cast<double>(clipped) / img.pixels.size();
    }
    return out;
}

OklabImage to_oklab(const LinearRgbImage& img) {
    OklabImage out{img.width, img.height, std::vector<double>(img.pixels.size())};
    for (std::size_t i = 0; i < img.pixels.size(); i += 3) {
        const Oklab c = linear_rgb_to_oklab({img.pixels[i], img.pixels[i + 1], img.pixels[i + 2]});
        out.pixels[i] = c.L;
        out.pixels[i + 1] = c.a;
        out.pixels[i + 2] = c.b;
    }
    return out;
}

}  // namespace cvdloss
