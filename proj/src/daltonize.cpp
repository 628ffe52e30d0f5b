#include "cvdloss/daltonize.hpp"

#include "cvdloss/color.hpp"
#include "cvdloss/metric.hpp"

namespace cvdloss {
namespace {

// Error redistribution matrix from the reference daltonization package:
// row 0 discards the residual red error, rows 1 and 2 shift 70% of it into
// the green and blue channels.
constexpr Mat3 kErrorRedistribution{{
    0.0, 0.0, 0.0,
    0.7, 1.0, 0.0,
    0.7, 0.0, 1.0,
}};

}  // namespace

LinearRgbImage daltonize_linear(const LinearRgbImage& img, Deficiency d) {
    const Mat3 sim = SimulationMatrices::instance().composite(d);
    LinearRgbImage out{img.width, img.height, std::vector<double>(img.pixels.size())};
    for (std::size_t i = 0; i < img.pixels.size(); i += 3) {
        const Rgb p{img.pixels[i], img.pixels[i + 1], img.pixels[i + 2]};
        const Rgb s = sim.apply(p);
        const Rgb corr = kErrorRedistribution.apply({p.r - s.r, p.g - s.g, p.b - s.b});
        out.pixels[i] = p.r + corr.r;
        out.pixels[i + 1] = p.g + corr.g;
        out.pixels[i + 2] = p.b + corr.b;
    }
    return out;
}

DaltonizationResult daltonize(const Srgb8Image& img, Deficiency d) {
    double clip_fraction = 0.0;
    Srgb8Image out = encode_srgb(daltonize_linear(decode_srgb(img), d), &clip_fraction);
    return {std::move(out), d, clip_fraction};
}

double daltonization_delta(const Srgb8Image& img, Deficiency d) {
    const CvdLossScore before = cvdloss_for_image(img, d);
    const CvdLossScore after = cvdloss_for_image(daltonize(img, d).image, d);
    return log10_delta(after, before);
}

}  // namespace cvdloss
