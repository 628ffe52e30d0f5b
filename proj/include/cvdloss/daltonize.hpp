#pragma once

#include "cvdloss/image.hpp"
#include "cvdloss/simulate.hpp"

namespace cvdloss {

struct DaltonizationResult {
    Srgb8Image image;
    Deficiency deficiency;
    // Fraction of channel values that fell outside [0,1] at encode time.
    // Daltonization routinely pushes values out of gamut.
    double clip_fraction = 0.0;
};

// Full-strength daltonization: the red-green error lost under simulation is
// redistributed into the lightness and blue-yellow channels and added back.
// Runs in linear RGB; clipping only at the final sRGB encode.
DaltonizationResult daltonize(const Srgb8Image& img, Deficiency d);

LinearRgbImage daltonize_linear(const LinearRgbImage& img, Deficiency d);

// log10 CVDLoss change from daltonizing img for deficiency d; negative means
// the daltonized image preserves gradient structure better.
double daltonization_delta(const Srgb8Image& img, Deficiency d);

}  // namespace cvdloss
