#pragma once

#include "cvdloss/image.hpp"

namespace cvdloss {

// Perceptual gradient magnitude map: central differences of HyAB distances
// between horizontal and vertical neighbor pairs, edge-replicated borders,
// magnitude sqrt(gx^2 + gy^2). Throws std::invalid_argument below 2x2.
GradientMagnitudeMap gradient_magnitude_map(const OklabImage& img);

}  // namespace cvdloss
