#pragma once

#include <cstddef>

#include "cvdloss/image.hpp"
#include "cvdloss/simulate.hpp"

namespace cvdloss {

struct CvdLossScore {
    double value = 0.0;        // normalized sum of squared gradient differences
    std::size_t n_pixels = 0;  // pixel count of the underlying maps
    double max_gradient = 0.0; // max over the reference (normal-vision) map
};

// Sum_p (g_ref_p - g_cvd_p)^2 / (N * max_p g_ref_p^2). The reference map is
// always the normal-vision one; the metric is not symmetric. Throws
// std::invalid_argument on dimension mismatch and std::domain_error when the
// reference map is all zero ("degenerate reference: metric undefined").
CvdLossScore cvdloss(const GradientMagnitudeMap& g_ref, const GradientMagnitudeMap& g_cvd);

// Full single-image pipeline: decode, simulate, two gradient maps, score.
CvdLossScore cvdloss_for_image(const Srgb8Image& img, Deficiency d);

// log10(after) - log10(before); negative means the transform reduced the
// structural discrepancy. Throws std::domain_error on nonpositive scores.
double log10_delta(const CvdLossScore& after, const CvdLossScore& before);

}  // namespace cvdloss
