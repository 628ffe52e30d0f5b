#include "cvdloss/metric.hpp"

#include <cmath>
#include <stdexcept>

#include "cvdloss/color.hpp"
#include "cvdloss/gradient.hpp"

namespace cvdloss {

CvdLossScore cvdloss(const GradientMagnitudeMap& g_ref, const GradientMagnitudeMap& g_cvd) {
    if (g_ref.width != g_cvd.width || g_ref.height != g_cvd.height) {
        throw std::invalid_argument("cvdloss: gradient map dimensions differ");
    }
    double max_ref = 0.0;
    for (double v : g_ref.values) max_ref = std::max(max_ref, v);
    if (max_ref == 0.0) {
        throw std::domain_error("degenerate reference: metric undefined");
    }
    // Row-major accumulation; kept as a plain scalar loop so the oracle
    // equivalence bound is trivially met.
    double sum = 0.0;
    for (std::size_t i = 0; i < g_ref.values.size(); ++i) {
        const double d = g_ref.values[i] - g_cvd.values[i];
        sum += d * d;
    }
    const std::size_t n = g_ref.values.size();
    return {sum / (static_cast<double>(n) * max_ref * max_ref), n, max_ref};
}

CvdLossScore cvdloss_for_image(const Srgb8Image& img, Deficiency d) {
    const LinearRgbImage linear = decode_srgb(img);
    const GradientMagnitudeMap g_ref = gradient_magnitude_map(to_oklab(linear));
    const GradientMagnitudeMap g_cvd =
        gradient_magnitude_map(to_oklab(simulate_image(linear, d)));
    return cvdloss(g_ref, g_cvd);
}

double log10_delta(const CvdLossScore& after, const CvdLossScore& before) {
    if (after.value <= 0.0 || before.value <= 0.0) {
        throw std::domain_error("log of nonpositive score");
    }
    return std::log10(after.value) - std::log10(before.value);
}

}  // namespace cvdloss
