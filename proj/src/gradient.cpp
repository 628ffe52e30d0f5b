#include "cvdloss/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cvdloss/color.hpp"

namespace cvdloss {

GradientMagnitudeMap gradient_magnitude_map(const OklabImage& img) {
    if (img.width < 2 || img.height < 2) {
        throw std::invalid_argument("gradient_magnitude_map: image must be at least 2x2");
    }
    GradientMagnitudeMap map{img.width, img.height,
                             std::vector<double>(img.pixel_count())};
    const int w = img.width;
    const int h = img.height;
    for (int y = 0; y < h; ++y) {
        const int yu = std::max(y - 1, 0);
        const int yd = std::min(y + 1, h - 1);
        for (int x = 0; x < w; ++x) {
            const int xl = std::max(x - 1, 0);
            const int xr = std::min(x + 1, w - 1);
            const double gx = 0.5 * hyab(img.at(xr, y), img.at(xl, y));
            const double gy = 0.5 * hyab(img.at(x, yd), img.at(x, yu));
            map.values[static_cast<std::size_t>(y) * w + x] = std::sqrt(gx * gx + gy * gy);
        }
    }
    return map;
}

}  // namespace cvdloss
