#include "cvdloss/simulate.hpp"

#include <cmath>
#include <stdexcept>

namespace cvdloss {

std::string_view to_string(Deficiency d) {
    return d == Deficiency::Protanopia ? "protan" : "deutan";
}

Deficiency parse_deficiency(std::string_view name) {
    if (name == "protan" || name == "protanopia") return Deficiency::Protanopia;
    if (name == "deutan" || name == "deuteranopia") return Deficiency::Deuteranopia;
    throw std::invalid_argument("unknown deficiency '" + std::string(name) +
                                "' (expected protan or deutan)");
}

Mat3 Mat3::operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += m[3 * i + k] * o.m[3 * k + j];
            r.m[3 * i + j] = s;
        }
    }
    return r;
}

Mat3 Mat3::inverse() const {
    const auto& a = m;
    const double det = a[0] * (a[4] * a[8] - a[5] * a[7]) -
                       a[1] * (a[3] * a[8] - a[5] * a[6]) +
                       a[2] * (a[3] * a[7] - a[4] * a[6]);
    if (std::abs(det) < 1e-30) throw std::domain_error("singular matrix");
    const double inv = 1.0 / det;
    return Mat3{{
        (a[4] * a[8] - a[5] * a[7]) * inv, (a[2] * a[7] - a[1] * a[8]) * inv,
        (a[1] * a[5] - a[2] * a[4]) * inv, (a[5] * a[6] - a[3] * a[8]) * inv,
        (a[0] * a[8] - a[2] * a[6]) * inv, (a[2] * a[3] - a[0] * a[5]) * inv,
        (a[3] * a[7] - a[4] * a[6]) * inv, (a[1] * a[6] - a[0] * a[7]) * inv,
        (a[0] * a[4] - a[1] * a[3]) * inv,
    }};
}

SimulationMatrices::SimulationMatrices() {
    // Linear Rec.709 RGB -> LMS cone excitations (Judd-Vos XYZ via the
    // Smith-Pokorny fundamentals), as published with the 1999 model.
    rgb_to_lms = Mat3{{
        17.8824, 43.5161, 4.11935,
        3.45565, 27.1554, 3.86714,
        0.0299566, 0.184309, 1.46709,
    }};
    lms_to_rgb = rgb_to_lms.inverse();

    // Missing-cone replacement: the absent response is reconstructed from the
    // two remaining cone classes so that the achromatic axis is preserved.
    projection_protan_ = Mat3{{
        0.0, 2.02344, -2.52581,
        0.0, 1.0, 0.0,
        0.0, 0.0, 1.0,
    }};
    projection_deutan_ = Mat3{{
        1.0, 0.0, 0.0,
        0.494207, 0.0, 1.24827,
        0.0, 0.0, 1.0,
    }};
}

const Mat3& SimulationMatrices::projection(Deficiency d) const {
    return d == Deficiency::Protanopia ? projection_protan_ : projection_deutan_;
}

Mat3 SimulationMatrices::composite(Deficiency d) const {
    return lms_to_rgb * projection(d) * rgb_to_lms;
}

const SimulationMatrices& SimulationMatrices::instance() {
    static const SimulationMatrices matrices;
    return matrices;
}

Rgb simulate_pixel(const Rgb& p, Deficiency d) {
    const auto& sm = SimulationMatrices::instance();
    return sm.lms_to_rgb.apply(sm.projection(d).apply(sm.rgb_to_lms.apply(p)));
}

LinearRgbImage simulate_image(const LinearRgbImage& img, Deficiency d) {
    const Mat3 c = SimulationMatrices::instance().composite(d);
    LinearRgbImage out{img.width, img.height, std::vector<double>(img.pixels.size())};
    for (std::size_t i = 0; i < img.pixels.size(); i += 3) {
        const Rgb s = c.apply({img.pixels[i], img.pixels[i + 1], img.pixels[i + 2]});
        out.pixels[i] = s.r;
        out.pixels[i + 1] = s.g;
        out.pixels[i + 2] = s.b;
    }
    return out;
}

std::vector<Deficiency> deficiencies_for_prompt_type(std::string_view prompt_type) {
    if (prompt_type == "standard" || prompt_type == "colorblind_aware") {
        return {Deficiency::Protanopia, Deficiency::Deuteranopia};
    }
    if (prompt_type == "protanopia_aware") return {Deficiency::Protanopia};
    if (prompt_type == "deuteranopia_aware") return {Deficiency::Deuteranopia};
    throw std::invalid_argument(
        "unknown prompt_type '" + std::string(prompt_type) +
        "' (expected one of: standard, colorblind_aware, protanopia_aware, "
        "deuteranopia_aware)");
}

}  // namespace cvdloss
