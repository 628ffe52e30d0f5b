#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "cvdloss/image.hpp"

namespace cvdloss {

// Red-green dichromacies only. Tritanopia would slot in here but is not
// implemented.
enum class Deficiency {
    Protanopia,
    Deuteranopia,
};

std::string_view to_string(Deficiency d);

// Accepts "protan", "deutan" and the full names; throws std::invalid_argument
// otherwise.
Deficiency parse_deficiency(std::string_view name);

// Row-major 3x3 matrix.
struct Mat3 {
    std::array<double, 9> m{};

    Rgb apply(const Rgb& v) const {
        return {
            m[0] * v.r + m[1] * v.g + m[2] * v.b,
            m[3] * v.r + m[4] * v.g + m[5] * v.b,
            m[6] * v.r + m[7] * v.g + m[8] * v.b,
        };
    }
    Mat3 operator*(const Mat3& o) const;
    Mat3 inverse() const;
};

// The dichromat simulation in three factors: linear RGB -> LMS cone
// excitations, a cone-replacement projection per deficiency, and back.
// Constant set transcribed from the 1999 model.
struct SimulationMatrices {
    Mat3 rgb_to_lms;
    Mat3 lms_to_rgb;

    const Mat3& projection(Deficiency d) const;
    // Composite linear-RGB -> linear-RGB matrix at full severity.
    Mat3 composite(Deficiency d) const;

    static const SimulationMatrices& instance();

  private:
    Mat3 projection_protan_;
    Mat3 projection_deutan_;
    SimulationMatrices();
};

// Full-severity dichromat simulation of one linear-RGB pixel.
Rgb simulate_pixel(const Rgb& p, Deficiency d);

LinearRgbImage simulate_image(const LinearRgbImage& img, Deficiency d);

inline constexpr std::array<std::string_view, 4> kPromptTypes = {
    "standard", "colorblind_aware", "protanopia_aware", "deuteranopia_aware"};

// Which simulations to run for a prompt type: deficiency-specific prompts get
// only their own simulation, the other two get both.
std::vector<Deficiency> deficiencies_for_prompt_type(std::string_view prompt_type);

}  // namespace cvdloss
