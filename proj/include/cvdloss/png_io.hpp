#pragma once

#include <string>

#include "cvdloss/image.hpp"

namespace cvdloss {

// Reads an 8-bit PNG as RGB; alpha, if present, is dropped with a warning on
// stderr. Throws std::runtime_error on I/O or decode failure.
Srgb8Image read_png(const std::string& path);

void write_png(const std::string& path, const Srgb8Image& img);

// Grayscale PNG of a gradient map normalized by its own maximum.
void write_png_gray(const std::string& path, const GradientMagnitudeMap& map);

// Raw row-major float64 dump with a 16-byte header: magic "GMM1",
// width u32, height u32, 4 reserved bytes; little-endian throughout.
void write_gmm_raw(const std::string& path, const GradientMagnitudeMap& map);
GradientMagnitudeMap read_gmm_raw(const std::string& path);

}  // namespace cvdloss
