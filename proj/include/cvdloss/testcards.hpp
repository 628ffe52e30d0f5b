#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "cvdloss/image.hpp"
#include "cvdloss/manifest.hpp"

namespace cvdloss {

using RgbU8 = std::array<std::uint8_t, 3>;

// Vertical step edge: left half color a, right half color b.
Srgb8Image make_step_card(int width, int height, RgbU8 a, RgbU8 b);

// Random two-color block texture, deterministic in the seed.
Srgb8Image make_texture_card(int width, int height, RgbU8 a, RgbU8 b,
                             std::uint32_t seed, int block_size = 8);

// Fully saturated hue as sRGB, optionally dimmed by value in (0, 1].
RgbU8 hue_to_rgb8(double hue_degrees, double value = 1.0);

// Writes the synthetic card corpus used by the acceptance checks under
// dir/<category>/standard/: step and texture cards over a grid of saturated
// red/green hue pairs, >= 100 cards, plus a manifest.tsv. Returns the
// manifest path.
std::string write_seed_card_corpus(const std::string& dir, int card_size = 96);

// Small mixed corpus covering all four prompt types (8 categories x 4
// prompt types x 2 images = 64 records) for pipeline-level tests. Returns
// the manifest path.
std::string write_synthetic_eval_corpus(const std::string& dir, int card_size = 48);

}  // namespace cvdloss
