#include "cvdloss/testcards.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "cvdloss/color.hpp"
#include "cvdloss/png_io.hpp"
#include "cvdloss/simulate.hpp"

namespace fs = std::filesystem;

namespace cvdloss {
namespace {

void fill_rect(Srgb8Image& img, int x0, int y0, int x1, int y1, RgbU8 c) {
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
            std::uint8_t* p = img.at(x, y);
            p[0] = c[0];
            p[1] = c[1];
            p[2] = c[2];
        }
    }
}

const std::vector<std::string>& categories() {
    static const std::vector<std::string> cats(kDefaultCategories.begin(),
                                               kDefaultCategories.end());
    return cats;
}

void write_manifest_file(const std::string& dir, const DatasetManifest& m) {
    std::ofstream os(dir + "/manifest.tsv");
    os << format_manifest(m);
}

double protan_lightness(RgbU8 c) {
    const Rgb lin{srgb_channel_to_linear(c[0]), srgb_channel_to_linear(c[1]),
                  srgb_channel_to_linear(c[2])};
    return linear_rgb_to_oklab(simulate_pixel(lin, Deficiency::Protanopia)).L;
}

// Dims the green hue until its protanopic lightness matches the red side's.
// A full-value red and a full-value green stay separable by lightness alone
// under protanopia, which is not the confusion the cards are meant to probe;
// matching simulated lightness makes the pair collapse the way Ishihara-style
// confusion colors do.
RgbU8 confusion_green(double green_hue, RgbU8 red) {
    const double target = protan_lightness(red);
    double lo = 0.05, hi = 1.0;
    for (int i = 0; i < 40; ++i) {
        const double mid = 0.5 * (lo + hi);
        (protan_lightness(hue_to_rgb8(green_hue, mid)) > target ? hi : lo) = mid;
    }
    return hue_to_rgb8(green_hue, 0.5 * (lo + hi));
}

}  // namespace

Srgb8Image make_step_card(int width, int height, RgbU8 a, RgbU8 b) {
    Srgb8Image img{width, height, std::vector<std::uint8_t>(3u * width * height)};
    fill_rect(img, 0, 0, width / 2, height, a);
    fill_rect(img, width / 2, 0, width, height, b);
    return img;
}

Srgb8Image make_texture_card(int width, int height, RgbU8 a, RgbU8 b,
                             std::uint32_t seed, int block_size) {
    Srgb8Image img{width, height, std::vector<std::uint8_t>(3u * width * height)};
    std::mt19937 rng(seed);
    std::bernoulli_distribution coin(0.5);
    const int bx = (width + block_size - 1) / block_size;
    const int by = (height + block_size - 1) / block_size;
    for (int j = 0; j < by; ++j) {
        for (int i = 0; i < bx; ++i) {
            const RgbU8 c = coin(rng) ? a : b;
            fill_rect(img, i * block_size, j * block_size,
                      std::min((i + 1) * block_size, width),
                      std::min((j + 1) * block_size, height), c);
        }
    }
    return img;
}

RgbU8 hue_to_rgb8(double hue_degrees, double value) {
    const double h = std::fmod(std::fmod(hue_degrees, 360.0) + 360.0, 360.0) / 60.0;
    const double x = 1.0 - std::abs(std::fmod(h, 2.0) - 1.0);
    double r = 0, g = 0, b = 0;
    if (h < 1) { r = 1; g = x; }
    else if (h < 2) { r = x; g = 1; }
    else if (h < 3) { g = 1; b = x; }
    else if (h < 4) { g = x; b = 1; }
    else if (h < 5) { r = x; b = 1; }
    else { r = 1; b = x; }
    return {static_cast<std::uint8_t>(std::lround(r * 255 * value)),
            static_cast<std::uint8_t>(std::lround(g * 255 * value)),
            static_cast<std::uint8_t>(std::lround(b * 255 * value))};
}

std::string write_seed_card_corpus(const std::string& dir, int card_size) {
    // Hue-pair grid around pure red and pure green; with the green side
    // matched in protanopic lightness, these pairs collapse hardest under
    // red-green dichromacy.
    const std::vector<double> red_hues = {-20, -10, 0, 10, 20, 30, 40};
    const std::vector<double> green_hues = {95, 105, 115, 125, 135};

    DatasetManifest m;
    std::size_t n = 0;
    for (double rh : red_hues) {
        for (double gh : green_hues) {
            const RgbU8 a = hue_to_rgb8(rh);
            const RgbU8 b = confusion_green(gh, a);
            const std::string category = categories()[n % categories().size()];
            const std::string subdir = dir + "/" + category + "/standard";
            fs::create_directories(subdir);

            const std::string step_path = subdir + "/step_" + std::to_string(n) + ".png";
            write_png(step_path, make_step_card(card_size, card_size, a, b));
            m.records.push_back({step_path, category, "standard",
                                 static_cast<long>(n)});

            const std::string tex_path = subdir + "/texture_" + std::to_string(n) + ".png";
            write_png(tex_path, make_texture_card(card_size, card_size, a, b,
                                                  static_cast<std::uint32_t>(1000 + n)));
            m.records.push_back({tex_path, category, "standard",
                                 static_cast<long>(n)});

            // A second texture scale keeps the corpus above 100 cards.
            const std::string fine_path = subdir + "/texture_fine_" + std::to_string(n) + ".png";
            write_png(fine_path, make_texture_card(card_size, card_size, a, b,
                                                   static_cast<std::uint32_t>(2000 + n), 4));
            m.records.push_back({fine_path, category, "standard",
                                 static_cast<long>(n)});
            ++n;
        }
    }
    write_manifest_file(dir, m);
    return dir + "/manifest.tsv";
}

std::string write_synthetic_eval_corpus(const std::string& dir, int card_size) {
    DatasetManifest m;
    long seed = 0;
    for (const auto& category : categories()) {
        for (auto prompt_type : kPromptTypes) {
            const std::string subdir = dir + "/" + category + "/" + std::string(prompt_type);
            fs::create_directories(subdir);
            for (int i = 0; i < 2; ++i) {
                // Vary both hues with the seed so every group gets distinct,
                // non-degenerate scores.
                const RgbU8 a = hue_to_rgb8(static_cast<double>(seed * 7 % 60) - 20.0);
                const RgbU8 b = hue_to_rgb8(100.0 + static_cast<double>(seed * 11 % 40));
                const std::string path = subdir + "/card_" + std::to_string(i) + ".png";
                write_png(path, i == 0
                                    ? make_step_card(card_size, card_size, a, b)
                                    : make_texture_card(card_size, card_size, a, b,
                                                        static_cast<std::uint32_t>(seed)));
                m.records.push_back({path, category, std::string(prompt_type), seed});
                ++seed;
            }
        }
    }
    write_manifest_file(dir, m);
    return dir + "/manifest.tsv";
}

}  // namespace cvdloss
