#include "cvdloss/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace cvdloss {
namespace {

constexpr char kGmmMagic[4] = {'G', 'M', 'M', '1'};

void put_u32le(std::ofstream& os, std::uint32_t v) {
    const unsigned char b[4] = {
        static_cast<unsigned char>(v),
        static_cast<unsigned char>(v >> 8),
        static_cast<unsigned char>(v >> 16),
        static_cast<unsigned char>(v >> 24),
    };
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32le(std::ifstream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

Srgb8Image read_png(const std::string& path) {
    png_image png;
    std::memset(&png, 0, sizeof(png));
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.c_str())) {
        throw std::runtime_error("failed to read PNG '" + path + "': " + png.message);
    }
    if (png.format & PNG_FORMAT_FLAG_ALPHA) {
        std::fprintf(stderr, "warning: %s has an alpha channel; dropping it\n", path.c_str());
    }
    png.format = PNG_FORMAT_RGB;
    Srgb8Image img;
    img.width = static_cast<int>(png.width);
    img.height = static_cast<int>(png.height);
    img.pixels.resize(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, img.pixels.data(), 0, nullptr)) {
        png_image_free(&png);
        throw std::runtime_error("failed to decode PNG '" + path + "': " + png.message);
    }
    return img;
}

void write_png(const std::string& path, const Srgb8Image& img) {
    png_image png;
    std::memset(&png, 0, sizeof(png));
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(img.width);
    png.height = static_cast<png_uint_32>(img.height);
    png.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&png, path.c_str(), 0, img.pixels.data(), 0, nullptr)) {
        throw std::runtime_error("failed to write PNG '" + path + "': " + png.message);
    }
}

void write_png_gray(const std::string& path, const GradientMagnitudeMap& map) {
    double max_v = 0.0;
    for (double v : map.values) max_v = std::max(max_v, v);
    const double scale = max_v > 0.0 ? 255.0 / max_v : 0.0;

    std::vector<std::uint8_t> gray(map.values.size());
    for (std::size_t i = 0; i < map.values.size(); ++i) {
        gray[i] = static_cast<std::uint8_t>(std::lround(map.values[i] * scale));
    }

    png_image png;
    std::memset(&png, 0, sizeof(png));
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(map.width);
    png.height = static_cast<png_uint_32>(map.height);
    png.format = PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&png, path.c_str(), 0, gray.data(), 0, nullptr)) {
        throw std::runtime_error("failed to write PNG '" + path + "': " + png.message);
    }
}

void write_gmm_raw(const std::string& path, const GradientMagnitudeMap& map) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("failed to open '" + path + "' for writing");
    os.write(kGmmMagic, 4);
    put_u32le(os, static_cast<std::uint32_t>(map.width));
    put_u32le(os, static_cast<std::uint32_t>(map.height));
    put_u32le(os, 0);  // reserved
    static_assert(sizeof(double) == 8);
    os.write(reinterpret_cast<const char*>(map.values.data()),
             static_cast<std::streamsize>(map.values.size() * sizeof(double)));
    if (!os) throw std::runtime_error("failed to write '" + path + "'");
}

GradientMagnitudeMap read_gmm_raw(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("failed to open '" + path + "'");
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kGmmMagic, 4) != 0) {
        throw std::runtime_error("'" + path + "' is not a GMM1 file");
    }
    GradientMagnitudeMap map;
    map.width = static_cast<int>(get_u32le(is));
    map.height = static_cast<int>(get_u32le(is));
    get_u32le(is);  // reserved
    map.values.resize(map.pixel_count());
    is.read(reinterpret_cast<char*>(map.values.data()),
            static_cast<std::streamsize>(map.values.size() * sizeof(double)));
    if (!is) throw std::runtime_error("truncated GMM1 file '" + path + "'");
    return map;
}

}  // namespace cvdloss
