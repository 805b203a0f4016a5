#pragma once

#include <filesystem>

#include "blurfisher/image.hpp"

namespace blurfisher {

/// Reads 8/16-bit grayscale (or RGB, reduced to luminance) PNG and binary or
/// ASCII PGM. Samples are mapped to [0, 1] and, when `linearize` is set,
/// decoded from sRGB to linear luminance.
LuminanceImage read_luminance(const std::filesystem::path& path, bool linearize = true,
                              double receptors_per_degree = 60.0);

/// Writes samples clamped to [0, 1], optionally sRGB-encoded, as 8 or 16 bit
/// grayscale. The format follows the extension (.png or .pgm).
void write_luminance(const std::filesystem::path& path, const RealGrid& samples,
                     int bit_depth = 16, bool encode_srgb = true);

void write_rgb_png(const std::filesystem::path& path, const RgbImage& image);
RgbImage read_rgb_png(const std::filesystem::path& path);

}  // namespace blurfisher
