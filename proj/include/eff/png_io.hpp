#pragma once

#include <filesystem>

#include "eff/raster.hpp"

namespace eff {

/// Load a PNG as 8-bit RGB. Palette and grayscale images are expanded,
/// 16-bit samples are reduced, alpha is stripped.
RasterImage read_png_rgb8(const std::filesystem::path& path);

void write_png_rgb8(const std::filesystem::path& path, const RasterImage& img);

/// 8-bit grayscale writer (field heatmaps).
void write_png_gray8(const std::filesystem::path& path, int width, int height,
                     const std::vector<std::uint8_t>& samples);

} // namespace eff
