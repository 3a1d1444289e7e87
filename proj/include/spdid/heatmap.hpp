#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "spdid/pairwise.hpp"

namespace spdid {

inline constexpr int kHeatmapCellPixels = 8;

/// 8-bit RGB raster, row-major, 3 bytes per pixel.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;
};

/// Renders a distance matrix as an 8x8-pixel-per-cell grayscale heatmap
/// (smallest value in the matrix white, largest black).
/// Each row's minimum gets a red 2x2 centre marker; diagonal cells that are a
/// strict row minimum get a green outline.
RgbImage render_heatmap(const DistanceMatrix& d);

/// Binary PPM (P6).
std::vector<std::uint8_t> encode_ppm(const RgbImage& img);
void save_heatmap(const std::filesystem::path& path, const DistanceMatrix& d);

}  // namespace spdid
