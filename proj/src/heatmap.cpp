#include "spdid/heatmap.hpp"

#include <cmath>
#include <string>

#include "spdid/dataio.hpp"
#include "spdid/error.hpp"

namespace spdid {

namespace {

void set_pixel(RgbImage& img, int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const auto at = (static_cast<std::size_t>(y) * static_cast<std::size_t>(img.width) + static_cast<std::size_t>(x)) * 3;
  img.pixels[at] = r;
  img.pixels[at + 1] = g;
  img.pixels[at + 2] = b;
}

}  // namespace

RgbImage render_heatmap(const DistanceMatrix& d) {
  const auto rows = static_cast<int>(d.values.rows());
  const auto cols = static_cast<int>(d.values.cols());
  if (rows == 0 || cols == 0) throw Error(ErrorCode::InvalidParameter, "cannot render an empty matrix");
  constexpr int cell = kHeatmapCellPixels;

  RgbImage img;
  img.width = cols * cell;
  img.height = rows * cell;
  img.pixels.assign(static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height) * 3, 0);

  const double lo = d.values.minCoeff();
  const double hi = d.values.maxCoeff();
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double t = hi > lo ? (d.values(i, j) - lo) / (hi - lo) : 0.0;
      const auto gray = static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - t)));
      for (int y = 0; y < cell; ++y) {
        for (int x = 0; x < cell; ++x) set_pixel(img, j * cell + x, i * cell + y, gray, gray, gray);
      }
    }
  }

  for (int i = 0; i < rows; ++i) {
    int best = 0;
    bool strict = true;
    for (int j = 1; j < cols; ++j) {
      if (d.values(i, j) < d.values(i, best)) {
        best = j;
        strict = true;
      } else if (d.values(i, j) == d.values(i, best)) {
        strict = false;
      }
    }
    if (i < cols && best == i && strict) {
      for (int k = 0; k < cell; ++k) {
        set_pixel(img, i * cell + k, i * cell, 0, 200, 0);
        set_pixel(img, i * cell + k, i * cell + cell - 1, 0, 200, 0);
        set_pixel(img, i * cell, i * cell + k, 0, 200, 0);
        set_pixel(img, i * cell + cell - 1, i * cell + k, 0, 200, 0);
      }
    }
    for (int y = cell / 2 - 1; y <= cell / 2; ++y) {
      for (int x = cell / 2 - 1; x <= cell / 2; ++x) set_pixel(img, best * cell + x, i * cell + y, 220, 0, 0);
    }
  }
  return img;
}

std::vector<std::uint8_t> encode_ppm(const RgbImage& img) {
  const std::string header = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels.begin(), img.pixels.end());
  return out;
}

void save_heatmap(const std::filesystem::path& path, const DistanceMatrix& d) {
  const std::vector<std::uint8_t> bytes = encode_ppm(render_heatmap(d));
  io::write_file(path, std::string(bytes.begin(), bytes.end()));
}

}  // namespace spdid
