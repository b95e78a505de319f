#pragma once

#include <filesystem>
#include <vector>

#include "taptips/styling.hpp"

namespace taptips {

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<Srgb> pixels;  // row-major
};

// Decodes a PNG to 8-bit RGB (alpha composited onto black). Throws IoError.
RgbImage read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const RgbImage& image);

}  // namespace taptips
