#include "taptips/image_io.hpp"

#include <cstring>

#include <png.h>

#include "taptips/error.hpp"

namespace taptips {
namespace {

struct PngImage {
  png_image image;

  PngImage() {
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

}  // namespace

RgbImage read_png(const std::filesystem::path& path) {
  PngImage png;
  if (png_image_begin_read_from_file(&png.image, path.c_str()) == 0) {
    throw IoError("cannot read image " + path.string() + ": " + png.image.message);
  }
  png.image.format = PNG_FORMAT_RGB;

  RgbImage out;
  out.width = static_cast<int>(png.image.width);
  out.height = static_cast<int>(png.image.height);
  out.pixels.resize(static_cast<std::size_t>(out.width) * static_cast<std::size_t>(out.height));
  static_assert(sizeof(Srgb) == 3);
  if (png_image_finish_read(&png.image, nullptr, out.pixels.data(), 0, nullptr) == 0) {
    throw IoError("cannot decode image " + path.string() + ": " + png.image.message);
  }
  return out;
}

void write_png(const std::filesystem::path& path, const RgbImage& image) {
  PngImage png;
  png.image.width = static_cast<png_uint_32>(image.width);
  png.image.height = static_cast<png_uint_32>(image.height);
  png.image.format = PNG_FORMAT_RGB;
  if (png_image_write_to_file(&png.image, path.c_str(), 0, image.pixels.data(), 0, nullptr) == 0) {
    throw IoError("cannot write image " + path.string() + ": " + png.image.message);
  }
}

}  // namespace taptips
