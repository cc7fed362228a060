#include "sodbench/png_io.hpp"

#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>
#include <string>

#include "sodbench/map.hpp"

namespace sodbench::png {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};

struct DecodeState {
  char message[256] = {};
};

void on_error(png_structp png, png_const_charp msg) {
  auto* state = static_cast<DecodeState*>(png_get_error_ptr(png));
  std::snprintf(state->message, sizeof(state->message), "%s", msg);
  png_longjmp(png, 1);
}

void on_warning(png_structp, png_const_charp) {}

// Everything between setjmp and a possible longjmp is trivially destructible;
// the output vector lives in the caller and is only touched after decoding.
bool decode(std::FILE* file, RawImage* out, DecodeState* state) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, state, on_error, on_warning);
  if (png == nullptr) {
    std::snprintf(state->message, sizeof(state->message), "out of memory");
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    std::snprintf(state->message, sizeof(state->message), "out of memory");
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }

  png_init_io(png, file);
  png_read_png(png, info, PNG_TRANSFORM_EXPAND | PNG_TRANSFORM_STRIP_ALPHA, nullptr);

  const auto width = png_get_image_width(png, info);
  const auto height = png_get_image_height(png, info);
  const int channels = png_get_channels(png, info);
  const int depth = png_get_bit_depth(png, info);
  png_bytepp rows = png_get_rows(png, info);

  out->width = static_cast<int>(width);
  out->height = static_cast<int>(height);
  out->channels = channels;
  out->bit_depth = depth;
  if ((channels == 1 || channels == 3) && (depth == 8 || depth == 16) && width > 0 && height > 0) {
    const std::size_t row_samples = static_cast<std::size_t>(width) * channels;
    out->samples.resize(row_samples * height);
    for (png_uint_32 y = 0; y < height; ++y) {
      const png_bytep row = rows[y];
      std::uint16_t* dst = out->samples.data() + y * row_samples;
      if (depth == 8) {
        for (std::size_t i = 0; i < row_samples; ++i) dst[i] = row[i];
      } else {
        for (std::size_t i = 0; i < row_samples; ++i) {
          dst[i] = static_cast<std::uint16_t>((row[2 * i] << 8) | row[2 * i + 1]);
        }
      }
    }
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

void write_simplified(const std::filesystem::path& path, int width, int height,
                      png_uint_32 format, const void* buffer) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;
  if (png_image_write_to_file(&image, path.c_str(), 0, buffer, 0, nullptr) == 0) {
    std::string message = "cannot write PNG " + path.string() + ": " + image.message;
    png_image_free(&image);
    throw ImageIoError(message);
  }
}

}  // namespace

RawImage read(const std::filesystem::path& path) {
  std::unique_ptr<std::FILE, FileCloser> file(std::fopen(path.c_str(), "rb"));
  if (!file) throw ImageIoError("cannot open " + path.string());

  RawImage image;
  DecodeState state;
  if (!decode(file.get(), &image, &state)) {
    throw ImageIoError("cannot decode PNG " + path.string() + ": " + state.message);
  }
  if (image.width <= 0 || image.height <= 0) {
    throw ImageIoError("zero-dimension image " + path.string());
  }
  if (image.bit_depth != 8 && image.bit_depth != 16) {
    throw ImageIoError("unsupported bit depth " + std::to_string(image.bit_depth) + " in " +
                       path.string());
  }
  if (image.channels != 1 && image.channels != 3) {
    throw ImageIoError("unsupported channel count in " + path.string());
  }
  return image;
}

std::vector<double> luma(const RawImage& image) {
  const std::size_t n = static_cast<std::size_t>(image.width) * image.height;
  std::vector<double> out(n);
  if (image.channels == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = image.samples[i];
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint16_t* p = &image.samples[3 * i];
    const double y = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
    out[i] = y > image.max_sample() ? image.max_sample() : y;
  }
  return out;
}

void write_gray8(const std::filesystem::path& path, int width, int height,
                 const std::vector<std::uint8_t>& pixels) {
  write_simplified(path, width, height, PNG_FORMAT_GRAY, pixels.data());
}

void write_gray16(const std::filesystem::path& path, int width, int height,
                  const std::vector<std::uint16_t>& pixels) {
  write_simplified(path, width, height, PNG_FORMAT_LINEAR_Y, pixels.data());
}

void write_rgb8(const std::filesystem::path& path, int width, int height,
                const std::vector<std::uint8_t>& pixels) {
  write_simplified(path, width, height, PNG_FORMAT_RGB, pixels.data());
}

}  // namespace sodbench::png
