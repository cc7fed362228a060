#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace sodbench::png {

/// Decoded PNG with palette expanded and alpha stripped.
struct RawImage {
  int width = 0;
  int height = 0;
  int channels = 0;   // 1 (gray) or 3 (RGB)
  int bit_depth = 0;  // 8 or 16
  std::vector<std::uint16_t> samples;  // row-major, interleaved

  double max_sample() const { return bit_depth == 16 ? 65535.0 : 255.0; }
};

RawImage read(const std::filesystem::path& path);

/// Collapses RGB to BT.601 luma; gray images pass through. Output is in the
/// sample range of the source bit depth.
std::vector<double> luma(const RawImage& image);

void write_gray8(const std::filesystem::path& path, int width, int height,
                 const std::vector<std::uint8_t>& pixels);
void write_gray16(const std::filesystem::path& path, int width, int height,
                  const std::vector<std::uint16_t>& pixels);
void write_rgb8(const std::filesystem::path& path, int width, int height,
                const std::vector<std::uint8_t>& pixels);

}  // namespace sodbench::png
