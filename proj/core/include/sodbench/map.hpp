#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sodbench {

/// Raised when two maps that must share a pixel grid do not.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for unreadable, unwritable or malformed image files.
class ImageIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Extent {
  int width = 0;
  int height = 0;

  std::size_t pixels() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  friend bool operator==(const Extent&, const Extent&) = default;
};

std::string to_string(Extent e);

/// Real-valued, row-major map with every value in [0,1].
///
/// Holds predicted saliency maps as well as depth images once they have been
/// scaled to the unit interval. Values are doubles: structure and alignment
/// scores take variances over near-constant regions.
class SaliencyMap {
 public:
  /// Throws std::invalid_argument if the extent is empty, the value count does
  /// not match, or any value lies outside [0,1] (NaN included).
  SaliencyMap(Extent extent, std::vector<double> values);

  static SaliencyMap filled(Extent extent, double value);

  Extent extent() const { return extent_; }
  int width() const { return extent_.width; }
  int height() const { return extent_.height; }
  std::size_t size() const { return values_.size(); }

  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double at(int x, int y) const {
    return values_[static_cast<std::size_t>(y) * static_cast<std::size_t>(extent_.width) +
                   static_cast<std::size_t>(x)];
  }

  double mean() const;

  friend bool operator==(const SaliencyMap&, const SaliencyMap&) = default;

 private:
  Extent extent_;
  std::vector<double> values_;
};

/// Row-major {0,1} mask. Ground truth and every binarized prediction.
class BinaryMask {
 public:
  /// Throws std::invalid_argument on an empty extent, a size mismatch, or any
  /// element other than 0 or 1.
  BinaryMask(Extent extent, std::vector<std::uint8_t> bits);

  static BinaryMask filled(Extent extent, bool value);

  Extent extent() const { return extent_; }
  int width() const { return extent_.width; }
  int height() const { return extent_.height; }
  std::size_t size() const { return bits_.size(); }

  std::span<const std::uint8_t> bits() const { return bits_; }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  bool at(int x, int y) const {
    return bits_[static_cast<std::size_t>(y) * static_cast<std::size_t>(extent_.width) +
                 static_cast<std::size_t>(x)] != 0;
  }

  std::size_t foreground_count() const;
  double foreground_fraction() const;
  BinaryMask complement() const;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  Extent extent_;
  std::vector<std::uint8_t> bits_;
};

/// 8-bit level of a unit value: round-half-up of v * 255.
inline int to_level(double v) {
  const int level = static_cast<int>(v * 255.0 + 0.5);
  return level > 255 ? 255 : level;
}

SaliencyMap to_map(const BinaryMask& mask);

SaliencyMap load_map(const std::filesystem::path& path);
BinaryMask load_mask(const std::filesystem::path& path);

/// Writes the map as an 8-bit grayscale PNG using to_level().
void save_map(const SaliencyMap& map, const std::filesystem::path& path);
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);

/// Min-max rescale to [0,1]; a constant map becomes all zeros.
SaliencyMap normalize(const SaliencyMap& map);

/// Bilinear resampling with half-pixel centres and edge clamping. Resizing to
/// the current extent returns an exact copy.
SaliencyMap resize_to(const SaliencyMap& map, Extent target);

/// Bit is set iff to_level(v) >= threshold. Threshold 0 sets every bit.
BinaryMask binarize(const SaliencyMap& map, int threshold);

void require_same_extent(Extent a, Extent b, const char* what);

}  // namespace sodbench
