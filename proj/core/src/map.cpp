#include "sodbench/map.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sodbench/png_io.hpp"

namespace sodbench {

std::string to_string(Extent e) {
  return std::to_string(e.width) + "x" + std::to_string(e.height);
}

void require_same_extent(Extent a, Extent b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": extent " + to_string(a) + " vs " + to_string(b));
  }
}

namespace {

void check_extent(Extent extent, std::size_t count) {
  if (extent.width < 1 || extent.height < 1) {
    throw std::invalid_argument("map extent must be at least 1x1, got " + to_string(extent));
  }
  if (count != extent.pixels()) {
    throw std::invalid_argument("value count " + std::to_string(count) + " does not match extent " +
                                to_string(extent));
  }
}

}  // namespace

SaliencyMap::SaliencyMap(Extent extent, std::vector<double> values)
    : extent_(extent), values_(std::move(values)) {
  check_extent(extent_, values_.size());
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("saliency value outside [0,1]: " + std::to_string(v));
    }
  }
}

SaliencyMap SaliencyMap::filled(Extent extent, double value) {
  return SaliencyMap(extent, std::vector<double>(extent.pixels(), value));
}

double SaliencyMap::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

BinaryMask::BinaryMask(Extent extent, std::vector<std::uint8_t> bits)
    : extent_(extent), bits_(std::move(bits)) {
  check_extent(extent_, bits_.size());
  if (std::any_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b > 1; })) {
    throw std::invalid_argument("mask element other than 0 or 1");
  }
}

BinaryMask BinaryMask::filled(Extent extent, bool value) {
  return BinaryMask(extent, std::vector<std::uint8_t>(extent.pixels(), value ? 1 : 0));
}

std::size_t BinaryMask::foreground_count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

double BinaryMask::foreground_fraction() const {
  return static_cast<double>(foreground_count()) / static_cast<double>(bits_.size());
}

BinaryMask BinaryMask::complement() const {
  std::vector<std::uint8_t> out(bits_.size());
  std::transform(bits_.begin(), bits_.end(), out.begin(),
                 [](std::uint8_t b) { return static_cast<std::uint8_t>(1 - b); });
  return BinaryMask(extent_, std::move(out));
}

SaliencyMap to_map(const BinaryMask& mask) {
  std::vector<double> values(mask.bits().begin(), mask.bits().end());
  return SaliencyMap(mask.extent(), std::move(values));
}

SaliencyMap load_map(const std::filesystem::path& path) {
  const png::RawImage image = png::read(path);
  std::vector<double> values = png::luma(image);
  const double scale = image.max_sample();
  for (double& v : values) v = std::min(v / scale, 1.0);
  return SaliencyMap({image.width, image.height}, std::move(values));
}

BinaryMask load_mask(const std::filesystem::path& path) {
  const png::RawImage image = png::read(path);
  const std::vector<double> values = png::luma(image);
  // 16-bit samples go through the same 0..255 level as maps before the >= 128 cut.
  const bool wide = image.bit_depth == 16;
  std::vector<std::uint8_t> bits(values.size());
  std::transform(values.begin(), values.end(), bits.begin(), [wide](double v) {
    return static_cast<std::uint8_t>((wide ? to_level(v / 65535.0) : v) >= 128 ? 1 : 0);
  });
  return BinaryMask({image.width, image.height}, std::move(bits));
}

void save_map(const SaliencyMap& map, const std::filesystem::path& path) {
  std::vector<std::uint8_t> pixels(map.size());
  std::transform(map.values().begin(), map.values().end(), pixels.begin(),
                 [](double v) { return static_cast<std::uint8_t>(to_level(v)); });
  png::write_gray8(path, map.width(), map.height(), pixels);
}

void save_mask(const BinaryMask& mask, const std::filesystem::path& path) {
  std::vector<std::uint8_t> pixels(mask.size());
  std::transform(mask.bits().begin(), mask.bits().end(), pixels.begin(),
                 [](std::uint8_t b) { return static_cast<std::uint8_t>(b ? 255 : 0); });
  png::write_gray8(path, mask.width(), mask.height(), pixels);
}

SaliencyMap normalize(const SaliencyMap& map) {
  const auto [lo, hi] = std::minmax_element(map.values().begin(), map.values().end());
  const double min = *lo;
  const double max = *hi;
  if (min == 0.0 && max == 1.0) return map;
  std::vector<double> out(map.size(), 0.0);
  if (max > min) {
    const double span = max - min;
    std::transform(map.values().begin(), map.values().end(), out.begin(),
                   [min, span](double v) { return std::clamp((v - min) / span, 0.0, 1.0); });
  }
  return SaliencyMap(map.extent(), std::move(out));
}

SaliencyMap resize_to(const SaliencyMap& map, Extent target) {
  if (target.width < 1 || target.height < 1) {
    throw std::invalid_argument("resize target must be at least 1x1, got " + to_string(target));
  }
  if (target == map.extent()) return map;

  struct Tap {
    int lo;
    int hi;
    double frac;
  };
  auto taps = [](int src, int dst) {
    std::vector<Tap> out(static_cast<std::size_t>(dst));
    const double scale = static_cast<double>(src) / dst;
    for (int i = 0; i < dst; ++i) {
      const double pos = std::clamp((i + 0.5) * scale - 0.5, 0.0, static_cast<double>(src - 1));
      const int lo = static_cast<int>(std::floor(pos));
      const int hi = std::min(lo + 1, src - 1);
      out[static_cast<std::size_t>(i)] = {lo, hi, pos - lo};
    }
    return out;
  };
  const std::vector<Tap> xs = taps(map.width(), target.width);
  const std::vector<Tap> ys = taps(map.height(), target.height);

  std::vector<double> out(target.pixels());
  std::size_t k = 0;
  for (const Tap& ty : ys) {
    for (const Tap& tx : xs) {
      const double top = map.at(tx.lo, ty.lo) * (1.0 - tx.frac) + map.at(tx.hi, ty.lo) * tx.frac;
      const double bottom =
          map.at(tx.lo, ty.hi) * (1.0 - tx.frac) + map.at(tx.hi, ty.hi) * tx.frac;
      out[k++] = std::clamp(top * (1.0 - ty.frac) + bottom * ty.frac, 0.0, 1.0);
    }
  }
  return SaliencyMap(target, std::move(out));
}

BinaryMask binarize(const SaliencyMap& map, int threshold) {
  if (threshold < 0 || threshold > 255) {
    throw std::invalid_argument("threshold must lie in [0,255], got " + std::to_string(threshold));
  }
  std::vector<std::uint8_t> bits(map.size());
  std::transform(map.values().begin(), map.values().end(), bits.begin(), [threshold](double v) {
    return static_cast<std::uint8_t>(to_level(v) >= threshold ? 1 : 0);
  });
  return BinaryMask(map.extent(), std::move(bits));
}

}  // namespace sodbench
