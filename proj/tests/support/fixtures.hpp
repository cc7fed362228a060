#pragma once

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sodbench/map.hpp"

namespace sodbench::testing {

using Rng = std::mt19937_64;

inline SaliencyMap random_map(Rng& rng, Extent e) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(e.pixels());
  for (double& x : v) x = u(rng);
  return SaliencyMap(e, std::move(v));
}

// 8-bit valued map, as decoded from a PNG.
inline SaliencyMap random_level_map(Rng& rng, Extent e) {
  std::uniform_int_distribution<int> u(0, 255);
  std::vector<double> v(e.pixels());
  for (double& x : v) x = u(rng) / 255.0;
  return SaliencyMap(e, std::move(v));
}

inline BinaryMask random_mask(Rng& rng, Extent e, double p = 0.5) {
  std::bernoulli_distribution b(p);
  std::vector<std::uint8_t> bits(e.pixels());
  for (auto& x : bits) x = b(rng) ? 1 : 0;
  return BinaryMask(e, std::move(bits));
}

// Random axis-aligned rectangle, never empty and never full-frame.
inline BinaryMask random_blob(Rng& rng, Extent e) {
  for (;;) {
    std::uniform_int_distribution<int> ux(0, e.width - 1), uy(0, e.height - 1);
    int x0 = ux(rng), x1 = ux(rng), y0 = uy(rng), y1 = uy(rng);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    std::vector<std::uint8_t> bits(e.pixels(), 0);
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) bits[static_cast<std::size_t>(y * e.width + x)] = 1;
    BinaryMask m(e, std::move(bits));
    if (m.foreground_count() < m.size()) return m;
  }
}

// A prediction that loosely follows `gt`.
inline SaliencyMap noisy_copy(Rng& rng, const BinaryMask& gt, double noise) {
  std::normal_distribution<double> n(0.0, noise);
  std::vector<double> v(gt.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = std::clamp((gt[i] ? 0.8 : 0.2) + n(rng), 0.0, 1.0);
  }
  return SaliencyMap(gt.extent(), std::move(v));
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag = "t") {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("sodbench-" + tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace sodbench::testing
