#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "sodbench/map.hpp"

namespace sodbench {

inline constexpr double kDefaultGateThreshold = 0.15;

enum class DepthGate { kept, discarded };

std::string_view to_string(DepthGate gate);

/// Outcome of the depth depurator gate. `output` is a copy of the RGB-D
/// prediction when the gate keeps depth and of the RGB prediction otherwise.
struct DduDecision {
  DepthGate gate = DepthGate::discarded;
  double distance = 0.0;
  double threshold = kDefaultGateThreshold;
  SaliencyMap output;
};

/// Mean absolute difference between two real-valued maps of equal extent.
double map_distance(const SaliencyMap& a, const SaliencyMap& b);

/// Keeps the RGB-D prediction iff map_distance(rgbd, depth) <= threshold.
/// Throws DimensionMismatch unless all three maps share an extent and
/// std::invalid_argument unless threshold lies in [0,1].
DduDecision ddu_select(const SaliencyMap& rgb, const SaliencyMap& rgbd, const SaliencyMap& depth,
                       double threshold = kDefaultGateThreshold);

struct HistogramOptions {
  int smooth_window = 9;           // odd, >= 1
  double prominence_floor = 0.02;  // prominence x window, as a fraction of pixel mass
};

struct HistogramPeak {
  int bin = 0;
  double prominence = 0.0;  // in pixels
  double mass = 0.0;        // fraction of pixels in the peak's basin
};

struct DepthHistogram {
  std::array<std::int64_t, 256> bins{};
  std::array<double, 256> smoothed{};
  std::vector<HistogramPeak> peaks;
  std::int64_t total = 0;
  /// No peak cleared the prominence floor, or the raw counts look like a flat
  /// spread plus counting noise; the peak list says nothing useful then.
  bool low_confidence = false;
};

/// 256-bin histogram of to_level(v), smoothed by a centred moving average.
/// Near the ends each bin spreads its count over the in-range part of its
/// window only, so the smoothed curve keeps the total mass.
DepthHistogram depth_histogram(const SaliencyMap& depth, const HistogramOptions& options = {});

enum class DepthQuality { likely_high, likely_low };

std::string_view to_string(DepthQuality quality);

/// Diagnostic only: likely_high iff at least two peaks each hold >= 10% of
/// the mass and some pair of them is >= 32 bins apart.
DepthQuality depth_quality_label(const DepthHistogram& histogram);

}  // namespace sodbench
