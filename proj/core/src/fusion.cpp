#include "sodbench/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sodbench {

std::string_view to_string(DepthGate gate) {
  return gate == DepthGate::kept ? "kept-depth" : "discarded-depth";
}

std::string_view to_string(DepthQuality quality) {
  return quality == DepthQuality::likely_high ? "likely-high" : "likely-low";
}

double map_distance(const SaliencyMap& a, const SaliencyMap& b) {
  require_same_extent(a.extent(), b.extent(), "map_distance");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum / static_cast<double>(a.size());
}

DduDecision ddu_select(const SaliencyMap& rgb, const SaliencyMap& rgbd, const SaliencyMap& depth,
                       double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("gate threshold must lie in [0,1], got " + std::to_string(threshold));
  }
  require_same_extent(rgb.extent(), rgbd.extent(), "ddu_select(rgb, rgbd)");
  require_same_extent(rgbd.extent(), depth.extent(), "ddu_select(rgbd, depth)");

  const double distance = map_distance(rgbd, depth);
  const bool keep = distance <= threshold;
  return DduDecision{keep ? DepthGate::kept : DepthGate::discarded, distance, threshold,
                     keep ? rgbd : rgb};
}

namespace {

constexpr int kBins = 256;

std::array<double, kBins> smooth(const std::array<std::int64_t, kBins>& bins, int window) {
  std::array<double, kBins> out{};
  const int half = window / 2;
  for (int i = 0; i < kBins; ++i) {
    if (bins[static_cast<std::size_t>(i)] == 0) continue;
    const int lo = std::max(0, i - half);
    const int hi = std::min(kBins - 1, i + half);
    const double share = static_cast<double>(bins[static_cast<std::size_t>(i)]) / (hi - lo + 1);
    for (int j = lo; j <= hi; ++j) out[static_cast<std::size_t>(j)] += share;
  }
  return out;
}

// Values outside [0,255] count as 0.
double value(const std::array<double, kBins>& s, int i) {
  return (i < 0 || i >= kBins) ? 0.0 : s[static_cast<std::size_t>(i)];
}

double prominence(const std::array<double, kBins>& s, int peak) {
  const double height = s[static_cast<std::size_t>(peak)];
  double left_min = height;
  for (int i = peak - 1; i >= -1; --i) {
    const double v = value(s, i);
    if (v > height) break;
    left_min = std::min(left_min, v);
  }
  double right_min = height;
  for (int i = peak + 1; i <= kBins; ++i) {
    const double v = value(s, i);
    if (v > height) break;
    right_min = std::min(right_min, v);
  }
  return height - std::max(left_min, right_min);
}

// Counts indistinguishable from a flat spread over the occupied range: the
// dispersion index (chi-square over bins / bins) is ~1 for pure counting noise.
bool looks_flat(const std::array<std::int64_t, kBins>& bins, int window) {
  int first = 0, last = kBins - 1;
  while (first < kBins && bins[static_cast<std::size_t>(first)] == 0) ++first;
  while (last > first && bins[static_cast<std::size_t>(last)] == 0) --last;
  const int span = last - first + 1;
  if (first == kBins || span < window) return false;
  double total = 0.0;
  for (int i = first; i <= last; ++i) total += static_cast<double>(bins[static_cast<std::size_t>(i)]);
  const double expected = total / span;
  double chi2 = 0.0;
  for (int i = first; i <= last; ++i) {
    const double d = static_cast<double>(bins[static_cast<std::size_t>(i)]) - expected;
    chi2 += d * d / expected;
  }
  return chi2 / span < 2.0;
}

}  // namespace

DepthHistogram depth_histogram(const SaliencyMap& depth, const HistogramOptions& options) {
  if (options.smooth_window < 1 || options.smooth_window % 2 == 0) {
    throw std::invalid_argument("smoothing window must be odd and >= 1, got " +
                                std::to_string(options.smooth_window));
  }
  DepthHistogram h;
  for (double v : depth.values()) ++h.bins[static_cast<std::size_t>(to_level(v))];
  h.total = static_cast<std::int64_t>(depth.size());
  h.smoothed = smooth(h.bins, options.smooth_window);

  // Floor in mass units: a spike of mass m smooths to height m / window.
  const double floor =
      options.prominence_floor * static_cast<double>(h.total) / options.smooth_window;
  std::vector<int> peak_bins;
  for (int i = 0; i < kBins;) {
    int j = i;
    const double v = h.smoothed[static_cast<std::size_t>(i)];
    while (j + 1 < kBins && h.smoothed[static_cast<std::size_t>(j + 1)] == v) ++j;
    if (value(h.smoothed, i - 1) < v && value(h.smoothed, j + 1) < v) {
      const int mid = (i + j) / 2;
      if (prominence(h.smoothed, mid) >= floor) peak_bins.push_back(mid);
    }
    i = j + 1;
  }

  // Basin boundaries sit at the lowest smoothed bin between adjacent peaks.
  std::vector<int> cuts{0};
  for (std::size_t k = 1; k < peak_bins.size(); ++k) {
    const auto first = h.smoothed.begin() + peak_bins[k - 1];
    const auto last = h.smoothed.begin() + peak_bins[k] + 1;
    cuts.push_back(static_cast<int>(std::min_element(first, last) - h.smoothed.begin()));
  }
  cuts.push_back(kBins);

  for (std::size_t k = 0; k < peak_bins.size(); ++k) {
    std::int64_t mass = 0;
    for (int b = cuts[k]; b < cuts[k + 1]; ++b) mass += h.bins[static_cast<std::size_t>(b)];
    h.peaks.push_back({peak_bins[k], prominence(h.smoothed, peak_bins[k]),
                       static_cast<double>(mass) / static_cast<double>(h.total)});
  }
  h.low_confidence = h.peaks.empty() || looks_flat(h.bins, options.smooth_window);
  return h;
}

DepthQuality depth_quality_label(const DepthHistogram& histogram) {
  constexpr double kMinMass = 0.10;
  constexpr int kMinSeparation = 32;
  std::vector<int> heavy;
  for (const HistogramPeak& p : histogram.peaks) {
    if (p.mass >= kMinMass) heavy.push_back(p.bin);
  }
  if (heavy.size() >= 2 && heavy.back() - heavy.front() >= kMinSeparation) {
    return DepthQuality::likely_high;
  }
  return DepthQuality::likely_low;
}

}  // namespace sodbench
