#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sodbench/map.hpp"

namespace sodbench {

/// Center-bias and size statistics of one ground-truth mask.
///
/// Distances are measured from the image centre ((W-1)/2, (H-1)/2) and
/// divided by the half-diagonal, i.e. the distance from the centre to a corner
/// pixel, so both r_o and r_m lie in [0,1]. Multi-object masks use the union
/// foreground for r_o and r_m; `components` counts 8-connected objects.
struct MaskStats {
  double r_o = 0.0;   // foreground centroid distance
  double r_m = 0.0;   // farthest foreground pixel distance
  double size = 0.0;  // foreground fraction
  int components = 0;
};

/// std::nullopt for a mask without foreground.
std::optional<MaskStats> mask_stats(const BinaryMask& gt);

int count_components(const BinaryMask& mask);

/// Fraction of values falling in each of `bins` equal-width bins over [0,1].
/// 1.0 lands in the last bin. Throws std::invalid_argument on an empty input
/// or bins < 1.
std::vector<double> distribution(std::span<const double> values, int bins);

struct Range {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct DatasetSummary {
  std::size_t mask_count = 0;   // masks contributing to the statistics
  std::size_t empty_count = 0;  // masks skipped for lacking foreground
  Range size;
  Range r_o;
  Range r_m;
  std::map<int, std::size_t> objects_per_image;  // component count -> images
};

/// Aggregates per-mask statistics; empty entries are counted and skipped.
/// Throws std::invalid_argument when no entry has foreground.
DatasetSummary summarize(std::span<const std::optional<MaskStats>> stats);

DatasetSummary dataset_summary(std::span<const BinaryMask> masks);

}  // namespace sodbench
