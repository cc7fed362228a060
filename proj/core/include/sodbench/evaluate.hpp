#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sodbench/manifest.hpp"
#include "sodbench/metrics.hpp"

namespace sodbench {

struct EvalOptions {
  double beta2 = kDefaultBeta2;
  unsigned jobs = 1;  // 0 = hardware concurrency
  /// Min-max normalize predictions before scoring.
  bool normalize = true;
  /// Called after each finished image with (done, total); may run on any
  /// worker thread, so it must be thread-safe.
  std::function<void(std::size_t, std::size_t)> progress;
};

struct ImageResult {
  std::string stem;
  std::optional<MetricRecord> record;
  std::string error;  // set when record is empty
};

/// Per-threshold dataset means of the per-image curves.
struct MeanCurve {
  std::array<double, kThresholdCount> precision{};
  std::array<double, kThresholdCount> recall{};
  std::array<double, kThresholdCount> f_beta{};
  std::array<double, kThresholdCount> e_value{};

  friend bool operator==(const MeanCurve&, const MeanCurve&) = default;
};

/// Dataset statistic of every metric: the mean of per-image scores.
struct DatasetScores {
  std::size_t image_count = 0;
  std::size_t empty_gt_count = 0;
  double s_measure = 0.0;
  double f_max = 0.0;
  double f_adaptive = 0.0;
  double e_max = 0.0;
  double mae = 0.0;
  double bce = 0.0;
  MeanCurve curve;
  /// Maximum of the mean F curve (the "F at best dataset threshold" variant).
  double curve_f_max = 0.0;

  friend bool operator==(const DatasetScores&, const DatasetScores&) = default;
};

struct DatasetEvaluation {
  std::string dataset;
  std::string model;
  std::vector<ImageResult> images;  // sorted by stem
  DatasetScores scores;

  std::size_t failed_count() const;
};

/// Scores one prediction against its GT: the prediction is resized to the GT
/// extent (the GT is never resampled) and optionally normalized.
MetricRecord evaluate_maps(const SaliencyMap& prediction, const BinaryMask& gt,
                           const EvalOptions& options);
MetricRecord evaluate_files(const ImagePair& pair, const EvalOptions& options);

/// Means over successful results. Exact summation makes the outcome
/// independent of order, and duplicating every image leaves it unchanged.
/// Throws std::invalid_argument when no result succeeded.
DatasetScores aggregate(std::span<const ImageResult> results);

/// Evaluates every pair on options.jobs workers. Pairs that fail to load are
/// kept as failed ImageResults and excluded from the means. Throws
/// std::invalid_argument for an empty manifest or when every pair failed.
DatasetEvaluation evaluate_dataset(const DatasetManifest& manifest, const EvalOptions& options);

}  // namespace sodbench
