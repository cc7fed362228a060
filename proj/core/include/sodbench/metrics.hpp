#pragma once

#include <array>
#include <cstdint>

#include "sodbench/map.hpp"

namespace sodbench {

inline constexpr int kThresholdCount = 256;
inline constexpr double kDefaultBeta2 = 0.3;
/// Balance between object-aware and region-aware terms of the structure measure.
inline constexpr double kStructureAlpha = 0.5;
/// Clamp applied to predictions inside the cross-entropy.
inline constexpr double kCrossEntropyEps = 1e-7;

struct Confusion {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;

  std::int64_t total() const { return tp + fp + fn + tn; }
  double precision() const;  // 0 when nothing is predicted positive
  double recall() const;     // 0 when the ground truth is empty

  friend bool operator==(const Confusion&, const Confusion&) = default;
};

struct CurvePoint {
  int threshold = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f_beta = 0.0;
  double e_value = 0.0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

using Curve = std::array<CurvePoint, kThresholdCount>;
using ConfusionCurve = std::array<Confusion, kThresholdCount>;

/// Per-image scores. `empty_gt` marks a ground truth without foreground, for
/// which recall (and therefore every F value) is reported as 0.
struct MetricRecord {
  double mae = 0.0;
  double f_max = 0.0;
  double f_adaptive = 0.0;
  double s_measure = 0.0;
  double e_max = 0.0;
  double bce = 0.0;
  int adaptive_threshold = 0;
  bool empty_gt = false;
  Curve curve{};

  friend bool operator==(const MetricRecord&, const MetricRecord&) = default;
};

double mae(const SaliencyMap& sal, const BinaryMask& gt);

Confusion confusion_at(const SaliencyMap& sal, const BinaryMask& gt, int threshold);

/// Confusion counts at all 256 thresholds from one pass over the pixels.
ConfusionCurve confusion_curve(const SaliencyMap& sal, const BinaryMask& gt);

double f_beta(double precision, double recall, double beta2 = kDefaultBeta2);

/// Precision, recall, F and E for thresholds 0..255.
Curve pr_curve(const SaliencyMap& sal, const BinaryMask& gt, double beta2 = kDefaultBeta2);

/// clamp(round(2 * mean(sal) * 255), 0, 255).
int adaptive_threshold(const SaliencyMap& sal);
double f_adaptive(const SaliencyMap& sal, const BinaryMask& gt, double beta2 = kDefaultBeta2);

/// Structure measure: 0.5 * object-aware + 0.5 * region-aware similarity,
/// clamped to [0,1]. An all-background GT scores 1 - mean(sal), an
/// all-foreground GT scores mean(sal).
double s_measure(const SaliencyMap& sal, const BinaryMask& gt);

/// Enhanced-alignment measure of a binary prediction.
double e_measure(const BinaryMask& pred, const BinaryMask& gt);
/// Same value computed from the confusion counts of the prediction.
double e_measure(const Confusion& c);
double e_max(const SaliencyMap& sal, const BinaryMask& gt);

/// Mean binary cross-entropy with predictions clamped to [eps, 1-eps].
double bce(const SaliencyMap& sal, const BinaryMask& gt);

/// All metrics for one pair; `sal` must already be at GT resolution.
MetricRecord evaluate_pair(const SaliencyMap& sal, const BinaryMask& gt,
                           double beta2 = kDefaultBeta2);

}  // namespace sodbench
