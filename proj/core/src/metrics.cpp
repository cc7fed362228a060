#include "sodbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sodbench {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Weight of the standard deviation in the object-aware term. 0.5 gives the
// coefficient 2 * 0.5 = 1 used by the reference structure-measure toolbox.
constexpr double kObjectSigmaWeight = 0.5;

double enhanced(double pred_bias, double gt_bias) {
  const double align = 2.0 * gt_bias * pred_bias / (gt_bias * gt_bias + pred_bias * pred_bias + kEps);
  return (align + 1.0) * (align + 1.0) / 4.0;
}

struct RegionMoments {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 below two samples
};

// Object-aware similarity of one region whose ideal value is 1.
double object_similarity(const RegionMoments& m) {
  if (m.count == 0) return 0.0;
  return 2.0 * m.mean / (m.mean * m.mean + 1.0 + 2.0 * kObjectSigmaWeight * m.stddev + kEps);
}

double object_term(const SaliencyMap& sal, const BinaryMask& gt) {
  RegionMoments fg;
  RegionMoments bg;
  double fg_sum = 0.0;
  double bg_sum = 0.0;
  for (std::size_t i = 0; i < sal.size(); ++i) {
    if (gt[i]) {
      ++fg.count;
      fg_sum += sal[i];
    } else {
      ++bg.count;
      bg_sum += 1.0 - sal[i];
    }
  }
  fg.mean = fg.count ? fg_sum / static_cast<double>(fg.count) : 0.0;
  bg.mean = bg.count ? bg_sum / static_cast<double>(bg.count) : 0.0;

  double fg_ss = 0.0;
  double bg_ss = 0.0;
  for (std::size_t i = 0; i < sal.size(); ++i) {
    if (gt[i]) {
      const double d = sal[i] - fg.mean;
      fg_ss += d * d;
    } else {
      const double d = (1.0 - sal[i]) - bg.mean;
      bg_ss += d * d;
    }
  }
  if (fg.count > 1) fg.stddev = std::sqrt(fg_ss / static_cast<double>(fg.count - 1));
  if (bg.count > 1) bg.stddev = std::sqrt(bg_ss / static_cast<double>(bg.count - 1));

  const double mu = static_cast<double>(fg.count) / static_cast<double>(sal.size());
  return mu * object_similarity(fg) + (1.0 - mu) * object_similarity(bg);
}

// Structural similarity of prediction and GT over the window [x0,x1) x [y0,y1).
double window_ssim(const SaliencyMap& sal, const BinaryMask& gt, int x0, int x1, int y0, int y1) {
  const auto n = static_cast<double>((x1 - x0) * (y1 - y0));
  if (n == 0.0) return 0.0;
  double sx = 0.0;
  double sy = 0.0;
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      sx += sal.at(x, y);
      sy += gt.at(x, y) ? 1.0 : 0.0;
    }
  }
  const double mx = sx / n;
  const double my = sy / n;
  double vxx = 0.0;
  double vyy = 0.0;
  double vxy = 0.0;
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      const double dx = sal.at(x, y) - mx;
      const double dy = (gt.at(x, y) ? 1.0 : 0.0) - my;
      vxx += dx * dx;
      vyy += dy * dy;
      vxy += dx * dy;
    }
  }
  const double denom = n - 1.0 + kEps;
  vxx /= denom;
  vyy /= denom;
  vxy /= denom;

  const double num = 4.0 * mx * my * vxy;
  const double den = (mx * mx + my * my) * (vxx + vyy);
  if (num != 0.0) return num / (den + kEps);
  return den == 0.0 ? 1.0 : 0.0;
}

double region_term(const SaliencyMap& sal, const BinaryMask& gt) {
  const int w = gt.width();
  const int h = gt.height();
  double sum_x = 0.0;
  double sum_y = 0.0;
  std::size_t count = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (gt.at(x, y)) {
        sum_x += x + 1;
        sum_y += y + 1;
        ++count;
      }
    }
  }
  // Split point in 1-based pixel units; columns [0,cx) and rows [0,cy) form the
  // top-left block.
  const int cx = static_cast<int>(std::round(sum_x / static_cast<double>(count)));
  const int cy = static_cast<int>(std::round(sum_y / static_cast<double>(count)));

  const double area = static_cast<double>(w) * h;
  const double w1 = static_cast<double>(cx) * cy / area;
  const double w2 = static_cast<double>(w - cx) * cy / area;
  const double w3 = static_cast<double>(cx) * (h - cy) / area;
  const double w4 = 1.0 - w1 - w2 - w3;

  return w1 * window_ssim(sal, gt, 0, cx, 0, cy) + w2 * window_ssim(sal, gt, cx, w, 0, cy) +
         w3 * window_ssim(sal, gt, 0, cx, cy, h) + w4 * window_ssim(sal, gt, cx, w, cy, h);
}

}  // namespace

double Confusion::precision() const {
  const std::int64_t predicted = tp + fp;
  return predicted == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(predicted);
}

double Confusion::recall() const {
  const std::int64_t positives = tp + fn;
  return positives == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(positives);
}

double mae(const SaliencyMap& sal, const BinaryMask& gt) {
  require_same_extent(sal.extent(), gt.extent(), "mae");
  double sum = 0.0;
  for (std::size_t i = 0; i < sal.size(); ++i) {
    sum += std::abs(sal[i] - (gt[i] ? 1.0 : 0.0));
  }
  return sum / static_cast<double>(sal.size());
}

Confusion confusion_at(const SaliencyMap& sal, const BinaryMask& gt, int threshold) {
  require_same_extent(sal.extent(), gt.extent(), "confusion_at");
  if (threshold < 0 || threshold > 255) {
    throw std::invalid_argument("threshold must lie in [0,255], got " + std::to_string(threshold));
  }
  Confusion c;
  for (std::size_t i = 0; i < sal.size(); ++i) {
    const bool predicted = to_level(sal[i]) >= threshold;
    if (gt[i]) {
      ++(predicted ? c.tp : c.fn);
    } else {
      ++(predicted ? c.fp : c.tn);
    }
  }
  return c;
}

ConfusionCurve confusion_curve(const SaliencyMap& sal, const BinaryMask& gt) {
  require_same_extent(sal.extent(), gt.extent(), "confusion_curve");
  std::array<std::int64_t, kThresholdCount> fg_hist{};
  std::array<std::int64_t, kThresholdCount> bg_hist{};
  for (std::size_t i = 0; i < sal.size(); ++i) {
    ++(gt[i] ? fg_hist : bg_hist)[static_cast<std::size_t>(to_level(sal[i]))];
  }
  std::int64_t positives = 0;
  for (auto n : fg_hist) positives += n;
  const auto negatives = static_cast<std::int64_t>(sal.size()) - positives;

  ConfusionCurve curve{};
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  for (int t = kThresholdCount - 1; t >= 0; --t) {
    const auto k = static_cast<std::size_t>(t);
    tp += fg_hist[k];
    fp += bg_hist[k];
    curve[k] = {tp, fp, positives - tp, negatives - fp};
  }
  return curve;
}

double f_beta(double precision, double recall, double beta2) {
  const double den = beta2 * precision + recall;
  if (den == 0.0) return 0.0;
  return (1.0 + beta2) * precision * recall / den;
}

Curve pr_curve(const SaliencyMap& sal, const BinaryMask& gt, double beta2) {
  const ConfusionCurve counts = confusion_curve(sal, gt);
  Curve curve{};
  for (int t = 0; t < kThresholdCount; ++t) {
    const Confusion& c = counts[static_cast<std::size_t>(t)];
    CurvePoint& p = curve[static_cast<std::size_t>(t)];
    p.threshold = t;
    p.precision = c.precision();
    p.recall = c.recall();
    p.f_beta = f_beta(p.precision, p.recall, beta2);
    p.e_value = e_measure(c);
  }
  return curve;
}

int adaptive_threshold(const SaliencyMap& sal) {
  const double level = std::floor(2.0 * sal.mean() * 255.0 + 0.5);
  return static_cast<int>(std::clamp(level, 0.0, 255.0));
}

double f_adaptive(const SaliencyMap& sal, const BinaryMask& gt, double beta2) {
  const Confusion c = confusion_at(sal, gt, adaptive_threshold(sal));
  return f_beta(c.precision(), c.recall(), beta2);
}

double s_measure(const SaliencyMap& sal, const BinaryMask& gt) {
  require_same_extent(sal.extent(), gt.extent(), "s_measure");
  const std::size_t fg = gt.foreground_count();
  if (fg == 0) return 1.0 - sal.mean();
  if (fg == gt.size()) return sal.mean();
  const double score = kStructureAlpha * object_term(sal, gt) +
                       (1.0 - kStructureAlpha) * region_term(sal, gt);
  return std::clamp(score, 0.0, 1.0);
}

double e_measure(const BinaryMask& pred, const BinaryMask& gt) {
  require_same_extent(pred.extent(), gt.extent(), "e_measure");
  const auto n = static_cast<double>(gt.size());
  const std::size_t gt_fg = gt.foreground_count();
  if (gt_fg == 0) return 1.0 - pred.foreground_fraction();
  if (gt_fg == gt.size()) return pred.foreground_fraction();

  const double pred_mean = pred.foreground_fraction();
  const double gt_mean = static_cast<double>(gt_fg) / n;
  double sum = 0.0;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    sum += enhanced((pred[i] ? 1.0 : 0.0) - pred_mean, (gt[i] ? 1.0 : 0.0) - gt_mean);
  }
  return sum / n;
}

double e_measure(const Confusion& c) {
  const auto n = static_cast<double>(c.total());
  const auto predicted = static_cast<double>(c.tp + c.fp);
  if (c.tp + c.fn == 0) return (n - predicted) / n;
  if (c.fp + c.tn == 0) return predicted / n;

  const double pred_mean = predicted / n;
  const double gt_mean = static_cast<double>(c.tp + c.fn) / n;
  const double sum = static_cast<double>(c.tp) * enhanced(1.0 - pred_mean, 1.0 - gt_mean) +
                     static_cast<double>(c.fp) * enhanced(1.0 - pred_mean, -gt_mean) +
                     static_cast<double>(c.fn) * enhanced(-pred_mean, 1.0 - gt_mean) +
                     static_cast<double>(c.tn) * enhanced(-pred_mean, -gt_mean);
  return sum / n;
}

double e_max(const SaliencyMap& sal, const BinaryMask& gt) {
  const ConfusionCurve counts = confusion_curve(sal, gt);
  double best = 0.0;
  for (const Confusion& c : counts) best = std::max(best, e_measure(c));
  return best;
}

double bce(const SaliencyMap& sal, const BinaryMask& gt) {
  require_same_extent(sal.extent(), gt.extent(), "bce");
  double sum = 0.0;
  for (std::size_t i = 0; i < sal.size(); ++i) {
    const double s = std::clamp(sal[i], kCrossEntropyEps, 1.0 - kCrossEntropyEps);
    sum += gt[i] ? std::log(s) : std::log(1.0 - s);
  }
  return -sum / static_cast<double>(sal.size());
}

MetricRecord evaluate_pair(const SaliencyMap& sal, const BinaryMask& gt, double beta2) {
  require_same_extent(sal.extent(), gt.extent(), "evaluate_pair");
  MetricRecord r;
  r.empty_gt = gt.foreground_count() == 0;
  r.mae = mae(sal, gt);
  r.curve = pr_curve(sal, gt, beta2);
  for (const CurvePoint& p : r.curve) {
    r.f_max = std::max(r.f_max, p.f_beta);
    r.e_max = std::max(r.e_max, p.e_value);
  }
  r.adaptive_threshold = adaptive_threshold(sal);
  r.f_adaptive = r.curve[static_cast<std::size_t>(r.adaptive_threshold)].f_beta;
  r.s_measure = s_measure(sal, gt);
  r.bce = bce(sal, gt);
  return r;
}

}  // namespace sodbench
