#include "oracles.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

namespace sodbench::oracle {

Grid grid_of(const SaliencyMap& map) {
  Grid g(static_cast<std::size_t>(map.height()), std::vector<double>(map.width()));
  for (int r = 0; r < map.height(); ++r) {
    for (int c = 0; c < map.width(); ++c) g[r][c] = map.at(c, r);
  }
  return g;
}

Grid grid_of(const BinaryMask& mask) {
  Grid g(static_cast<std::size_t>(mask.height()), std::vector<double>(mask.width()));
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < mask.width(); ++c) g[r][c] = mask.at(c, r) ? 1.0 : 0.0;
  }
  return g;
}

Confusion naive_confusion(const SaliencyMap& sal, const BinaryMask& gt, int threshold) {
  Confusion c;
  for (int y = 0; y < sal.height(); ++y) {
    for (int x = 0; x < sal.width(); ++x) {
      const double level = std::floor(sal.at(x, y) * 255.0 + 0.5);
      const bool on = std::min(level, 255.0) >= threshold;
      const bool truth = gt.at(x, y);
      if (on && truth) c.tp++;
      if (on && !truth) c.fp++;
      if (!on && truth) c.fn++;
      if (!on && !truth) c.tn++;
    }
  }
  return c;
}

namespace {

// mean and sample std of the entries of `v`
void moments(const std::vector<double>& v, double& mean, double& sd) {
  mean = 0;
  for (double x : v) mean += x;
  mean = v.empty() ? 0 : mean / v.size();
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  sd = v.size() > 1 ? std::sqrt(ss / (v.size() - 1)) : 0;
}

double object_score(const std::vector<double>& inside) {
  if (inside.empty()) return 0;
  double x, sx;
  moments(inside, x, sx);
  return 2.0 * x / (x * x + 1.0 + sx + DBL_EPSILON);
}

double ssim_block(const Grid& sal, const Grid& gt, int r0, int r1, int c0, int c1) {
  std::vector<double> p, g;
  for (int r = r0; r < r1; r++)
    for (int c = c0; c < c1; c++) {
      p.push_back(sal[r][c]);
      g.push_back(gt[r][c]);
    }
  const double n = p.size();
  if (n == 0) return 0;
  double x = 0, y = 0;
  for (std::size_t i = 0; i < p.size(); i++) {
    x += p[i];
    y += g[i];
  }
  x /= n;
  y /= n;
  double sx2 = 0, sy2 = 0, sxy = 0;
  for (std::size_t i = 0; i < p.size(); i++) {
    sx2 += (p[i] - x) * (p[i] - x);
    sy2 += (g[i] - y) * (g[i] - y);
    sxy += (p[i] - x) * (g[i] - y);
  }
  sx2 /= (n - 1 + DBL_EPSILON);
  sy2 /= (n - 1 + DBL_EPSILON);
  sxy /= (n - 1 + DBL_EPSILON);
  const double alpha = 4 * x * y * sxy;
  const double beta = (x * x + y * y) * (sx2 + sy2);
  if (alpha != 0) return alpha / (beta + DBL_EPSILON);
  if (beta == 0) return 1;
  return 0;
}

}  // namespace

double structure_measure(const Grid& sal, const Grid& gt) {
  const int rows = gt.size();
  const int cols = gt[0].size();
  double fg_total = 0;
  for (const auto& row : gt)
    for (double v : row) fg_total += v;
  const double y = fg_total / (rows * cols);
  if (y == 0) {
    double m = 0;
    for (const auto& row : sal)
      for (double v : row) m += v;
    return 1.0 - m / (rows * cols);
  }
  if (y == 1) {
    double m = 0;
    for (const auto& row : sal)
      for (double v : row) m += v;
    return m / (rows * cols);
  }

  // object part
  std::vector<double> fg, bg;
  for (int r = 0; r < rows; r++)
    for (int c = 0; c < cols; c++) {
      if (gt[r][c] > 0.5)
        fg.push_back(sal[r][c]);
      else
        bg.push_back(1.0 - sal[r][c]);
    }
  const double so = y * object_score(fg) + (1 - y) * object_score(bg);

  // region part; centroid in 1-based coordinates
  double sum_r = 0, sum_c = 0;
  for (int r = 0; r < rows; r++)
    for (int c = 0; c < cols; c++)
      if (gt[r][c] > 0.5) {
        sum_r += r + 1;
        sum_c += c + 1;
      }
  const int X = static_cast<int>(std::lround(sum_c / fg_total));
  const int Y = static_cast<int>(std::lround(sum_r / fg_total));
  const double area = rows * cols;
  const double w1 = X * Y / area;
  const double w2 = (cols - X) * Y / area;
  const double w3 = X * (rows - Y) / area;
  const double w4 = 1 - w1 - w2 - w3;
  const double sr = w1 * ssim_block(sal, gt, 0, Y, 0, X) + w2 * ssim_block(sal, gt, 0, Y, X, cols) +
                    w3 * ssim_block(sal, gt, Y, rows, 0, X) +
                    w4 * ssim_block(sal, gt, Y, rows, X, cols);

  const double q = 0.5 * so + 0.5 * sr;
  return q < 0 ? 0 : (q > 1 ? 1 : q);
}

double enhanced_alignment(const Grid& pred, const Grid& gt) {
  const int rows = gt.size();
  const int cols = gt[0].size();
  const double n = rows * cols;
  double gt_sum = 0, pred_sum = 0;
  for (int r = 0; r < rows; r++)
    for (int c = 0; c < cols; c++) {
      gt_sum += gt[r][c];
      pred_sum += pred[r][c];
    }
  double total = 0;
  if (gt_sum == 0) {
    for (int r = 0; r < rows; r++)
      for (int c = 0; c < cols; c++) total += 1.0 - pred[r][c];
    return total / n;
  }
  if (gt_sum == n) return pred_sum / n;

  const double mg = gt_sum / n;
  const double mp = pred_sum / n;
  for (int r = 0; r < rows; r++)
    for (int c = 0; c < cols; c++) {
      const double dg = gt[r][c] - mg;
      const double dp = pred[r][c] - mp;
      const double align = 2.0 * dg * dp / (dg * dg + dp * dp + DBL_EPSILON);
      total += (align + 1) * (align + 1) / 4;
    }
  return total / n;
}

double enhanced_alignment_max(const SaliencyMap& sal, const BinaryMask& gt) {
  const Grid g = grid_of(gt);
  double best = 0;
  for (int t = 0; t < 256; t++) {
    Grid p = grid_of(sal);
    for (auto& row : p)
      for (double& v : row) v = std::min(std::floor(v * 255.0 + 0.5), 255.0) >= t ? 1.0 : 0.0;
    best = std::max(best, enhanced_alignment(p, g));
  }
  return best;
}

double bilinear_at(const SaliencyMap& map, double x, double y) {
  x = std::clamp(x, 0.0, map.width() - 1.0);
  y = std::clamp(y, 0.0, map.height() - 1.0);
  const int x0 = static_cast<int>(x);
  const int y0 = static_cast<int>(y);
  const int x1 = std::min(x0 + 1, map.width() - 1);
  const int y1 = std::min(y0 + 1, map.height() - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  return (1 - fx) * (1 - fy) * map.at(x0, y0) + fx * (1 - fy) * map.at(x1, y0) +
         (1 - fx) * fy * map.at(x0, y1) + fx * fy * map.at(x1, y1);
}

}  // namespace sodbench::oracle
