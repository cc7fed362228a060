#include "sodbench/dataset_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sodbench {

std::optional<MaskStats> mask_stats(const BinaryMask& gt) {
  const int w = gt.width();
  const int h = gt.height();
  const double cx = (w - 1) / 2.0;
  const double cy = (h - 1) / 2.0;
  const double half_diagonal = std::hypot(cx, cy);

  double sum_x = 0.0;
  double sum_y = 0.0;
  double farthest = 0.0;
  std::size_t count = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!gt.at(x, y)) continue;
      sum_x += x;
      sum_y += y;
      ++count;
      farthest = std::max(farthest, std::hypot(x - cx, y - cy));
    }
  }
  if (count == 0) return std::nullopt;

  MaskStats s;
  const double n = static_cast<double>(count);
  if (half_diagonal > 0.0) {
    s.r_o = std::min(1.0, std::hypot(sum_x / n - cx, sum_y / n - cy) / half_diagonal);
    s.r_m = std::min(1.0, farthest / half_diagonal);
  }
  s.size = n / static_cast<double>(gt.size());
  s.components = count_components(gt);
  return s;
}

int count_components(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<std::uint8_t> seen(mask.size(), 0);
  std::vector<std::pair<int, int>> stack;
  int components = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto idx = static_cast<std::size_t>(y) * w + x;
      if (!mask.at(x, y) || seen[idx]) continue;
      ++components;
      seen[idx] = 1;
      stack.emplace_back(x, y);
      while (!stack.empty()) {
        const auto [px, py] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = px + dx;
            const int ny = py + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const auto n = static_cast<std::size_t>(ny) * w + nx;
            if (seen[n] || !mask.at(nx, ny)) continue;
            seen[n] = 1;
            stack.emplace_back(nx, ny);
          }
        }
      }
    }
  }
  return components;
}

std::vector<double> distribution(std::span<const double> values, int bins) {
  if (bins < 1) throw std::invalid_argument("distribution needs at least one bin");
  if (values.empty()) throw std::invalid_argument("distribution of an empty list");
  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    const double clamped = std::clamp(v, 0.0, 1.0);
    const int b = std::min(bins - 1, static_cast<int>(clamped * bins));
    ++counts[static_cast<std::size_t>(b)];
  }
  std::vector<double> out(counts.size());
  const double n = static_cast<double>(values.size());
  std::transform(counts.begin(), counts.end(), out.begin(),
                 [n](std::size_t c) { return static_cast<double>(c) / n; });
  return out;
}

DatasetSummary summarize(std::span<const std::optional<MaskStats>> stats) {
  DatasetSummary out;
  double size_sum = 0.0;
  double r_o_sum = 0.0;
  double r_m_sum = 0.0;
  auto widen = [](Range& r, double v, bool first) {
    r.min = first ? v : std::min(r.min, v);
    r.max = first ? v : std::max(r.max, v);
  };
  for (const auto& s : stats) {
    if (!s) {
      ++out.empty_count;
      continue;
    }
    const bool first = out.mask_count == 0;
    widen(out.size, s->size, first);
    widen(out.r_o, s->r_o, first);
    widen(out.r_m, s->r_m, first);
    size_sum += s->size;
    r_o_sum += s->r_o;
    r_m_sum += s->r_m;
    ++out.objects_per_image[s->components];
    ++out.mask_count;
  }
  if (out.mask_count == 0) {
    throw std::invalid_argument("dataset summary needs at least one mask with foreground");
  }
  const double n = static_cast<double>(out.mask_count);
  out.size.mean = size_sum / n;
  out.r_o.mean = r_o_sum / n;
  out.r_m.mean = r_m_sum / n;
  return out;
}

DatasetSummary dataset_summary(std::span<const BinaryMask> masks) {
  std::vector<std::optional<MaskStats>> stats;
  stats.reserve(masks.size());
  for (const BinaryMask& m : masks) stats.push_back(mask_stats(m));
  return summarize(stats);
}

}  // namespace sodbench
