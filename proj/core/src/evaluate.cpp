#include "sodbench/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

#include "sodbench/exact_sum.hpp"
#include "sodbench/parallel.hpp"

namespace sodbench {

std::size_t DatasetEvaluation::failed_count() const {
  return static_cast<std::size_t>(
      std::count_if(images.begin(), images.end(), [](const ImageResult& r) { return !r.record; }));
}

MetricRecord evaluate_maps(const SaliencyMap& prediction, const BinaryMask& gt,
                           const EvalOptions& options) {
  SaliencyMap sal = resize_to(prediction, gt.extent());
  if (options.normalize) sal = normalize(sal);
  return evaluate_pair(sal, gt, options.beta2);
}

MetricRecord evaluate_files(const ImagePair& pair, const EvalOptions& options) {
  const BinaryMask gt = load_mask(pair.ground_truth);
  const SaliencyMap prediction = load_map(pair.prediction);
  return evaluate_maps(prediction, gt, options);
}

DatasetScores aggregate(std::span<const ImageResult> results) {
  ExactSum s, f, fa, e, m, b;
  std::array<ExactSum, kThresholdCount> precision, recall, fc, ec;
  DatasetScores out;
  for (const ImageResult& r : results) {
    if (!r.record) continue;
    const MetricRecord& rec = *r.record;
    s.add(rec.s_measure);
    f.add(rec.f_max);
    fa.add(rec.f_adaptive);
    e.add(rec.e_max);
    m.add(rec.mae);
    b.add(rec.bce);
    for (std::size_t t = 0; t < kThresholdCount; ++t) {
      precision[t].add(rec.curve[t].precision);
      recall[t].add(rec.curve[t].recall);
      fc[t].add(rec.curve[t].f_beta);
      ec[t].add(rec.curve[t].e_value);
    }
    if (rec.empty_gt) ++out.empty_gt_count;
  }
  if (s.count() == 0) throw std::invalid_argument("no successfully evaluated images to aggregate");

  out.image_count = static_cast<std::size_t>(s.count());
  out.s_measure = s.mean();
  out.f_max = f.mean();
  out.f_adaptive = fa.mean();
  out.e_max = e.mean();
  out.mae = m.mean();
  out.bce = b.mean();
  for (std::size_t t = 0; t < kThresholdCount; ++t) {
    out.curve.precision[t] = precision[t].mean();
    out.curve.recall[t] = recall[t].mean();
    out.curve.f_beta[t] = fc[t].mean();
    out.curve.e_value[t] = ec[t].mean();
  }
  out.curve_f_max = *std::max_element(out.curve.f_beta.begin(), out.curve.f_beta.end());
  return out;
}

DatasetEvaluation evaluate_dataset(const DatasetManifest& manifest, const EvalOptions& options) {
  if (manifest.pairs.empty()) throw std::invalid_argument("manifest has no pairs");

  std::vector<const ImagePair*> order;
  order.reserve(manifest.pairs.size());
  for (const ImagePair& p : manifest.pairs) order.push_back(&p);
  std::sort(order.begin(), order.end(),
            [](const ImagePair* a, const ImagePair* b) { return a->stem < b->stem; });

  DatasetEvaluation out;
  out.dataset = manifest.name;
  out.model = manifest.model;
  out.images.resize(order.size());

  std::atomic<std::size_t> done{0};
  parallel_for(order.size(), options.jobs, [&](std::size_t i) {
    ImageResult& slot = out.images[i];
    slot.stem = order[i]->stem;
    try {
      slot.record = evaluate_files(*order[i], options);
    } catch (const std::exception& e) {
      slot.error = e.what();
    }
    if (options.progress) options.progress(++done, order.size());
  });

  out.scores = aggregate(out.images);
  return out;
}

}  // namespace sodbench
