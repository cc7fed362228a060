#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sodbench/csv.hpp"
#include "sodbench/dataset_stats.hpp"
#include "sodbench/evaluate.hpp"
#include "sodbench/fusion.hpp"
#include "sodbench/leaderboard.hpp"
#include "sodbench/manifest.hpp"
#include "sodbench/parallel.hpp"
#include "sodbench/record_io.hpp"
#include "sodbench/report.hpp"

namespace sodbench::cli {
namespace fs = std::filesystem;
using csv::format_double;
using json = nlohmann::ordered_json;

namespace {

/// Everything the subcommands read from the command line.
struct RunConfig {
  // eval
  std::string root;
  std::string dataset;
  std::string model;
  std::string manifest;
  double beta2 = kDefaultBeta2;
  bool no_normalize = false;
  bool allow_partial = false;
  bool per_image_curves = false;
  // fuse
  std::string rgb;
  std::string rgbd;
  std::string depth;
  std::string gt;
  std::string depth_images;
  double t = kDefaultGateThreshold;
  std::vector<double> sweep;
  std::string fuse_out = "fused";
  int smooth_window = 9;
  double prominence = 0.02;
  // rank
  std::vector<std::string> scores;
  std::string format = "markdown";
  // stats
  int bins = 20;
  // bounds
  std::string a;
  std::string b;
  // plot
  std::string curves;
  std::string svg;
  std::string title;
  // shared
  std::string out;
  unsigned jobs = 0;
  bool quiet = false;
};

void ensure_writable_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw OutputError("cannot create output directory " + dir.string());
  const fs::path probe = dir / ".sodbench-write-probe";
  {
    std::ofstream f(probe);
    if (!f) throw OutputError("output directory is not writable: " + dir.string());
  }
  fs::remove(probe, ec);
}

void ensure_writable_file(const fs::path& file) {
  const fs::path parent = file.has_parent_path() ? file.parent_path() : fs::path(".");
  ensure_writable_dir(parent);
}

std::map<std::string, fs::path> list_by_stem(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ManifestError("not a directory: " + dir.string());
  std::map<std::string, fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string stem = entry.path().stem().string();
    if (stem.empty() || stem.front() == '.') continue;
    if (!out.emplace(stem, entry.path()).second) {
      throw ManifestError("duplicate stem '" + stem + "' in " + dir.string());
    }
  }
  return out;
}

class Progress {
 public:
  Progress(std::ostream& err, std::string label, bool quiet)
      : err_(err), label_(std::move(label)), quiet_(quiet) {}

  void operator()(std::size_t done, std::size_t total) {
    if (quiet_) return;
    const std::size_t step = std::max<std::size_t>(1, total / 20);
    if (done != total && done % step != 0) return;
    std::lock_guard lock(mutex_);
    err_ << '[' << label_ << "] " << done << '/' << total << '\n';
  }

 private:
  std::ostream& err_;
  std::string label_;
  bool quiet_;
  std::mutex mutex_;
};

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  DatasetManifest manifest;
  if (!cfg.manifest.empty()) {
    manifest = load_manifest(cfg.manifest);
    if (!cfg.dataset.empty()) manifest.name = cfg.dataset;
    if (!cfg.model.empty()) manifest.model = cfg.model;
  } else {
    if (cfg.root.empty() || cfg.dataset.empty() || cfg.model.empty()) {
      err << "eval: need --root, --dataset and --model, or --manifest\n";
      return kFatal;
    }
    manifest = scan_manifest(fs::path(cfg.root) / cfg.dataset, cfg.model);
  }
  for (const std::string& note : manifest.unmatched) err << "warning: " << note << '\n';

  const fs::path out_dir(cfg.out);
  ensure_writable_dir(out_dir);

  Progress progress(err, "eval", cfg.quiet);
  EvalOptions options;
  options.beta2 = cfg.beta2;
  options.jobs = cfg.jobs;
  options.normalize = !cfg.no_normalize;
  options.progress = [&progress](std::size_t done, std::size_t total) { progress(done, total); };

  const DatasetEvaluation ev = evaluate_dataset(manifest, options);

  {
    std::ostringstream s;
    write_records_csv(s, ev.images);
    write_text_file(out_dir / "records.csv", s.str());
  }
  {
    json records = json::array();
    for (const ImageResult& img : ev.images) {
      json item;
      item["stem"] = img.stem;
      if (img.record) {
        item["status"] = "ok";
        const json fields = json::parse(record_json(*img.record));
        for (const auto& [k, v] : fields.items()) item[k] = v;
      } else {
        item["status"] = "failed";
        item["error"] = img.error;
      }
      records.push_back(std::move(item));
    }
    write_text_file(out_dir / "records.json", records.dump(2) + "\n");
  }
  {
    std::ostringstream s;
    write_curve_csv(s, ev.scores.curve);
    write_text_file(out_dir / "curve.csv", s.str());
  }
  write_text_file(out_dir / "summary.json", evaluation_json(ev, cfg.beta2) + "\n");
  if (cfg.per_image_curves) {
    ensure_writable_dir(out_dir / "curves");
    for (const ImageResult& img : ev.images) {
      if (!img.record) continue;
      std::ostringstream s;
      write_curve_csv(s, img.record->curve);
      write_text_file(out_dir / "curves" / (img.stem + ".csv"), s.str());
    }
  }

  const std::size_t failed = ev.failed_count();
  for (const ImageResult& img : ev.images) {
    if (!img.record) err << "error: " << img.stem << ": " << img.error << '\n';
  }
  if (ev.scores.empty_gt_count > 0) {
    err << "warning: " << ev.scores.empty_gt_count
        << " ground truth masks have no foreground; their recall and F are reported as 0\n";
  }
  if (failed == 0 || cfg.allow_partial) {
    std::ostringstream s;
    s << "model,dataset,S,F,E,M\n";
    s << csv::join({manifest.model, manifest.name, format_double(ev.scores.s_measure),
                    format_double(ev.scores.f_max), format_double(ev.scores.e_max),
                    format_double(ev.scores.mae)})
      << '\n';
    write_text_file(out_dir / "scores.csv", s.str());
  } else {
    err << failed << " of " << ev.images.size()
        << " images failed; scores.csv not written (pass --allow-partial to rank anyway)\n";
  }

  out << manifest.model << " on " << manifest.name << ": " << ev.scores.image_count
      << " images, S=" << format_double(ev.scores.s_measure)
      << " F=" << format_double(ev.scores.f_max) << " E=" << format_double(ev.scores.e_max)
      << " M=" << format_double(ev.scores.mae) << '\n';
  return failed == 0 ? kSuccess : kPartial;
}

int cmd_rank(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const ReportFormat format = parse_report_format(cfg.format);
  if (format == ReportFormat::svg) {
    err << "rank: svg output is produced by the plot subcommand\n";
    return kFatal;
  }
  std::vector<ScoreRow> rows;
  for (const std::string& path : cfg.scores) {
    std::ifstream in(path);
    if (!in) {
      err << "rank: cannot open " << path << '\n';
      return kFatal;
    }
    auto part = read_score_rows(in);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  const Leaderboard lb = rank_models(rows);
  for (const std::string& w : lb.warnings) err << "warning: " << w << '\n';

  if (!cfg.out.empty()) {
    ensure_writable_file(cfg.out);
    emit_report(lb, {}, format, cfg.out);
  } else if (format == ReportFormat::csv) {
    write_leaderboard_csv(out, lb);
  } else if (format == ReportFormat::json) {
    out << leaderboard_json(lb) << '\n';
  } else {
    out << leaderboard_markdown(lb);
  }
  return lb.warnings.empty() ? kSuccess : kPartial;
}

struct FuseItem {
  std::string stem;
  std::optional<DduDecision> decision;
  std::optional<DepthQuality> quality;
  std::optional<MetricRecord> rgb_record;
  std::optional<MetricRecord> rgbd_record;
  std::string error;
};

int cmd_fuse(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto rgb = list_by_stem(cfg.rgb);
  const auto rgbd = list_by_stem(cfg.rgbd);
  const auto depth = list_by_stem(cfg.depth);
  const auto gt = cfg.gt.empty() ? std::map<std::string, fs::path>{} : list_by_stem(cfg.gt);
  const auto depth_images =
      cfg.depth_images.empty() ? std::map<std::string, fs::path>{} : list_by_stem(cfg.depth_images);

  std::vector<std::string> stems;
  for (const auto& [stem, path] : rgbd) {
    if (rgb.contains(stem) && depth.contains(stem)) {
      stems.push_back(stem);
    } else {
      err << "warning: " << stem << " lacks an RGB or depth-only prediction; skipped\n";
    }
  }
  if (stems.empty()) {
    err << "fuse: no stem has all three predictions\n";
    return kFatal;
  }

  const fs::path out_dir(cfg.fuse_out);
  ensure_writable_dir(out_dir);

  HistogramOptions hist;
  hist.smooth_window = cfg.smooth_window;
  hist.prominence_floor = cfg.prominence;
  EvalOptions eval;
  eval.beta2 = cfg.beta2;
  eval.normalize = !cfg.no_normalize;

  Progress progress(err, "fuse", cfg.quiet);
  std::atomic<std::size_t> done{0};
  std::vector<FuseItem> items(stems.size());
  parallel_for(stems.size(), cfg.jobs, [&](std::size_t i) {
    FuseItem& item = items[i];
    item.stem = stems[i];
    try {
      const SaliencyMap s_rgb = load_map(rgb.at(item.stem));
      const SaliencyMap s_rgbd = load_map(rgbd.at(item.stem));
      const SaliencyMap s_depth = load_map(depth.at(item.stem));
      item.decision = ddu_select(s_rgb, s_rgbd, s_depth, cfg.t);
      save_map(item.decision->output, out_dir / (item.stem + ".png"));
      if (const auto it = depth_images.find(item.stem); it != depth_images.end()) {
        item.quality = depth_quality_label(depth_histogram(load_map(it->second), hist));
      }
      if (const auto it = gt.find(item.stem); it != gt.end() && !cfg.sweep.empty()) {
        const BinaryMask mask = load_mask(it->second);
        item.rgb_record = evaluate_maps(s_rgb, mask, eval);
        item.rgbd_record = evaluate_maps(s_rgbd, mask, eval);
      }
    } catch (const std::exception& e) {
      item.error = e.what();
    }
    progress(++done, stems.size());
  });

  std::size_t failed = 0;
  std::size_t kept = 0;
  std::ostringstream decisions;
  decisions << "image,delta,gate" << (depth_images.empty() ? "" : ",depth_quality") << '\n';
  for (const FuseItem& item : items) {
    if (!item.decision) {
      ++failed;
      err << "error: " << item.stem << ": " << item.error << '\n';
      continue;
    }
    if (item.decision->gate == DepthGate::kept) ++kept;
    decisions << csv::escape(item.stem) << ',' << format_double(item.decision->distance) << ','
              << to_string(item.decision->gate);
    if (!depth_images.empty()) {
      decisions << ',' << (item.quality ? std::string(to_string(*item.quality)) : std::string());
    }
    decisions << '\n';
  }
  write_text_file(out_dir / "decisions.csv", decisions.str());

  if (!cfg.sweep.empty()) {
    const bool scored = !gt.empty();
    std::ostringstream sweep;
    sweep << "t,kept,discarded" << (scored ? ",S,F,E,M,images" : "") << '\n';
    for (double t : cfg.sweep) {
      std::size_t k = 0;
      std::size_t n = 0;
      std::vector<ImageResult> picked;
      for (const FuseItem& item : items) {
        if (!item.decision) continue;
        ++n;
        const bool keep = item.decision->distance <= t;
        if (keep) ++k;
        if (scored && item.rgb_record) {
          picked.push_back({item.stem, keep ? item.rgbd_record : item.rgb_record, {}});
        }
      }
      sweep << format_double(t) << ',' << k << ',' << (n - k);
      if (scored) {
        if (picked.empty()) {
          sweep << ",,,,,0";
        } else {
          const DatasetScores s = aggregate(picked);
          sweep << ',' << format_double(s.s_measure) << ',' << format_double(s.f_max) << ','
                << format_double(s.e_max) << ',' << format_double(s.mae) << ',' << s.image_count;
        }
      }
      sweep << '\n';
    }
    write_text_file(out_dir / "sweep.csv", sweep.str());
  }

  out << "fused " << (items.size() - failed) << " images at t=" << format_double(cfg.t) << ": "
      << kept << " kept depth, " << (items.size() - failed - kept) << " discarded\n";
  return failed == 0 ? kSuccess : kPartial;
}

json range_json(const Range& r) { return {{"min", r.min}, {"max", r.max}, {"mean", r.mean}}; }

int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto files = list_by_stem(cfg.gt);
  if (files.empty()) {
    err << "stats: no masks in " << cfg.gt << '\n';
    return kFatal;
  }
  std::vector<std::pair<std::string, fs::path>> entries(files.begin(), files.end());
  if (!cfg.out.empty()) ensure_writable_dir(cfg.out);

  Progress progress(err, "stats", cfg.quiet);
  std::atomic<std::size_t> done{0};
  std::vector<std::optional<MaskStats>> stats(entries.size());
  std::vector<std::string> errors(entries.size());
  parallel_for(entries.size(), cfg.jobs, [&](std::size_t i) {
    try {
      stats[i] = mask_stats(load_mask(entries[i].second));
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
    progress(++done, entries.size());
  });

  std::size_t failed = 0;
  std::vector<std::optional<MaskStats>> usable;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!errors[i].empty()) {
      ++failed;
      err << "error: " << entries[i].first << ": " << errors[i] << '\n';
    } else {
      if (!stats[i]) err << "warning: " << entries[i].first << " has no foreground; excluded\n";
      usable.push_back(stats[i]);
    }
  }
  const DatasetSummary summary = summarize(usable);

  json j;
  j["masks"] = summary.mask_count;
  j["empty"] = summary.empty_count;
  j["failed"] = failed;
  j["size"] = range_json(summary.size);
  j["r_o"] = range_json(summary.r_o);
  j["r_m"] = range_json(summary.r_m);
  json objects = json::object();
  for (const auto& [count, images] : summary.objects_per_image) {
    objects[std::to_string(count)] = images;
  }
  j["objects_per_image"] = objects;
  const std::string text = j.dump(2) + "\n";
  out << text;

  if (!cfg.out.empty()) {
    const fs::path dir(cfg.out);
    write_text_file(dir / "summary.json", text);

    std::ostringstream masks;
    masks << "stem,size,r_o,r_m,components\n";
    std::vector<double> sizes, r_o, r_m;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (!errors[i].empty()) continue;
      masks << csv::escape(entries[i].first);
      if (stats[i]) {
        masks << ',' << format_double(stats[i]->size) << ',' << format_double(stats[i]->r_o) << ','
              << format_double(stats[i]->r_m) << ',' << stats[i]->components;
        sizes.push_back(stats[i]->size);
        r_o.push_back(stats[i]->r_o);
        r_m.push_back(stats[i]->r_m);
      } else {
        masks << ",0,,,0";
      }
      masks << '\n';
    }
    write_text_file(dir / "masks.csv", masks.str());

    const auto ds = distribution(sizes, cfg.bins);
    const auto dro = distribution(r_o, cfg.bins);
    const auto drm = distribution(r_m, cfg.bins);
    std::ostringstream hist;
    hist << "bin,lo,hi,r_o,r_m,size\n";
    for (int b = 0; b < cfg.bins; ++b) {
      const auto k = static_cast<std::size_t>(b);
      hist << b << ',' << format_double(static_cast<double>(b) / cfg.bins) << ','
           << format_double(static_cast<double>(b + 1) / cfg.bins) << ',' << format_double(dro[k])
           << ',' << format_double(drm[k]) << ',' << format_double(ds[k]) << '\n';
    }
    write_text_file(dir / "distribution.csv", hist.str());
  }
  return failed == 0 ? kSuccess : kPartial;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto read = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ManifestError("cannot open " + path);
    return read_records_csv(in);
  };
  const auto a = read(cfg.a);
  const auto b = read(cfg.b);

  std::vector<std::string> stems;
  for (const auto& [stem, values] : a) {
    if (b.contains(stem)) {
      stems.push_back(stem);
    } else {
      err << "warning: " << stem << " missing from " << cfg.b << '\n';
    }
  }
  for (const auto& [stem, values] : b) {
    if (!a.contains(stem)) err << "warning: " << stem << " missing from " << cfg.a << '\n';
  }
  if (stems.empty()) {
    err << "bounds: no common images\n";
    return kFatal;
  }

  struct Column {
    const char* label;
    const char* key;
    bool higher_better;
  };
  static constexpr std::array<Column, 4> kColumns{{{"S", "s_measure", true},
                                                   {"F", "f_max", true},
                                                   {"E", "e_max", true},
                                                   {"M", "mae", false}}};
  std::ostringstream s;
  s << "metric,lower,upper,mean_a,mean_b,images\n";
  for (const Column& c : kColumns) {
    std::vector<std::pair<double, double>> pairs;
    for (const std::string& stem : stems) {
      pairs.emplace_back(a.at(stem).at(c.key), b.at(stem).at(c.key));
    }
    const Bounds bounds = bound_analysis(pairs, c.higher_better);
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (const auto& [va, vb] : pairs) {
      sum_a += va;
      sum_b += vb;
    }
    const double mean_a = sum_a / static_cast<double>(pairs.size());
    const double mean_b = sum_b / static_cast<double>(pairs.size());
    s << c.label << ',' << format_double(bounds.lower) << ',' << format_double(bounds.upper) << ','
      << format_double(mean_a) << ',' << format_double(mean_b) << ',' << pairs.size() << '\n';
  }
  if (cfg.out.empty()) {
    out << s.str();
  } else {
    ensure_writable_file(cfg.out);
    write_text_file(cfg.out, s.str());
  }
  return kSuccess;
}

int cmd_plot(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const fs::path dir(cfg.curves);
  if (!fs::is_directory(dir)) {
    err << "plot: not a directory: " << dir.string() << '\n';
    return kFatal;
  }
  std::map<std::string, fs::path> sources;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      sources.emplace(entry.path().stem().string(), entry.path());
    } else if (entry.is_directory() && fs::is_regular_file(entry.path() / "curve.csv")) {
      sources.emplace(entry.path().filename().string(), entry.path() / "curve.csv");
    }
  }
  if (sources.empty()) {
    err << "plot: no curve CSV files in " << dir.string() << '\n';
    return kFatal;
  }
  std::vector<NamedCurve> curves;
  for (const auto& [name, path] : sources) {
    std::ifstream in(path);
    curves.push_back({name, read_curve_csv(in)});
  }
  ensure_writable_file(cfg.svg);
  write_text_file(cfg.svg, curves_svg(curves, cfg.title));
  out << "plotted " << curves.size() << " curves to " << cfg.svg << '\n';
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Benchmark engine for RGB-D salient object detection"};
  app.name("sodbench");
  app.require_subcommand(1);

  std::vector<CLI::Option*> jobs_options;
  auto add_jobs = [&cfg, &jobs_options](CLI::App* sub) {
    jobs_options.push_back(
        sub->add_option("--jobs,-j", cfg.jobs, "Worker threads (default: SODBENCH_JOBS, else all cores)")
            ->check(CLI::PositiveNumber));
    sub->add_flag("--quiet,-q", cfg.quiet, "Suppress progress output");
  };

  auto* eval = app.add_subcommand("eval", "Score one model's predictions on one dataset");
  eval->add_option("--root", cfg.root, "Benchmark root holding <dataset>/{GT,depth,pred/<model>}");
  eval->add_option("--dataset", cfg.dataset, "Dataset directory name under --root");
  eval->add_option("--model", cfg.model, "Model directory name under pred/");
  eval->add_option("--manifest", cfg.manifest, "JSON manifest listing explicit pairs")
      ->check(CLI::ExistingFile);
  eval->add_option("--beta2", cfg.beta2, "F-measure beta^2")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval->add_option("--out", cfg.out, "Output directory")->required();
  eval->add_flag("--no-normalize", cfg.no_normalize, "Do not min-max normalize predictions");
  eval->add_flag("--allow-partial", cfg.allow_partial,
                 "Write ranking scores even when some images failed");
  eval->add_flag("--per-image-curves", cfg.per_image_curves, "Write curves/<stem>.csv per image");
  add_jobs(eval);

  auto* rank = app.add_subcommand("rank", "Rank models from score tables");
  rank->add_option("--scores", cfg.scores, "CSV file(s) with model,dataset,S,F,E,M columns")
      ->required()
      ->check(CLI::ExistingFile);
  rank->add_option("--format", cfg.format, "markdown, csv or json")
      ->check(CLI::IsMember({"markdown", "md", "csv", "json"}))
      ->capture_default_str();
  rank->add_option("--out", cfg.out, "Output file (default: stdout)");

  auto* fuse = app.add_subcommand("fuse", "Depth depurator gate over three prediction sets");
  fuse->add_option("--rgb", cfg.rgb, "RGB-only predictions")->required()->check(CLI::ExistingDirectory);
  fuse->add_option("--rgbd", cfg.rgbd, "RGB-D predictions")->required()->check(CLI::ExistingDirectory);
  fuse->add_option("--depth", cfg.depth, "Depth-only predictions")
      ->required()
      ->check(CLI::ExistingDirectory);
  fuse->add_option("--t", cfg.t, "Gate threshold on the mean absolute difference")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  fuse->add_option("--out", cfg.fuse_out, "Output directory for fused maps")
      ->capture_default_str();
  fuse->add_option("--sweep", cfg.sweep, "Extra thresholds to tabulate in sweep.csv")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  fuse->add_option("--gt", cfg.gt, "Ground truth masks; scores the sweep")
      ->check(CLI::ExistingDirectory);
  fuse->add_option("--depth-images", cfg.depth_images, "Raw depth images for the histogram label")
      ->check(CLI::ExistingDirectory);
  fuse->add_option("--smooth-window", cfg.smooth_window, "Histogram moving-average window (odd)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fuse->add_option("--prominence", cfg.prominence, "Peak prominence floor as a fraction of pixels")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  fuse->add_option("--beta2", cfg.beta2, "F-measure beta^2 for the sweep")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fuse->add_flag("--no-normalize", cfg.no_normalize, "Do not min-max normalize when scoring");
  add_jobs(fuse);

  auto* stats = app.add_subcommand("stats", "Center-bias and object-size statistics of GT masks");
  stats->add_option("--gt", cfg.gt, "Directory of ground truth masks")
      ->required()
      ->check(CLI::ExistingDirectory);
  stats->add_option("--bins", cfg.bins, "Histogram bins")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  stats->add_option("--out", cfg.out, "Directory for summary.json and CSV histograms");
  add_jobs(stats);

  auto* bounds = app.add_subcommand("bounds", "Per-image best/worst envelope of two record sets");
  bounds->add_option("--a", cfg.a, "records.csv of the first prediction set")
      ->required()
      ->check(CLI::ExistingFile);
  bounds->add_option("--b", cfg.b, "records.csv of the second prediction set")
      ->required()
      ->check(CLI::ExistingFile);
  bounds->add_option("--out", cfg.out, "Output CSV (default: stdout)");

  auto* plot = app.add_subcommand("plot", "Render PR and F-threshold curves to SVG");
  plot->add_option("--curves", cfg.curves, "Directory of curve CSVs or eval output directories")
      ->required();
  plot->add_option("--svg", cfg.svg, "Output SVG file")->required();
  plot->add_option("--title", cfg.title, "Figure title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kFatal;
  }

  // CLI11 silently drops env values that fail validation, so read it here.
  const char* env_jobs = std::getenv("SODBENCH_JOBS");
  if (env_jobs && std::none_of(jobs_options.begin(), jobs_options.end(),
                               [](const CLI::Option* o) { return o->count() > 0; })) {
    const std::string text = env_jobs;
    unsigned value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || value == 0) {
      err << "SODBENCH_JOBS must be a positive integer, got '" << text << "'\n";
      return kFatal;
    }
    cfg.jobs = value;
  }

  if (fuse->parsed() && cfg.smooth_window % 2 == 0) {
    err << "--smooth-window must be odd\n";
    return kFatal;
  }

  try {
    if (eval->parsed()) return cmd_eval(cfg, out, err);
    if (rank->parsed()) return cmd_rank(cfg, out, err);
    if (fuse->parsed()) return cmd_fuse(cfg, out, err);
    if (stats->parsed()) return cmd_stats(cfg, out, err);
    if (bounds->parsed()) return cmd_bounds(cfg, out, err);
    if (plot->parsed()) return cmd_plot(cfg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFatal;
  }
  return kFatal;
}

}  // namespace sodbench::cli
