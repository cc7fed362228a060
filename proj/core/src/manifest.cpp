#include "sodbench/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

namespace sodbench {
namespace fs = std::filesystem;

namespace {

std::map<std::string, fs::path> index_by_stem(const fs::path& dir) {
  std::map<std::string, fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string stem = entry.path().stem().string();
    if (stem.empty() || stem.front() == '.') continue;
    auto [it, inserted] = out.emplace(stem, entry.path());
    if (!inserted) {
      throw ManifestError("duplicate stem '" + stem + "' in " + dir.string() + ": " +
                          it->second.filename().string() + " and " +
                          entry.path().filename().string());
    }
  }
  return out;
}

}  // namespace

DatasetManifest scan_manifest(const fs::path& dataset_root, const std::string& model) {
  const fs::path pred_dir = dataset_root / "pred" / model;
  const fs::path gt_dir = dataset_root / "GT";
  const fs::path depth_dir = dataset_root / "depth";
  if (!fs::is_directory(pred_dir)) throw ManifestError("missing directory " + pred_dir.string());
  if (!fs::is_directory(gt_dir)) throw ManifestError("missing directory " + gt_dir.string());

  const auto preds = index_by_stem(pred_dir);
  const auto gts = index_by_stem(gt_dir);
  const auto depths =
      fs::is_directory(depth_dir) ? index_by_stem(depth_dir) : std::map<std::string, fs::path>{};

  DatasetManifest m;
  m.name = dataset_root.filename().string();
  if (m.name.empty()) m.name = dataset_root.parent_path().filename().string();
  m.model = model;
  for (const auto& [stem, pred] : preds) {
    const auto gt = gts.find(stem);
    if (gt == gts.end()) {
      m.unmatched.push_back("prediction without GT: " + pred.string());
      continue;
    }
    ImagePair pair{stem, pred, gt->second, std::nullopt};
    if (const auto d = depths.find(stem); d != depths.end()) pair.depth = d->second;
    m.pairs.push_back(std::move(pair));
  }
  for (const auto& [stem, gt] : gts) {
    if (!preds.contains(stem)) m.unmatched.push_back("GT without prediction: " + gt.string());
  }
  if (m.pairs.empty()) {
    throw ManifestError("no prediction/GT pairs found under " + dataset_root.string());
  }
  return m;
}

DatasetManifest load_manifest(const fs::path& json_path) {
  std::ifstream in(json_path);
  if (!in) throw ManifestError("cannot open manifest " + json_path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError("malformed manifest " + json_path.string() + ": " + e.what());
  }

  const fs::path base = json_path.parent_path();
  auto resolve = [&base](const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path : base / path;
  };

  DatasetManifest m;
  try {
    m.name = doc.value("name", json_path.stem().string());
    m.model = doc.value("model", std::string("model"));
    for (const auto& item : doc.at("pairs")) {
      ImagePair pair;
      pair.prediction = resolve(item.at("pred").get<std::string>());
      pair.ground_truth = resolve(item.at("gt").get<std::string>());
      if (item.contains("depth") && !item.at("depth").is_null()) {
        pair.depth = resolve(item.at("depth").get<std::string>());
      }
      pair.stem = item.value("stem", pair.prediction.stem().string());
      m.pairs.push_back(std::move(pair));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError("invalid manifest " + json_path.string() + ": " + e.what());
  }
  std::sort(m.pairs.begin(), m.pairs.end(),
            [](const ImagePair& a, const ImagePair& b) { return a.stem < b.stem; });
  if (m.pairs.empty()) throw ManifestError("manifest lists no pairs: " + json_path.string());
  const auto dup = std::adjacent_find(m.pairs.begin(), m.pairs.end(),
                                      [](const ImagePair& a, const ImagePair& b) { return a.stem == b.stem; });
  if (dup != m.pairs.end()) throw ManifestError("manifest repeats stem '" + dup->stem + "'");
  return m;
}

void validate(const DatasetManifest& manifest) {
  std::vector<std::string> problems;
  std::set<std::string> stems;
  for (const ImagePair& p : manifest.pairs) {
    if (!stems.insert(p.stem).second) problems.push_back("repeated stem " + p.stem);
    if (!fs::is_regular_file(p.prediction)) problems.push_back("missing " + p.prediction.string());
    if (!fs::is_regular_file(p.ground_truth)) {
      problems.push_back("missing " + p.ground_truth.string());
    }
    if (p.depth && !fs::is_regular_file(*p.depth)) problems.push_back("missing " + p.depth->string());
  }
  if (problems.empty()) return;
  std::string msg = "invalid manifest '" + manifest.name + "':";
  for (const auto& p : problems) msg += "\n  " + p;
  throw ManifestError(msg);
}

}  // namespace sodbench
