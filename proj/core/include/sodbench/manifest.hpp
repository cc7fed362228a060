#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sodbench {

class ManifestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ImagePair {
  std::string stem;
  std::filesystem::path prediction;
  std::filesystem::path ground_truth;
  std::optional<std::filesystem::path> depth;
};

struct DatasetManifest {
  std::string name;
  std::string model;
  std::vector<ImagePair> pairs;        // sorted by stem
  std::vector<std::string> unmatched;  // human-readable notes on skipped files
};

/// Pairs files by stem across `<dataset_root>/pred/<model>/`,
/// `<dataset_root>/GT/` and, when present, `<dataset_root>/depth/`.
/// Extensions are ignored when matching. Throws ManifestError when the layout
/// is missing, a directory holds two files with the same stem, or no pair is
/// found.
DatasetManifest scan_manifest(const std::filesystem::path& dataset_root, const std::string& model);

/// Reads an explicit manifest:
///   {"name": "...", "model": "...",
///    "pairs": [{"pred": "...", "gt": "...", "depth": "..."}, ...]}
/// Relative paths resolve against the manifest's directory; "stem" is optional
/// and defaults to the prediction file stem. Repeated stems throw ManifestError.
DatasetManifest load_manifest(const std::filesystem::path& json_path);

/// Throws ManifestError naming every missing file or repeated stem.
void validate(const DatasetManifest& manifest);

}  // namespace sodbench
