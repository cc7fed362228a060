#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sodbench/evaluate.hpp"
#include "sodbench/leaderboard.hpp"

namespace sodbench {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ReportFormat { csv, markdown, json, svg };

/// Parses "csv", "markdown"/"md", "json" or "svg".
ReportFormat parse_report_format(const std::string& name);

struct NamedCurve {
  std::string name;
  MeanCurve curve;
};

/// model,dataset,S,F,E,M followed by rank columns. Scores are written with
/// round-trip precision so read_score_rows() restores them exactly.
void write_leaderboard_csv(std::ostream& out, const Leaderboard& lb);

/// Reads rows from any CSV with model, dataset, S, F, E and M columns; other
/// columns are ignored. An empty score cell becomes NaN, which rank_models
/// reports as a missing cell.
std::vector<ScoreRow> read_score_rows(std::istream& in);

/// One block per dataset with rows S, F, E, M and Rank, models as columns
/// ordered by All Rank, and a closing All Rank row.
std::string leaderboard_markdown(const Leaderboard& lb);
std::string leaderboard_json(const Leaderboard& lb);

/// Two panels: precision-recall and F-measure over threshold, one polyline
/// per curve in each.
std::string curves_svg(std::span<const NamedCurve> curves, const std::string& title = {});

/// Renders the leaderboard (csv/markdown/json) or the curves (svg) into `path`.
/// Throws OutputError when the file cannot be written.
void emit_report(const Leaderboard& lb, std::span<const NamedCurve> curves, ReportFormat format,
                 const std::filesystem::path& path);

/// Writes `text` to `path`, throwing OutputError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace sodbench
