#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sodbench {

/// The four ranked measures in leaderboard column order.
enum class Metric { s_alpha = 0, f_beta = 1, e_xi = 2, mae = 3 };
inline constexpr std::array<Metric, 4> kRankedMetrics{Metric::s_alpha, Metric::f_beta,
                                                      Metric::e_xi, Metric::mae};

const char* metric_name(Metric m);
inline bool higher_is_better(Metric m) { return m != Metric::mae; }

/// One model's dataset statistics on one dataset.
struct ScoreRow {
  std::string model;
  std::string dataset;
  std::array<double, 4> scores{};  // indexed by Metric

  double score(Metric m) const { return scores[static_cast<std::size_t>(m)]; }
  friend bool operator==(const ScoreRow&, const ScoreRow&) = default;
};

struct LeaderboardCell {
  ScoreRow row;
  std::array<int, 4> metric_ranks{};
  double mean_metric_rank = 0.0;
  int rank = 0;  // dataset Rank

  friend bool operator==(const LeaderboardCell&, const LeaderboardCell&) = default;
};

struct ModelStanding {
  std::string model;
  double mean_dataset_rank = 0.0;
  int all_rank = 0;

  friend bool operator==(const ModelStanding&, const ModelStanding&) = default;
};

/// Rankings of a model x dataset score table.
///
/// Per-metric ranks are competition ranks (ties share the lowest rank): MAE
/// ascending, the others descending. A dataset Rank is the competition rank
/// of the mean of the four metric ranks. All Rank orders models by the mean
/// of their dataset Ranks with ties broken by higher mean S_alpha, then model
/// name, and is therefore a strict ordinal.
struct Leaderboard {
  std::vector<std::string> datasets;       // sorted by name
  std::vector<ModelStanding> standings;    // ordered by All Rank
  std::vector<LeaderboardCell> cells;      // by dataset, then by display order
  std::vector<std::string> warnings;

  /// nullptr when the model was not ranked on that dataset.
  const LeaderboardCell* cell(const std::string& model, const std::string& dataset) const;
  /// Models on `dataset` in display order: Rank, then S_alpha, then name.
  std::vector<const LeaderboardCell*> dataset_cells(const std::string& dataset) const;

  friend bool operator==(const Leaderboard&, const Leaderboard&) = default;
};

/// Competition ranks of `values`; equal values share the minimum rank.
std::vector<int> competition_rank(std::span<const double> values, bool higher_better);

/// Models missing a dataset that other models report, or carrying a
/// non-finite score, are excluded with a warning. Duplicate (model, dataset)
/// rows throw std::invalid_argument. The result does not depend on row order.
Leaderboard rank_models(std::span<const ScoreRow> table);

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Envelope of any per-image choice between two predictions: means of the
/// per-image worse and better score. Higher scores are better; negate or pass
/// higher_better=false for error measures. Throws on empty input.
Bounds bound_analysis(std::span<const std::pair<double, double>> per_image, bool higher_better = true);

/// Mean of the per-image score picked by a gate (true selects .second).
double gated_mean(std::span<const std::pair<double, double>> per_image,
                  std::span<const bool> pick_second);

}  // namespace sodbench
