#include "sodbench/leaderboard.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "sodbench/exact_sum.hpp"

namespace sodbench {

const char* metric_name(Metric m) {
  switch (m) {
    case Metric::s_alpha: return "S";
    case Metric::f_beta: return "F";
    case Metric::e_xi: return "E";
    case Metric::mae: return "M";
  }
  return "?";
}

std::vector<int> competition_rank(std::span<const double> values, bool higher_better) {
  std::vector<int> ranks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    int better = 0;
    for (double other : values) {
      if (higher_better ? other > values[i] : other < values[i]) ++better;
    }
    ranks[i] = better + 1;
  }
  return ranks;
}

const LeaderboardCell* Leaderboard::cell(const std::string& model, const std::string& dataset) const {
  for (const LeaderboardCell& c : cells) {
    if (c.row.model == model && c.row.dataset == dataset) return &c;
  }
  return nullptr;
}

std::vector<const LeaderboardCell*> Leaderboard::dataset_cells(const std::string& dataset) const {
  std::vector<const LeaderboardCell*> out;
  for (const LeaderboardCell& c : cells) {
    if (c.row.dataset == dataset) out.push_back(&c);
  }
  return out;
}

Leaderboard rank_models(std::span<const ScoreRow> table) {
  Leaderboard lb;

  std::map<std::string, std::map<std::string, const ScoreRow*>> by_model;
  std::set<std::string> datasets;
  for (const ScoreRow& r : table) {
    if (!by_model[r.model].emplace(r.dataset, &r).second) {
      throw std::invalid_argument("duplicate scores for model '" + r.model + "' on dataset '" +
                                  r.dataset + "'");
    }
    datasets.insert(r.dataset);
  }
  lb.datasets.assign(datasets.begin(), datasets.end());

  std::vector<std::string> models;
  for (const auto& [model, rows] : by_model) {
    std::string problem;
    for (const std::string& d : lb.datasets) {
      const auto it = rows.find(d);
      if (it == rows.end()) {
        problem = "no scores on dataset '" + d + "'";
        break;
      }
      const auto& s = it->second->scores;
      if (!std::all_of(s.begin(), s.end(), [](double v) { return std::isfinite(v); })) {
        problem = "non-finite score on dataset '" + d + "'";
        break;
      }
    }
    if (problem.empty()) {
      models.push_back(model);
    } else {
      lb.warnings.push_back("excluded model '" + model + "': " + problem);
    }
  }
  if (models.empty()) {
    lb.datasets.clear();
    return lb;
  }

  std::map<std::string, ExactSum> rank_sums;
  std::map<std::string, double> s_sums;
  for (const std::string& d : lb.datasets) {
    std::vector<LeaderboardCell> cells;
    for (const std::string& model : models) {
      cells.push_back({*by_model[model][d], {}, 0.0, 0});
    }
    for (Metric metric : kRankedMetrics) {
      std::vector<double> values;
      for (const auto& c : cells) values.push_back(c.row.score(metric));
      const std::vector<int> ranks = competition_rank(values, higher_is_better(metric));
      for (std::size_t i = 0; i < cells.size(); ++i) {
        cells[i].metric_ranks[static_cast<std::size_t>(metric)] = ranks[i];
      }
    }
    std::vector<double> means;
    for (auto& c : cells) {
      int total = 0;
      for (int r : c.metric_ranks) total += r;
      c.mean_metric_rank = total / 4.0;
      means.push_back(c.mean_metric_rank);
    }
    const std::vector<int> ranks = competition_rank(means, false);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      cells[i].rank = ranks[i];
      rank_sums[cells[i].row.model].add(ranks[i]);
      s_sums[cells[i].row.model] += cells[i].row.score(Metric::s_alpha);
    }
    std::sort(cells.begin(), cells.end(), [](const LeaderboardCell& a, const LeaderboardCell& b) {
      if (a.rank != b.rank) return a.rank < b.rank;
      const double sa = a.row.score(Metric::s_alpha);
      const double sb = b.row.score(Metric::s_alpha);
      if (sa != sb) return sa > sb;
      return a.row.model < b.row.model;
    });
    lb.cells.insert(lb.cells.end(), cells.begin(), cells.end());
  }

  for (const std::string& model : models) {
    lb.standings.push_back({model, rank_sums[model].mean(), 0});
  }
  std::sort(lb.standings.begin(), lb.standings.end(),
            [&s_sums](const ModelStanding& a, const ModelStanding& b) {
              if (a.mean_dataset_rank != b.mean_dataset_rank) {
                return a.mean_dataset_rank < b.mean_dataset_rank;
              }
              const double sa = s_sums[a.model];
              const double sb = s_sums[b.model];
              if (sa != sb) return sa > sb;
              return a.model < b.model;
            });
  for (std::size_t i = 0; i < lb.standings.size(); ++i) {
    lb.standings[i].all_rank = static_cast<int>(i) + 1;
  }
  return lb;
}

Bounds bound_analysis(std::span<const std::pair<double, double>> per_image, bool higher_better) {
  if (per_image.empty()) throw std::invalid_argument("bound analysis of an empty score list");
  double lo = 0.0;
  double hi = 0.0;
  for (const auto& [a, b] : per_image) {
    lo += std::min(a, b);
    hi += std::max(a, b);
  }
  const double n = static_cast<double>(per_image.size());
  if (higher_better) return {lo / n, hi / n};
  return {hi / n, lo / n};
}

double gated_mean(std::span<const std::pair<double, double>> per_image,
                  std::span<const bool> pick_second) {
  if (per_image.empty()) throw std::invalid_argument("gated mean of an empty score list");
  if (per_image.size() != pick_second.size()) {
    throw std::invalid_argument("gate count does not match score count");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < per_image.size(); ++i) {
    sum += pick_second[i] ? per_image[i].second : per_image[i].first;
  }
  return sum / static_cast<double>(per_image.size());
}

}  // namespace sodbench
