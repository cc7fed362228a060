#include "sodbench/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sodbench/csv.hpp"

namespace sodbench {

using csv::format_double;

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "markdown" || name == "md") return ReportFormat::markdown;
  if (name == "json") return ReportFormat::json;
  if (name == "svg") return ReportFormat::svg;
  throw std::invalid_argument("unknown report format '" + name + "'");
}

void write_leaderboard_csv(std::ostream& out, const Leaderboard& lb) {
  out << "model,dataset,S,F,E,M,rank_S,rank_F,rank_E,rank_M,mean_rank,rank,all_rank\n";
  for (const LeaderboardCell& c : lb.cells) {
    int all_rank = 0;
    for (const ModelStanding& s : lb.standings) {
      if (s.model == c.row.model) all_rank = s.all_rank;
    }
    std::vector<std::string> fields{c.row.model, c.row.dataset};
    for (double v : c.row.scores) fields.push_back(format_double(v));
    for (int r : c.metric_ranks) fields.push_back(std::to_string(r));
    fields.push_back(format_double(c.mean_metric_rank));
    fields.push_back(std::to_string(c.rank));
    fields.push_back(std::to_string(all_rank));
    out << csv::join(fields) << '\n';
  }
}

std::vector<ScoreRow> read_score_rows(std::istream& in) {
  const csv::Table table = csv::read(in);
  const int model = table.column("model");
  const int dataset = table.column("dataset");
  const std::array<int, 4> cols{table.column("S"), table.column("F"), table.column("E"),
                                table.column("M")};
  if (model < 0 || dataset < 0 || std::find(cols.begin(), cols.end(), -1) != cols.end()) {
    throw std::invalid_argument("score CSV needs model, dataset, S, F, E and M columns");
  }
  std::vector<ScoreRow> rows;
  for (const auto& fields : table.rows) {
    if (fields.size() != table.header.size()) throw std::invalid_argument("ragged score CSV row");
    ScoreRow row;
    row.model = fields[static_cast<std::size_t>(model)];
    row.dataset = fields[static_cast<std::size_t>(dataset)];
    for (std::size_t m = 0; m < 4; ++m) {
      const std::string& cell = fields[static_cast<std::size_t>(cols[m])];
      row.scores[m] =
          cell.empty() ? std::numeric_limits<double>::quiet_NaN() : csv::parse_double(cell);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

// ".900" style, as printed in benchmark tables.
std::string table_score(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  std::string s(buf);
  if (s.rfind("0.", 0) == 0) s.erase(0, 1);
  return s;
}

}  // namespace

std::string leaderboard_markdown(const Leaderboard& lb) {
  std::ostringstream out;
  out << "| Dataset | Measure |";
  for (const ModelStanding& s : lb.standings) out << ' ' << s.model << " |";
  out << "\n|---|---|";
  for (std::size_t i = 0; i < lb.standings.size(); ++i) out << "---:|";
  out << '\n';

  static constexpr std::array<const char*, 4> kLabels{"S↑", "F↑", "E↑", "M↓"};
  for (const std::string& d : lb.datasets) {
    for (Metric m : kRankedMetrics) {
      out << "| " << d << " | " << kLabels[static_cast<std::size_t>(m)] << " |";
      for (const ModelStanding& s : lb.standings) {
        const LeaderboardCell* c = lb.cell(s.model, d);
        out << ' ' << (c ? table_score(c->row.score(m)) : "-") << " |";
      }
      out << '\n';
    }
    out << "| " << d << " | Rank |";
    for (const ModelStanding& s : lb.standings) {
      const LeaderboardCell* c = lb.cell(s.model, d);
      out << ' ' << (c ? std::to_string(c->rank) : "-") << " |";
    }
    out << '\n';
  }
  out << "| All | All Rank |";
  for (const ModelStanding& s : lb.standings) out << ' ' << s.all_rank << " |";
  out << "\n\n"
      << "Rank: competition rank of the mean of the four per-measure ranks (ties share a rank). "
      << "All Rank: order of the mean dataset Rank; ties go to the higher mean S, then the model "
         "name.\n";
  for (const std::string& w : lb.warnings) out << "\nWarning: " << w << '\n';
  return out.str();
}

std::string leaderboard_json(const Leaderboard& lb) {
  nlohmann::ordered_json j;
  j["datasets"] = lb.datasets;
  j["standings"] = nlohmann::ordered_json::array();
  for (const ModelStanding& s : lb.standings) {
    j["standings"].push_back(
        {{"model", s.model}, {"mean_dataset_rank", s.mean_dataset_rank}, {"all_rank", s.all_rank}});
  }
  j["cells"] = nlohmann::ordered_json::array();
  for (const LeaderboardCell& c : lb.cells) {
    nlohmann::ordered_json cell;
    cell["model"] = c.row.model;
    cell["dataset"] = c.row.dataset;
    for (Metric m : kRankedMetrics) cell[metric_name(m)] = c.row.score(m);
    for (Metric m : kRankedMetrics) {
      cell[std::string("rank_") + metric_name(m)] = c.metric_ranks[static_cast<std::size_t>(m)];
    }
    cell["mean_rank"] = c.mean_metric_rank;
    cell["rank"] = c.rank;
    j["cells"].push_back(std::move(cell));
  }
  j["warnings"] = lb.warnings;
  return j.dump(2);
}

namespace {

constexpr std::array<const char*, 10> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                               "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                               "#bcbd22", "#17becf"};

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Panel {
  double left;
  double top;
  double width;
  double height;

  double x(double u) const { return left + u * width; }
  double y(double v) const { return top + (1.0 - v) * height; }
};

void draw_axes(std::ostringstream& out, const Panel& p, const std::string& title,
               const std::string& x_label, const std::string& y_label, double x_max_label) {
  out << "<rect x=\"" << coord(p.left) << "\" y=\"" << coord(p.top) << "\" width=\""
      << coord(p.width) << "\" height=\"" << coord(p.height)
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double u = i / 4.0;
    out << "<text x=\"" << coord(p.x(u)) << "\" y=\"" << coord(p.top + p.height + 16)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << coord(u * x_max_label) << "</text>\n";
    out << "<text x=\"" << coord(p.left - 6) << "\" y=\"" << coord(p.y(u) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << coord(u) << "</text>\n";
  }
  out << "<text x=\"" << coord(p.x(0.5)) << "\" y=\"" << coord(p.top - 8)
      << "\" font-size=\"13\" text-anchor=\"middle\">" << xml_escape(title) << "</text>\n";
  out << "<text x=\"" << coord(p.x(0.5)) << "\" y=\"" << coord(p.top + p.height + 34)
      << "\" font-size=\"12\" text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text x=\"" << coord(p.left - 40) << "\" y=\"" << coord(p.y(0.5))
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 " << coord(p.left - 40)
      << ' ' << coord(p.y(0.5)) << ")\">" << y_label << "</text>\n";
}

}  // namespace

std::string curves_svg(std::span<const NamedCurve> curves, const std::string& title) {
  const Panel pr{70, 50, 360, 300};
  const Panel ft{530, 50, 360, 300};
  const double legend_top = 400;
  const double height = legend_top + 18.0 * static_cast<double>(curves.size()) + 20;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"" << coord(height)
      << "\" viewBox=\"0 0 960 " << coord(height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    out << "<text x=\"480\" y=\"20\" font-size=\"15\" text-anchor=\"middle\">" << xml_escape(title)
        << "</text>\n";
  }
  draw_axes(out, pr, "Precision-recall", "Recall", "Precision", 1.0);
  draw_axes(out, ft, "F-measure over threshold", "Threshold", "F-measure", 255.0);

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const char* color = kPalette[i % kPalette.size()];
    const MeanCurve& c = curves[i].curve;
    const std::string name = xml_escape(curves[i].name);
    out << "<polyline class=\"pr\" data-model=\"" << name << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t t = 0; t < kThresholdCount; ++t) {
      out << (t ? " " : "") << coord(pr.x(c.recall[t])) << ',' << coord(pr.y(c.precision[t]));
    }
    out << "\"/>\n";
    out << "<polyline class=\"f\" data-model=\"" << name << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t t = 0; t < kThresholdCount; ++t) {
      out << (t ? " " : "") << coord(ft.x(static_cast<double>(t) / 255.0)) << ','
          << coord(ft.y(c.f_beta[t]));
    }
    out << "\"/>\n";
    const double y = legend_top + 18.0 * static_cast<double>(i);
    out << "<line x1=\"70\" y1=\"" << coord(y) << "\" x2=\"100\" y2=\"" << coord(y)
        << "\" stroke=\"" << color << "\" stroke-width=\"3\"/>\n";
    out << "<text x=\"108\" y=\"" << coord(y + 4) << "\" font-size=\"12\">" << name << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw OutputError("error while writing " + path.string());
}

void emit_report(const Leaderboard& lb, std::span<const NamedCurve> curves, ReportFormat format,
                 const std::filesystem::path& path) {
  switch (format) {
    case ReportFormat::csv: {
      std::ostringstream out;
      write_leaderboard_csv(out, lb);
      write_text_file(path, out.str());
      return;
    }
    case ReportFormat::markdown: write_text_file(path, leaderboard_markdown(lb)); return;
    case ReportFormat::json: write_text_file(path, leaderboard_json(lb)); return;
    case ReportFormat::svg: write_text_file(path, curves_svg(curves)); return;
  }
}

}  // namespace sodbench
