#include "sodbench/record_io.hpp"

#include <array>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sodbench/csv.hpp"

namespace sodbench {

using csv::format_double;

std::vector<std::string> record_csv_header() {
  return {"stem", "status", "mae",  "f_max", "f_adaptive", "adaptive_threshold",
          "s_measure", "e_max", "bce", "empty_gt"};
}

std::vector<std::string> record_csv_fields(const std::string& stem, const MetricRecord& r) {
  return {stem,
          "ok",
          format_double(r.mae),
          format_double(r.f_max),
          format_double(r.f_adaptive),
          std::to_string(r.adaptive_threshold),
          format_double(r.s_measure),
          format_double(r.e_max),
          format_double(r.bce),
          r.empty_gt ? "1" : "0"};
}

void write_records_csv(std::ostream& out, std::span<const ImageResult> images) {
  const auto header = record_csv_header();
  out << csv::join(header) << '\n';
  for (const ImageResult& img : images) {
    if (img.record) {
      out << csv::join(record_csv_fields(img.stem, *img.record)) << '\n';
    } else {
      std::vector<std::string> row(header.size());
      row[0] = img.stem;
      row[1] = "failed";
      out << csv::join(row) << '\n';
    }
  }
}

std::string record_json(const MetricRecord& r, bool include_curve) {
  nlohmann::ordered_json j;
  j["mae"] = r.mae;
  j["f_max"] = r.f_max;
  j["f_adaptive"] = r.f_adaptive;
  j["adaptive_threshold"] = r.adaptive_threshold;
  j["s_measure"] = r.s_measure;
  j["e_max"] = r.e_max;
  j["bce"] = r.bce;
  j["empty_gt"] = r.empty_gt;
  if (include_curve) {
    auto& c = j["curve"];
    for (const CurvePoint& p : r.curve) {
      c["precision"].push_back(p.precision);
      c["recall"].push_back(p.recall);
      c["f"].push_back(p.f_beta);
      c["e"].push_back(p.e_value);
    }
  }
  return j.dump();
}

namespace {

void write_curve_rows(std::ostream& out, auto&& row_at) {
  out << "threshold,precision,recall,f,e\n";
  for (int t = 0; t < kThresholdCount; ++t) {
    const auto [p, r, f, e] = row_at(static_cast<std::size_t>(t));
    out << t << ',' << format_double(p) << ',' << format_double(r) << ',' << format_double(f)
        << ',' << format_double(e) << '\n';
  }
}

}  // namespace

void write_curve_csv(std::ostream& out, const Curve& curve) {
  write_curve_rows(out, [&](std::size_t t) {
    const CurvePoint& p = curve[t];
    return std::array{p.precision, p.recall, p.f_beta, p.e_value};
  });
}

void write_curve_csv(std::ostream& out, const MeanCurve& curve) {
  write_curve_rows(out, [&](std::size_t t) {
    return std::array{curve.precision[t], curve.recall[t], curve.f_beta[t], curve.e_value[t]};
  });
}

MeanCurve read_curve_csv(std::istream& in) {
  const csv::Table table = csv::read(in);
  const int ct = table.column("threshold");
  const int cp = table.column("precision");
  const int cr = table.column("recall");
  const int cf = table.column("f");
  const int ce = table.column("e");
  if (ct < 0 || cp < 0 || cr < 0 || cf < 0 || ce < 0) {
    throw std::invalid_argument("curve CSV needs threshold,precision,recall,f,e columns");
  }
  if (table.rows.size() != kThresholdCount) {
    throw std::invalid_argument("curve CSV must have 256 rows, got " +
                                std::to_string(table.rows.size()));
  }
  MeanCurve curve;
  std::vector<bool> seen(kThresholdCount, false);
  for (const auto& row : table.rows) {
    if (row.size() < table.header.size()) throw std::invalid_argument("short curve CSV row");
    const double tv = csv::parse_double(row[static_cast<std::size_t>(ct)]);
    const int t = static_cast<int>(tv);
    if (t != tv || t < 0 || t >= kThresholdCount || seen[static_cast<std::size_t>(t)]) {
      throw std::invalid_argument("bad threshold in curve CSV");
    }
    seen[static_cast<std::size_t>(t)] = true;
    const auto k = static_cast<std::size_t>(t);
    curve.precision[k] = csv::parse_double(row[static_cast<std::size_t>(cp)]);
    curve.recall[k] = csv::parse_double(row[static_cast<std::size_t>(cr)]);
    curve.f_beta[k] = csv::parse_double(row[static_cast<std::size_t>(cf)]);
    curve.e_value[k] = csv::parse_double(row[static_cast<std::size_t>(ce)]);
  }
  return curve;
}

std::string evaluation_json(const DatasetEvaluation& ev, double beta2) {
  nlohmann::ordered_json j;
  j["dataset"] = ev.dataset;
  j["model"] = ev.model;
  j["beta2"] = beta2;
  j["images"] = ev.images.size();
  j["evaluated"] = ev.scores.image_count;
  j["failed"] = ev.failed_count();
  j["empty_gt"] = ev.scores.empty_gt_count;
  auto& s = j["scores"];
  s["S"] = ev.scores.s_measure;
  s["F"] = ev.scores.f_max;
  s["E"] = ev.scores.e_max;
  s["M"] = ev.scores.mae;
  s["f_adaptive"] = ev.scores.f_adaptive;
  s["curve_f_max"] = ev.scores.curve_f_max;
  s["bce"] = ev.scores.bce;
  auto& failures = j["failures"];
  failures = nlohmann::ordered_json::array();
  for (const ImageResult& img : ev.images) {
    if (!img.record) failures.push_back({{"stem", img.stem}, {"error", img.error}});
  }
  return j.dump(2);
}

std::map<std::string, std::map<std::string, double>> read_records_csv(std::istream& in) {
  const csv::Table table = csv::read(in);
  const int stem_col = table.column("stem");
  const int status_col = table.column("status");
  if (stem_col < 0) throw std::invalid_argument("records CSV lacks a stem column");
  std::map<std::string, std::map<std::string, double>> out;
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) throw std::invalid_argument("ragged records CSV row");
    if (status_col >= 0 && row[static_cast<std::size_t>(status_col)] != "ok") continue;
    auto& values = out[row[static_cast<std::size_t>(stem_col)]];
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (static_cast<int>(c) == stem_col || static_cast<int>(c) == status_col) continue;
      values[table.header[c]] = csv::parse_double(row[c]);
    }
  }
  return out;
}

}  // namespace sodbench
