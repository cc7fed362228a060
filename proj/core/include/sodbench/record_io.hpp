#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sodbench/evaluate.hpp"

namespace sodbench {

/// Columns of a per-image record row.
std::vector<std::string> record_csv_header();
std::vector<std::string> record_csv_fields(const std::string& stem, const MetricRecord& record);

/// One row per image; failed images carry status "failed" and empty scores.
void write_records_csv(std::ostream& out, std::span<const ImageResult> images);

/// JSON object with every scalar of the record; `include_curve` adds the
/// 256-point curve as parallel arrays.
std::string record_json(const MetricRecord& record, bool include_curve = false);

/// 256 rows: threshold,precision,recall,f,e.
void write_curve_csv(std::ostream& out, const Curve& curve);
void write_curve_csv(std::ostream& out, const MeanCurve& curve);
/// Reads either curve CSV back; throws std::invalid_argument on malformed input.
MeanCurve read_curve_csv(std::istream& in);

/// Dataset-level summary: scores, counts and failures.
std::string evaluation_json(const DatasetEvaluation& evaluation, double beta2);

/// Successful rows of a records CSV keyed by stem, each a map from column
/// name (mae, f_max, ...) to value.
std::map<std::string, std::map<std::string, double>> read_records_csv(std::istream& in);

}  // namespace sodbench
