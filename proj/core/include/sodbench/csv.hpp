#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace sodbench::csv {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);
/// Throws std::invalid_argument on anything but a complete number.
double parse_double(std::string_view text);

/// Quotes a field when it contains a comma, quote or newline.
std::string escape(std::string_view field);
std::string join(const std::vector<std::string>& fields);

/// Splits one record, honouring double-quoted fields.
std::vector<std::string> split(std::string_view line);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column, or -1.
  int column(std::string_view name) const;
};

/// Reads a header line followed by records; blank lines are skipped.
Table read(std::istream& in);

}  // namespace sodbench::csv
