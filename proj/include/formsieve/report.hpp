#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "formsieve/weight.hpp"

namespace formsieve {

inline constexpr std::string_view kToolVersion = "formsieve 0.1.0";

using Json = nlohmann::ordered_json;

// 15 significant digits, "%.15g".
std::string format_number(double x);
std::string format_number(long double x);

// JSON number rounded to 15 significant digits, so summaries match CSVs.
Json json_number(double x);
Json json_complex(Complex z);

/// CSV with a '#' header block (tool version, then the config as one JSON
/// line) followed by the column-name row.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const Json& config, const std::vector<std::string>& columns);

  CsvWriter& cell(std::string_view text);
  CsvWriter& cell(double x);
  CsvWriter& cell(long double x);
  CsvWriter& cell(std::int64_t x);
  CsvWriter& cell(std::uint64_t x);
  CsvWriter& cell(int x) { return cell(static_cast<std::int64_t>(x)); }
  void end_row();

 private:
  std::ostream& out_;
  bool first_ = true;
};

// {"tool": version, "config": config} followed by the summary fields,
// dumped with 2-space indent and a trailing newline.
void write_summary(std::ostream& out, const Json& config, const Json& summary);

}  // namespace formsieve
