#include "formsieve/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace formsieve {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string format_number(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15Lg", x);
  return buf;
}

Json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(format_number(x).c_str(), nullptr);
}

Json json_complex(Complex z) {
  return Json{{"re", json_number(z.real())}, {"im", json_number(z.imag())}};
}

CsvWriter::CsvWriter(std::ostream& out, const Json& config,
                     const std::vector<std::string>& columns)
    : out_(out) {
  out_ << "# " << kToolVersion << '\n';
  out_ << "# config: " << config.dump() << '\n';
  for (const auto& c : columns) cell(c);
  end_row();
}

CsvWriter& CsvWriter::cell(std::string_view text) {
  if (!first_) out_ << ',';
  out_ << text;
  first_ = false;
  return *this;
}

CsvWriter& CsvWriter::cell(double x) { return cell(format_number(x)); }
CsvWriter& CsvWriter::cell(long double x) { return cell(format_number(x)); }
CsvWriter& CsvWriter::cell(std::int64_t x) { return cell(std::to_string(x)); }
CsvWriter& CsvWriter::cell(std::uint64_t x) { return cell(std::to_string(x)); }

void CsvWriter::end_row() {
  out_ << '\n';
  first_ = true;
}

void write_summary(std::ostream& out, const Json& config, const Json& summary) {
  Json doc;
  doc["tool"] = kToolVersion;
  doc["config"] = config;
  for (const auto& [key, value] : summary.items()) doc[key] = value;
  out << doc.dump(2) << '\n';
}

}  // namespace formsieve
