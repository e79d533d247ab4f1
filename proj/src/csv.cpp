#include "formation/csv.hpp"

#include <cstdio>

namespace formation {

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : out_(path) {}

void CsvWriter::header(std::span<const std::string> columns) {
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (k) out_ << ',';
    out_ << columns[k];
  }
  out_ << '\n';
}

void CsvWriter::row(std::span<const double> values) {
  char buf[32];
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out_ << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", values[k]);
    out_ << buf;
  }
  out_ << '\n';
}

}  // namespace formation
