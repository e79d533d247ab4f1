#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace formation {

// Serializes a double with 17 significant digits (round-trippable).
std::string format_value(double v);

// Minimal CSV writer: header row, then numeric records.
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);

  void header(std::span<const std::string> columns);
  void row(std::span<const double> values);

  [[nodiscard]] bool good() const { return out_.good(); }

 private:
  std::ofstream out_;
};

}  // namespace formation
