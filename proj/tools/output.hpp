#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

namespace qwalk::cli {

/// Minimal CSV writer: header on open, doubles with 17 significant digits.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> header);

  CsvWriter& operator<<(double v);
  CsvWriter& operator<<(int v);
  CsvWriter& operator<<(long v);
  CsvWriter& operator<<(unsigned long v);
  CsvWriter& operator<<(const std::string& v);
  /// Terminates the current row.
  void end_row();

 private:
  void sep();
  std::ofstream out_;
  bool row_started_ = false;
};

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// JSON-safe double: NaN and infinities become null.
nlohmann::json number(double v);

}  // namespace qwalk::cli
