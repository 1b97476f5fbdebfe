#include "output.hpp"

#include <cmath>
#include <stdexcept>

#include "qwalk/config.hpp"

namespace qwalk::cli {

CsvWriter::CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> header) : out_(path) {
  if (!out_) throw std::runtime_error("cannot write " + path.string());
  for (const auto& h : header) *this << h;
  end_row();
}

void CsvWriter::sep() {
  if (row_started_) out_ << ',';
  row_started_ = true;
}

CsvWriter& CsvWriter::operator<<(double v) {
  sep();
  out_ << format_double(v);
  return *this;
}

CsvWriter& CsvWriter::operator<<(int v) {
  sep();
  out_ << v;
  return *this;
}

CsvWriter& CsvWriter::operator<<(long v) {
  sep();
  out_ << v;
  return *this;
}

CsvWriter& CsvWriter::operator<<(unsigned long v) {
  sep();
  out_ << v;
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& v) {
  sep();
  out_ << v;
  return *this;
}

void CsvWriter::end_row() {
  out_ << '\n';
  row_started_ = false;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace qwalk::cli
