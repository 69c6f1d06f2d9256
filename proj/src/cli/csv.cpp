#include "cli/csv.hpp"

#include "xxzq/version.hpp"

namespace xxzq::cli {

CsvWriter::CsvWriter(std::ostream& out, const std::string& command, const Config& config) : out_(out) {
  out_ << "# xxzq " << kVersion << '\n';
  out_ << "# command: " << command << '\n';
  for (const auto& [key, value] : config.resolved()) out_ << "# " << key << " = " << value << '\n';
}

void CsvWriter::columns(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) out_ << (i ? "," : "") << names[i];
  out_ << '\n';
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << '\n'; }

void CsvWriter::separator() {
  if (row_open_) out_ << ',';
  row_open_ = true;
}

CsvWriter& CsvWriter::cell(double v) {
  separator();
  out_ << format_double(v);
  return *this;
}

CsvWriter& CsvWriter::cell(int v) {
  separator();
  out_ << v;
  return *this;
}

CsvWriter& CsvWriter::cell(const std::string& v) {
  separator();
  out_ << v;
  return *this;
}

CsvWriter& CsvWriter::cell(std::complex<double> v) {
  cell(v.real());
  return cell(v.imag());
}

void CsvWriter::end_row() {
  out_ << '\n';
  row_open_ = false;
}

}  // namespace xxzq::cli
