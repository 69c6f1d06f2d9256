#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace xxzq::cli {

// CSV with a '#' comment header: artifact version, command, then the resolved config sorted by key.
class CsvWriter {
public:
  CsvWriter(std::ostream& out, const std::string& command, const Config& config);

  void columns(const std::vector<std::string>& names);
  void comment(const std::string& text);

  CsvWriter& cell(double v);
  CsvWriter& cell(int v);
  CsvWriter& cell(const std::string& v);
  CsvWriter& cell(std::complex<double> v);  // two columns: re, im
  void end_row();

private:
  void separator();

  std::ostream& out_;
  bool row_open_ = false;
};

}  // namespace xxzq::cli
