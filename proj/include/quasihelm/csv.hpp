#pragma once

#include <string>
#include <vector>

#include "quasihelm/types.hpp"

namespace quasihelm {

// CSV with '.' decimal point and 17 significant digits; complex values are
// emitted as paired _re/_im columns by the callers.
class CsvWriter {
public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns);
  ~CsvWriter();

  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& values);

private:
  struct Impl;
  Impl* impl_;
};

std::string csv_number(double v);

}  // namespace quasihelm
