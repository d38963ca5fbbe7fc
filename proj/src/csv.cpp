#include "quasihelm/csv.hpp"

#include <cstdio>
#include <fstream>

namespace quasihelm {

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CsvWriter::Impl {
  std::ofstream out;
  std::size_t n_columns;
};

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& columns)
    : impl_(new Impl{std::ofstream(path), columns.size()}) {
  if (!impl_->out) {
    delete impl_;
    throw ConfigError("cannot open output file: " + path);
  }
  for (std::size_t i = 0; i < columns.size(); ++i)
    impl_->out << (i ? "," : "") << columns[i];
  impl_->out << "\n";
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != impl_->n_columns)
    throw ConfigError("csv row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i)
    impl_->out << (i ? "," : "") << csv_number(values[i]);
  impl_->out << "\n";
}

void CsvWriter::row(const std::vector<std::string>& values) {
  if (values.size() != impl_->n_columns)
    throw ConfigError("csv row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i)
    impl_->out << (i ? "," : "") << values[i];
  impl_->out << "\n";
}

}  // namespace quasihelm
