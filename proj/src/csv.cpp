#include "pamlab/csv.hpp"

#include <ctime>

namespace pamlab {

std::string format_double_17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path,
                     std::span<const std::string> columns,
                     bool with_timestamp)
    : path_(path), columns_(columns.size()) {
  file_ = std::fopen(path.c_str(), "wb");
  if (!file_) throw usage_error("CsvWriter: cannot open " + path);
  if (with_timestamp) {
    std::time_t now = std::time(nullptr);
    char stamp[64];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ",
                  std::gmtime(&now));
    std::fprintf(file_, "# generated_at %s\n", stamp);
  }
  for (std::size_t i = 0; i < columns.size(); ++i)
    std::fprintf(file_, "%s%s", columns[i].c_str(),
                 i + 1 < columns.size() ? "," : "\n");
}

CsvWriter::~CsvWriter() {
  if (file_) std::fclose(file_);
}

void CsvWriter::row(std::span<const double> values) {
  if (values.size() != columns_)
    throw usage_error("CsvWriter: wrong column count for " + path_);
  for (std::size_t i = 0; i < values.size(); ++i)
    std::fprintf(file_, "%s%s", format_double_17(values[i]).c_str(),
                 i + 1 < values.size() ? "," : "\n");
}

void CsvWriter::row_prefixed(const std::string& label,
                             std::span<const double> values) {
  if (values.size() + 1 != columns_)
    throw usage_error("CsvWriter: wrong column count for " + path_);
  std::fprintf(file_, "%s", label.c_str());
  for (std::size_t i = 0; i < values.size(); ++i)
    std::fprintf(file_, ",%s", format_double_17(values[i]).c_str());
  std::fprintf(file_, "\n");
}

}  // namespace pamlab
