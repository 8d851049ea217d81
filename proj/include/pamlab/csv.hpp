#pragma once

#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "pamlab/errors.hpp"

namespace pamlab {

// CSV with '.' decimal separator and 17 significant digits. The timestamp
// lives in a single marked comment line so byte comparisons can skip it.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::span<const std::string> columns,
            bool with_timestamp = true);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(std::span<const double> values);
  void row_prefixed(const std::string& label, std::span<const double> values);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::FILE* file_ = nullptr;
  std::size_t columns_ = 0;
};

std::string format_double_17(double v);

}  // namespace pamlab
