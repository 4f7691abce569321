#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace mogra {

// Comma-separated value writer with a fixed header row. Every numeric field
// is rendered with format_double (9 significant digits, locale independent)
// and each row is flushed as it is written, so a run killed mid-step still
// leaves a parseable prefix on disk.
class DsvWriter {
 public:
  DsvWriter(const std::string& path, const std::vector<std::string>& header);

  void write_row(const std::vector<std::string>& fields);
  void write_numeric_row(const std::vector<double>& values);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::size_t n_cols_;
  std::ofstream out_;
};

struct DsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;  // throws on unknown name
};

DsvTable read_dsv(const std::string& path);

}  // namespace mogra
