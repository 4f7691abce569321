#include "mogra/logging.hpp"

#include <sstream>
#include <stdexcept>

#include "mogra/util.hpp"

namespace mogra {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

DsvWriter::DsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path), n_cols_(header.size()), out_(path) {
  if (!out_) throw std::runtime_error("cannot open log file for writing: " + path);
  if (header.empty()) throw std::invalid_argument("log header must be nonempty");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ << ',';
    out_ << header[i];
  }
  out_ << '\n';
  out_.flush();
  if (!out_) throw std::runtime_error("write failed: " + path);
}

void DsvWriter::write_row(const std::vector<std::string>& fields) {
  if (fields.size() != n_cols_) {
    throw std::invalid_argument("log row has " + std::to_string(fields.size()) + " fields, header has " +
                                std::to_string(n_cols_));
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << fields[i];
  }
  out_ << '\n';
  out_.flush();
  if (!out_) throw std::runtime_error("write failed: " + path_);
}

void DsvWriter::write_numeric_row(const std::vector<double>& values) {
  std::vector<std::string> fields;
  fields.reserve(values.size());
  for (double v : values) fields.push_back(format_double(v));
  write_row(fields);
}

std::size_t DsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::invalid_argument("no column named '" + name + "'");
}

DsvTable read_dsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open log file: " + path);
  DsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty log file: " + path);
  table.header = split_csv(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto row = split_csv(line);
    if (row.size() != table.header.size()) {
      throw std::runtime_error(path + ": row width does not match header");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace mogra
