#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "qhydro/core/error.hpp"

namespace qhydro::io {

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal that reads back to the same double.
inline std::string format_double(double v) {
  if (v == 0.0) return std::signbit(v) ? "-0" : "0";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  if (res.ec != std::errc{}) throw IoError("csv: cannot format value");
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw IoError("csv: not a number: '" + s + "'");
  return v;
}

/// File-name fragment for a parameter value: 1.5 -> "1p5".
inline std::string value_tag(double v) {
  std::string s = format_double(v);
  for (auto& ch : s)
    if (ch == '.') ch = 'p';
  return s;
}

/// Header plus rows of already formatted cells.
class CsvTable {
 public:
  CsvTable() = default;
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
    qhydro::detail::require(!header_.empty(), "csv: header must not be empty");
  }

  void add(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    add_cells(std::move(cells));
  }
  void add_cells(std::vector<std::string> cells) {
    qhydro::detail::require(cells.size() == header_.size(), "csv: row width differs from header");
    rows_.push_back(std::move(cells));
  }

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  std::size_t column(const std::string& name) const {
    for (std::size_t k = 0; k < header_.size(); ++k)
      if (header_[k] == name) return k;
    throw IoError("csv: no column '" + name + "'");
  }
  double number(std::size_t row, const std::string& name) const { return parse_double(rows_.at(row).at(column(name))); }
  std::vector<double> numbers(const std::string& name) const {
    const std::size_t k = column(name);
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(parse_double(r[k]));
    return out;
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

namespace detail {

inline void write_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) os << ',';
    os << cells[k];
  }
  os << '\n';
}

inline std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace detail

/// Writes header and rows with LF endings; returns the row count.
inline std::size_t write_csv(const std::filesystem::path& path, const CsvTable& t) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  detail::write_row(os, t.header());
  for (const auto& r : t.rows()) detail::write_row(os, r);
  if (!os) throw IoError("write failed: " + path.string());
  return t.size();
}

inline CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line)) throw IoError(path.string() + ": empty file");
  CsvTable t(detail::split_row(line));
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto cells = detail::split_row(line);
    if (cells.size() != t.header().size()) throw IoError(path.string() + ": ragged row");
    t.add_cells(std::move(cells));
  }
  return t;
}

}  // namespace qhydro::io
