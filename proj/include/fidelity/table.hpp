#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fidelity/errors.hpp"

namespace fidelity {

/// One table cell: missing, a number, or free text.
class Cell {
 public:
  Cell() = default;
  explicit Cell(double v) : value_(v) {}
  explicit Cell(std::string s) : value_(std::move(s)) {}

  bool missing() const noexcept { return std::holds_alternative<std::monostate>(value_); }
  bool is_number() const noexcept { return std::holds_alternative<double>(value_); }
  bool is_text() const noexcept { return std::holds_alternative<std::string>(value_); }

  double number() const { return std::get<double>(value_); }
  const std::string& text() const { return std::get<std::string>(value_); }

  /// Category label: the text itself, or the shortest round-trip spelling of
  /// a number (so "1" and "1.0" collapse onto one category).
  std::string label() const {
    if (is_text()) return text();
    if (!is_number()) return {};
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, number());
    return std::string(buf, res.ptr);
  }

  friend bool operator==(const Cell&, const Cell&) = default;

 private:
  std::variant<std::monostate, double, std::string> value_;
};

struct Column {
  std::string name;
  std::vector<Cell> cells;

  friend bool operator==(const Column&, const Column&) = default;
};

/// Column-major table. Every column holds exactly `n_rows` cells.
class DataTable {
 public:
  DataTable() = default;
  DataTable(std::vector<Column> columns, std::size_t n_rows)
      : columns_(std::move(columns)), n_rows_(n_rows) {
    for (const auto& c : columns_) {
      if (c.cells.size() != n_rows_) {
        throw IngestError("column '" + c.name + "' has " + std::to_string(c.cells.size()) +
                          " cells, expected " + std::to_string(n_rows_));
      }
    }
  }

  std::size_t n_rows() const noexcept { return n_rows_; }
  std::size_t n_cols() const noexcept { return columns_.size(); }
  const std::vector<Column>& columns() const noexcept { return columns_; }
  const Column& column(std::size_t j) const { return columns_.at(j); }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      if (columns_[j].name == name) return j;
    }
    return std::nullopt;
  }

  const Column& column(std::string_view name) const {
    auto j = index_of(name);
    if (!j) throw SchemaError("no column named '" + std::string(name) + "'");
    return columns_[*j];
  }

  /// Non-missing numeric values of column `j` in row order.
  std::vector<double> numeric_values(std::size_t j) const {
    std::vector<double> out;
    out.reserve(n_rows_);
    for (const auto& c : columns_.at(j).cells) {
      if (c.is_number()) out.push_back(c.number());
    }
    return out;
  }

  /// Category labels of the non-missing cells of column `j` in row order.
  std::vector<std::string> labels(std::size_t j) const {
    std::vector<std::string> out;
    out.reserve(n_rows_);
    for (const auto& c : columns_.at(j).cells) {
      if (!c.missing()) out.push_back(c.label());
    }
    return out;
  }

  /// Table restricted to the named columns, in the given order.
  DataTable select(const std::vector<std::string>& names) const {
    std::vector<Column> cols;
    cols.reserve(names.size());
    for (const auto& n : names) cols.push_back(column(n));
    return DataTable(std::move(cols), n_rows_);
  }

  /// Table restricted to the given rows, in the given order.
  DataTable take_rows(const std::vector<std::size_t>& rows) const {
    std::vector<Column> cols;
    cols.reserve(columns_.size());
    for (const auto& c : columns_) {
      Column out{c.name, {}};
      out.cells.reserve(rows.size());
      for (auto r : rows) out.cells.push_back(c.cells.at(r));
      cols.push_back(std::move(out));
    }
    return DataTable(std::move(cols), rows.size());
  }

  friend bool operator==(const DataTable&, const DataTable&) = default;

 private:
  std::vector<Column> columns_;
  std::size_t n_rows_ = 0;
};

namespace csv_detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

/// [+-]? (digits [. digits?] | . digits) ([eE] [+-]? digits)?
inline bool is_decimal_literal(std::string_view s) {
  std::size_t i = 0;
  const std::size_t n = s.size();
  if (i < n && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t int_digits = 0;
  while (i < n && s[i] >= '0' && s[i] <= '9') ++i, ++int_digits;
  std::size_t frac_digits = 0;
  if (i < n && s[i] == '.') {
    ++i;
    while (i < n && s[i] >= '0' && s[i] <= '9') ++i, ++frac_digits;
  }
  if (int_digits + frac_digits == 0) return false;
  if (i < n && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < n && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t exp_digits = 0;
    while (i < n && s[i] >= '0' && s[i] <= '9') ++i, ++exp_digits;
    if (exp_digits == 0) return false;
  }
  return i == n;
}

inline Cell parse_cell(std::string_view raw) {
  auto s = trim(raw);
  if (s.empty()) return Cell{};
  if (is_decimal_literal(s)) {
    auto body = s.front() == '+' ? s.substr(1) : s;
    double v = 0.0;
    auto res = std::from_chars(body.data(), body.data() + body.size(), v);
    if (res.ec == std::errc{} && res.ptr == body.data() + body.size()) return Cell{v};
  }
  return Cell{std::string(s)};
}

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

// RFC-4180 records: quoted fields may hold commas, doubled quotes and newlines.
inline std::vector<Record> split_records(std::string_view text) {
  std::vector<Record> out;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  Record rec;
  std::string field;
  bool in_quotes = false;
  bool record_has_content = false;
  std::size_t line = 1;
  rec.line = line;

  auto end_record = [&] {
    rec.fields.push_back(std::move(field));
    field.clear();
    // Blank lines are skipped.
    if (record_has_content || rec.fields.size() > 1 || !rec.fields.front().empty()) {
      out.push_back(std::move(rec));
    }
    rec = Record{};
    rec.line = line;
    record_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        in_quotes = true;
        record_has_content = true;
        break;
      case ',':
        rec.fields.push_back(std::move(field));
        field.clear();
        record_has_content = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        ++line;
        end_record();
        break;
      case '\n':
        ++line;
        end_record();
        break;
      default:
        field.push_back(ch);
    }
  }
  if (in_quotes) throw IngestError("unterminated quoted field starting near line " + std::to_string(rec.line));
  if (!field.empty() || !rec.fields.empty() || record_has_content) end_record();
  return out;
}

}  // namespace csv_detail

/// Parse CSV text with a mandatory header row. Cells that are complete decimal
/// literals become numbers, empty cells become missing, anything else is text.
inline DataTable parse_csv(std::string_view text) {
  auto records = csv_detail::split_records(text);
  if (records.empty()) throw IngestError("CSV input has no header row");

  const auto& header = records.front().fields;
  std::vector<Column> cols(header.size());
  for (std::size_t j = 0; j < header.size(); ++j) {
    cols[j].name = std::string(csv_detail::trim(header[j]));
    cols[j].cells.reserve(records.size() - 1);
  }
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.size()) {
      throw IngestError("ragged CSV: data row " + std::to_string(r) + " (line " + std::to_string(rec.line) +
                        ") has " + std::to_string(rec.fields.size()) + " fields, header has " +
                        std::to_string(header.size()));
    }
    for (std::size_t j = 0; j < header.size(); ++j) cols[j].cells.push_back(csv_detail::parse_cell(rec.fields[j]));
  }
  return DataTable(std::move(cols), records.size() - 1);
}

inline std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot read file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IngestError("read failure: " + path.string());
  return std::move(ss).str();
}

inline DataTable load_csv(const std::filesystem::path& path) {
  return parse_csv(read_file_bytes(path));
}

}  // namespace fidelity
