#pragma once

// CSV in and out: header row, comma separators, LF line endings, numbers in
// shortest round-trip decimal form.

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "hankelwave/errors.hpp"
#include "hankelwave/function_spec.hpp"

namespace hankelwave::csv {

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline bool parse_double(std::string_view text, double& out) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc{} && res.ptr == text.data() + text.size();
}

inline std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline void write(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

/// Reads a numeric table. A first line whose fields are not all numbers is taken as the header.
inline Table read(std::istream& in) {
  Table table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto fields = split(line);
    std::vector<double> row;
    bool numeric = true;
    for (auto f : fields) {
      double v = 0;
      if (!parse_double(f, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (table.rows.empty() && table.header.empty()) {
        for (auto f : fields) table.header.emplace_back(f);
        continue;
      }
      throw input_error("CSV line " + std::to_string(line_no) + ": non-numeric field");
    }
    if (!table.rows.empty() && row.size() != table.rows.front().size())
      throw input_error("CSV line " + std::to_string(line_no) + ": inconsistent column count");
    table.rows.push_back(std::move(row));
  }
  return table;
}

/// Two-column (r, f) samples; header optional, r strictly increasing.
inline FunctionSpec read_sampled(std::istream& in, Interpolation rule) {
  const auto table = read(in);
  std::vector<double> r, f;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (table.rows[i].size() != 2)
      throw input_error("sampled input must have exactly two columns (r, f); row " + std::to_string(i + 1) +
                        " has " + std::to_string(table.rows[i].size()));
    r.push_back(table.rows[i][0]);
    f.push_back(table.rows[i][1]);
  }
  return FunctionSpec::sampled(std::move(r), std::move(f), rule);
}

}  // namespace hankelwave::csv
