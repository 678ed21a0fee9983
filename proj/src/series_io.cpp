#include "tbloop/series_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string_view>

namespace tbloop {

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_real(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_series_csv(std::ostream& os, const ObservationSeries& series, std::span<const std::string> comments,
                      std::span<const ExtraColumn> extra) {
  for (const auto& c : comments) os << "# " << c << '\n';
  os << 'y';
  if (series.labels) os << ",t";
  for (const auto& col : extra) os << ',' << col.name;
  os << '\n';
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    os << format_real(series.values[i]);
    if (series.labels) os << ',' << format_real((*series.labels)[i]);
    for (const auto& col : extra) os << ',' << col.cells.at(i);
    os << '\n';
  }
}

ObservationSeries read_series_csv(std::istream& is) {
  ObservationSeries out;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> y_col;
  std::optional<std::size_t> t_col;
  std::size_t n_cols = 0;
  bool have_header = false;

  while (std::getline(is, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    if (!have_header && view.front() == '#') continue;

    const auto cells = split_commas(view);
    if (!have_header) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto name = trim(cells[i]);
        if (name == "y") y_col = i;
        if (name == "t") t_col = i;
      }
      if (!y_col) throw ParseError(line_no, "header lacks a 'y' column");
      n_cols = cells.size();
      have_header = true;
      if (t_col) out.labels.emplace();
      continue;
    }

    if (cells.size() != n_cols)
      throw ParseError(line_no, "expected " + std::to_string(n_cols) + " fields, found " + std::to_string(cells.size()));
    const auto y = parse_real(cells[*y_col]);
    if (!y) throw ParseError(line_no, "invalid value '" + std::string(trim(cells[*y_col])) + "' in column y");
    out.values.push_back(*y);
    if (t_col) {
      const auto t = parse_real(cells[*t_col]);
      if (!t) throw ParseError(line_no, "invalid value '" + std::string(trim(cells[*t_col])) + "' in column t");
      out.labels->push_back(*t);
    }
  }
  if (!have_header) throw ParseError(line_no == 0 ? 1 : line_no, "missing header row");
  return out;
}

ObservationSeries read_series_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return read_series_csv(in);
}

}  // namespace tbloop
