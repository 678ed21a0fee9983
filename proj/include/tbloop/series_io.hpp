#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tbloop/mixture.hpp"

namespace tbloop {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Fixed 17-significant-digit rendering used by every text output.
std::string format_real(double v);

// CSV dialect: comma separated, '.' decimal, header row, LF line endings.
// Lines starting with '#' are comments and come before the header.
// Columns: "y", then "t" when labels are present, then any extra columns.
struct ExtraColumn {
  std::string name;
  std::vector<std::string> cells;
};

void write_series_csv(std::ostream& os, const ObservationSeries& series, std::span<const std::string> comments = {},
                      std::span<const ExtraColumn> extra = {});

// Reads a series; a "y" column is required, "t" is optional and other
// columns are ignored. Malformed input throws ParseError with a 1-based line.
ObservationSeries read_series_csv(std::istream& is);
ObservationSeries read_series_csv_file(const std::string& path);

}  // namespace tbloop
