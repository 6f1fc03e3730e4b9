#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dsfa/dynamics.hpp"

namespace dsfa {

enum class CsvFormat { Csv, Tsv };

char delimiter(CsvFormat format) noexcept;
CsvFormat parse_format(std::string_view name);
std::string_view extension(CsvFormat format) noexcept;

/// %.17g; every finite double survives a format/parse round trip.
std::string format_double(double v);
std::optional<double> parse_double(std::string_view text);

/// Joins fields with the delimiter, quoting fields that contain the
/// delimiter, a quote or a newline.
std::string join_row(std::span<const std::string> fields, CsvFormat format);

/// Numeric table with a header row. Delimiter is detected from the header.
struct NumericTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const noexcept { return columns.empty() ? 0 : columns.front().size(); }
  /// Column by name; throws InvalidParameter when absent.
  const std::vector<double>& column(std::string_view name) const;
  bool has_column(std::string_view name) const noexcept;
};

NumericTable read_table(const std::string& path);
NumericTable parse_table(std::string_view text, const std::string& source = "<memory>");

void write_table(const std::string& path, std::span<const std::string> header,
                 std::span<const std::vector<double>> columns, CsvFormat format);

void write_series(const std::string& path, const TimeSeries& series, CsvFormat format);
TimeSeries read_series(const std::string& path);

void write_force(const std::string& path, const DrivingForce& force, CsvFormat format);
DrivingForce read_force(const std::string& path);

}  // namespace dsfa
