#include "dsfa/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dsfa/error.hpp"

namespace dsfa {
namespace {

std::vector<std::string> split(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(std::move(field));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void check_consecutive_time(const std::vector<double>& t, const std::string& path) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] != t.front() + static_cast<double>(i) || t[i] != std::floor(t[i]))
      throw ParseError(path + ": column t must hold consecutive integers", static_cast<long>(i) + 2);
  }
}

}  // namespace

char delimiter(CsvFormat format) noexcept { return format == CsvFormat::Tsv ? '\t' : ','; }

CsvFormat parse_format(std::string_view name) {
  if (name == "csv") return CsvFormat::Csv;
  if (name == "tsv") return CsvFormat::Tsv;
  throw InvalidParameter("unknown format '" + std::string(name) + "' (expected csv or tsv)");
}

std::string_view extension(CsvFormat format) noexcept { return format == CsvFormat::Tsv ? ".tsv" : ".csv"; }

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::optional<double> parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return v;
}

std::string join_row(std::span<const std::string> fields, CsvFormat format) {
  const char delim = delimiter(format);
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += delim;
    const std::string& f = fields[i];
    if (f.find_first_of(std::string{delim, '"', '\n', '\r'}) == std::string::npos) {
      out += f;
      continue;
    }
    out += '"';
    for (char c : f) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  }
  return out;
}

const std::vector<double>& NumericTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return columns[i];
  throw InvalidParameter("no column named '" + std::string(name) + "'");
}

bool NumericTable::has_column(std::string_view name) const noexcept {
  for (const auto& h : header)
    if (h == name) return true;
  return false;
}

NumericTable parse_table(std::string_view text, const std::string& source) {
  NumericTable table;
  std::size_t pos = 0;
  long line_no = 0;
  char delim = ',';
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) {
      if (pos > text.size()) break;
      continue;
    }
    if (table.header.empty()) {
      delim = line.find('\t') != std::string_view::npos ? '\t' : ',';
      for (auto& h : split(line, delim)) table.header.emplace_back(trim(h));
      table.columns.resize(table.header.size());
      continue;
    }
    const auto fields = split(line, delim);
    if (fields.size() != table.header.size())
      throw ParseError(source + ":" + std::to_string(line_no) + ": expected " + std::to_string(table.header.size()) +
                           " fields, found " + std::to_string(fields.size()),
                       line_no);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const auto v = parse_double(fields[i]);
      if (!v)
        throw ParseError(source + ":" + std::to_string(line_no) + ": not a number: '" + fields[i] + "'", line_no);
      table.columns[i].push_back(*v);
    }
  }
  if (table.header.empty()) throw ParseError(source + ": missing header row", 1);
  return table;
}

NumericTable read_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_table(ss.str(), path);
}

void write_table(const std::string& path, std::span<const std::string> header,
                 std::span<const std::vector<double>> columns, CsvFormat format) {
  if (header.size() != columns.size()) throw InvalidParameter("header and column counts differ");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != rows) throw InvalidParameter("columns have different lengths");

  auto out = open_out(path);
  out << join_row(header, format) << '\n';
  const char delim = delimiter(format);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c > 0) out << delim;
      out << format_double(columns[c][r]);
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

void write_series(const std::string& path, const TimeSeries& series, CsvFormat format) {
  std::vector<double> t(series.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(series.start + static_cast<long>(i));
  const std::vector<std::string> header{"t", "value"};
  const std::vector<std::vector<double>> cols{std::move(t), series.values};
  write_table(path, header, cols, format);
}

TimeSeries read_series(const std::string& path) {
  const NumericTable table = read_table(path);
  if (table.header.size() != 2 || table.header[0] != "t" || table.header[1] != "value")
    throw ParseError(path + ": expected header 't,value'", 1);
  if (table.rows() == 0) throw ParseError(path + ": no data rows", 2);
  check_consecutive_time(table.columns[0], path);
  TimeSeries s;
  s.start = static_cast<long>(table.columns[0].front());
  s.values = table.columns[1];
  return s;
}

void write_force(const std::string& path, const DrivingForce& force, CsvFormat format) {
  std::vector<double> t(force.length());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(DrivingForce::kFirstTime + static_cast<long>(i));
  const std::vector<std::string> header{"t", "gamma", "gamma_slow", "gamma_fast"};
  const std::vector<std::vector<double>> cols{std::move(t), force.values, force.slow, force.fast};
  write_table(path, header, cols, format);
}

DrivingForce read_force(const std::string& path) {
  const NumericTable table = read_table(path);
  const std::vector<std::string> expected{"t", "gamma", "gamma_slow", "gamma_fast"};
  if (table.header != expected) throw ParseError(path + ": expected header 't,gamma,gamma_slow,gamma_fast'", 1);
  if (table.rows() < 2) throw ParseError(path + ": need at least 2 data rows", 2);
  check_consecutive_time(table.columns[0], path);
  if (table.columns[0].front() != static_cast<double>(DrivingForce::kFirstTime))
    throw ParseError(path + ": force time index must start at 1", 2);
  DrivingForce f;
  f.values = table.columns[1];
  f.slow = table.columns[2];
  f.fast = table.columns[3];
  return f;
}

}  // namespace dsfa
