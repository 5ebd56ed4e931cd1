#include "streamlens/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace streamlens {
namespace {

std::string trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r\n");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t begin = 0;
  while (true) {
    auto comma = line.find(',', begin);
    cells.push_back(trim(std::string_view(line).substr(begin, comma - begin)));
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  return cells;
}

std::optional<double> parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (*first == '+') ++first;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

struct RawRow {
  std::size_t line_number;
  std::vector<std::string> cells;
};

std::vector<RawRow> read_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<RawRow> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    rows.push_back({number, split_row(line)});
  }
  return rows;
}

// A header row has a non-numeric cell where the next row is numeric, so
// opaque date labels in data rows are not mistaken for a header.
bool is_header(const std::vector<RawRow>& rows) {
  const auto& first = rows.front().cells;
  for (std::size_t c = 0; c < first.size(); ++c) {
    if (parse_number(first[c])) continue;
    if (rows.size() < 2) return true;
    const auto& next = rows[1].cells;
    if (c < next.size() && parse_number(next[c])) return true;
  }
  return false;
}

} // namespace

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

TimeSeries read_csv(const std::filesystem::path& path, const CsvOptions& options) {
  auto rows = read_rows(path);
  if (rows.empty()) throw Error(path.string() + ": no data rows");

  std::vector<std::string> header;
  std::size_t first_data = 0;
  if (is_header(rows)) {
    header = rows.front().cells;
    first_data = 1;
  }
  if (rows.size() <= first_data) throw Error(path.string() + ": no data rows");

  const std::size_t width = header.empty() ? rows[first_data].cells.size() : header.size();
  std::size_t column = width - 1;
  if (options.column_name) {
    auto it = std::find(header.begin(), header.end(), *options.column_name);
    if (it == header.end())
      throw Error(path.string() + ": missing column '" + *options.column_name + "'");
    column = static_cast<std::size_t>(it - header.begin());
  } else if (options.column_index) {
    if (*options.column_index < 0 || static_cast<std::size_t>(*options.column_index) >= width)
      throw Error(path.string() + ": missing column " + std::to_string(*options.column_index));
    column = static_cast<std::size_t>(*options.column_index);
  }

  const std::size_t count = rows.size() - first_data;
  Eigen::VectorXd values(static_cast<Eigen::Index>(count));
  std::vector<double> times;
  bool numeric_times = width > 1 && column != 0;
  for (std::size_t r = 0; r < count; ++r) {
    const auto& row = rows[first_data + r];
    if (column >= row.cells.size())
      throw Error(path.string() + ": row " + std::to_string(row.line_number) + " has no column " +
                  std::to_string(column));
    auto value = parse_number(row.cells[column]);
    if (!value || !std::isfinite(*value))
      throw Error(path.string() + ": non-numeric value '" + row.cells[column] + "' at row " +
                  std::to_string(row.line_number) + ", column " + std::to_string(column + 1));
    values[static_cast<Eigen::Index>(r)] = *value;
    if (numeric_times) {
      auto t = parse_number(row.cells[0]);
      if (t) times.push_back(*t);
      else numeric_times = false;
    }
  }

  double start = 0.0;
  double step = 1.0;
  if (numeric_times && !times.empty()) {
    start = times.front();
    if (times.size() > 1 && !options.step) {
      step = times[1] - times[0];
      const double tol = 1e-9 * std::max(1.0, std::abs(step) + std::abs(times.back()));
      for (std::size_t i = 1; i < times.size(); ++i) {
        if (std::abs(times[i] - times[i - 1] - step) > tol)
          throw Error(path.string() + ": rows are not equally spaced in time at row " +
                      std::to_string(rows[first_data + i].line_number) + " (pass a step override)");
      }
    }
  }
  if (options.step) step = *options.step;
  if (options.start) start = *options.start;

  std::string label = header.empty() ? path.stem().string() : header[column];
  return TimeSeries(std::move(values), start, step, std::move(label));
}

void write_csv(const TimeSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  const std::string label = series.label().empty() ? "value" : series.label();
  out << "time," << label << '\n';
  for (Eigen::Index i = 0; i < series.size(); ++i)
    out << format_number(series.time_at(i)) << ',' << format_number(series.values()[i]) << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

nlohmann::json to_json(const TimeSeries& series) {
  const auto& v = series.values();
  return {{"label", series.label()},
          {"start", series.start()},
          {"step", series.step()},
          {"values", std::vector<double>(v.data(), v.data() + v.size())}};
}

TimeSeries time_series_from_json(const nlohmann::json& j) {
  try {
    auto values = j.at("values").get<std::vector<double>>();
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                          static_cast<Eigen::Index>(values.size()));
    return TimeSeries(std::move(v), j.value("start", 0.0), j.value("step", 1.0),
                      j.value("label", std::string{}));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid time series JSON: ") + e.what());
  }
}

void write_table(const Table& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (std::size_t c = 0; c < table.header.size(); ++c) out << (c ? "," : "") << table.header[c];
  out << '\n';
  std::string line;
  for (Eigen::Index r = 0; r < table.rows.rows(); ++r) {
    line.clear();
    for (Eigen::Index c = 0; c < table.rows.cols(); ++c) {
      if (c) line += ',';
      line += format_number(table.rows(r, c));
    }
    out << line << '\n';
  }
  if (!out) throw Error("failed writing " + path.string());
}

Table read_table(const std::filesystem::path& path) {
  auto rows = read_rows(path);
  if (rows.empty()) throw Error(path.string() + ": empty table");
  Table table;
  table.header = rows.front().cells;
  const auto width = static_cast<Eigen::Index>(table.header.size());
  table.rows.resize(static_cast<Eigen::Index>(rows.size() - 1), width);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (static_cast<Eigen::Index>(row.cells.size()) != width)
      throw Error(path.string() + ": row " + std::to_string(row.line_number) + " has " +
                  std::to_string(row.cells.size()) + " cells, expected " + std::to_string(width));
    for (Eigen::Index c = 0; c < width; ++c) {
      auto value = parse_number(row.cells[static_cast<std::size_t>(c)]);
      if (!value)
        throw Error(path.string() + ": non-numeric value '" + row.cells[static_cast<std::size_t>(c)] +
                    "' at row " + std::to_string(row.line_number) + ", column " + std::to_string(c + 1));
      table.rows(static_cast<Eigen::Index>(r - 1), c) = *value;
    }
  }
  return table;
}

nlohmann::json to_json(const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < table.rows.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < table.rows.cols(); ++c) row.push_back(table.rows(r, c));
    rows.push_back(std::move(row));
  }
  return {{"columns", table.header}, {"rows", std::move(rows)}};
}

Table table_from_json(const nlohmann::json& j) {
  try {
    Table table;
    table.header = j.at("columns").get<std::vector<std::string>>();
    const auto& rows = j.at("rows");
    const auto width = static_cast<Eigen::Index>(table.header.size());
    table.rows.resize(static_cast<Eigen::Index>(rows.size()), width);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<Eigen::Index>(rows[r].size()) != width)
        throw Error("table JSON row " + std::to_string(r + 1) + " has the wrong width");
      for (Eigen::Index c = 0; c < width; ++c)
        table.rows(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)].get<double>();
    }
    return table;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid table JSON: ") + e.what());
  }
}

} // namespace streamlens
