#ifndef STREAMLENS_IO_HPP
#define STREAMLENS_IO_HPP

#include <Eigen/Core>
#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "streamlens/core.hpp"

namespace streamlens {

struct CsvOptions {
  /// Value column by header name. Takes precedence over `column_index`.
  std::optional<std::string> column_name;
  /// Zero-based value column. Defaults to the last column.
  std::optional<int> column_index;
  /// Overrides the sampling interval inferred from a numeric time column.
  std::optional<double> step;
  std::optional<double> start;
};

/// Reads one value column from a comma-separated file. The first row is a
/// header when any of its cells is non-numeric. When the file has more than
/// one column and the first column is numeric it is taken as the time axis
/// and must be equally spaced unless `step` is given; otherwise times are
/// opaque labels and the step defaults to 1.
///
/// Errors name the 1-based file row of the offending cell.
TimeSeries read_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Writes "time,<label>" rows with 17 significant digits.
void write_csv(const TimeSeries& series, const std::filesystem::path& path);

/// {"label","start","step","values":[...]}
nlohmann::json to_json(const TimeSeries& series);
TimeSeries time_series_from_json(const nlohmann::json& j);

/// A numeric table with a header row, the shape every CLI output uses.
struct Table {
  std::vector<std::string> header;
  Eigen::MatrixXd rows;
};

/// Round-trip-safe decimal formatting (17 significant digits).
std::string format_number(double value);

void write_table(const Table& table, const std::filesystem::path& path);
Table read_table(const std::filesystem::path& path);

/// {"columns": [...], "rows": [[...], ...]}
nlohmann::json to_json(const Table& table);
Table table_from_json(const nlohmann::json& j);

} // namespace streamlens

#endif
