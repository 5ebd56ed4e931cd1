#ifndef STREAMLENS_SVG_HPP
#define STREAMLENS_SVG_HPP

#include <Eigen/Core>

#include <array>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace streamlens::svg {

struct Series {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  std::string label;
  bool markers = false;
  bool dashed = false;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<Series> series;
  /// Vertical rules drawn at these x values.
  std::vector<double> x_marks;
};

struct Heatmap {
  std::string title;
  std::string x_label;
  std::string y_label;
  Eigen::MatrixXd values; ///< rows run along y, columns along x
  double x_min = 0.0;
  double x_max = 1.0;
  /// One coordinate per row; plotted on a log axis when `log_y`.
  Eigen::VectorXd y;
  bool log_y = false;
  /// Per column, the largest trusted y; the region above is shaded.
  Eigen::VectorXd coi;
  /// (x, y) points drawn on top, e.g. maxima lines.
  std::vector<std::pair<double, double>> overlay;
  /// (x, y, angle) arrows, e.g. phase differences; angle 0 points right.
  std::vector<std::array<double, 3>> arrows;
};

std::string render(const LinePlot& plot);
std::string render(const Heatmap& map);

/// Writes the document; the first line after the XML prolog is a version
/// comment, everything else is a pure function of the input.
void write(const std::filesystem::path& path, const std::string& document);

} // namespace streamlens::svg

#endif
