#include "streamlens/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "streamlens/error.hpp"

namespace streamlens::svg {

namespace {

constexpr double width = 720.0;
constexpr double height = 480.0;
constexpr double left = 70.0;
constexpr double right = 20.0;
constexpr double top = 40.0;
constexpr double bottom = 50.0;
constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '&': out += "&amp;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;
  double pixel_lo = 0.0;
  double pixel_hi = 1.0;

  double value(double v) const { return log ? std::log10(v) : v; }
  double map(double v) const {
    const double t = (value(v) - lo) / (hi - lo);
    return pixel_lo + t * (pixel_hi - pixel_lo);
  }
};

Axis make_axis(double lo, double hi, bool log, double p0, double p1) {
  Axis a;
  a.log = log;
  a.lo = log ? std::log10(lo) : lo;
  a.hi = log ? std::log10(hi) : hi;
  if (!(a.hi > a.lo)) {
    const double pad = a.lo == 0.0 ? 1.0 : std::abs(a.lo) * 0.05;
    a.lo -= pad;
    a.hi += pad;
  }
  a.pixel_lo = p0;
  a.pixel_hi = p1;
  return a;
}

void header(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(width / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
     << "</text>\n";
}

void frame(std::ostringstream& os, const Axis& x, const Axis& y, const std::string& x_label,
           const std::string& y_label) {
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width - left - right << "\" height=\""
     << height - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x.lo + (x.hi - x.lo) * i / 4.0;
    const double fy = y.lo + (y.hi - y.lo) * i / 4.0;
    const double px = x.pixel_lo + (x.pixel_hi - x.pixel_lo) * i / 4.0;
    const double py = y.pixel_lo + (y.pixel_hi - y.pixel_lo) * i / 4.0;
    os << "<text x=\"" << num(px) << "\" y=\"" << num(height - bottom + 16) << "\" text-anchor=\"middle\">"
       << tick(x.log ? std::pow(10.0, fx) : fx) << "</text>\n";
    os << "<text x=\"" << num(left - 6) << "\" y=\"" << num(py + 4) << "\" text-anchor=\"end\">"
       << tick(y.log ? std::pow(10.0, fy) : fy) << "</text>\n";
  }
  os << "<text x=\"" << num((left + width - right) / 2) << "\" y=\"" << num(height - 10)
     << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
  os << "<text transform=\"translate(16," << num((top + height - bottom) / 2)
     << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";
}

bool usable(double v, bool log) { return std::isfinite(v) && (!log || v > 0.0); }

// Blue to white to red.
std::string colour(double t) {
  t = std::clamp(t, 0.0, 1.0);
  int r, g, b;
  if (t < 0.5) {
    const double u = t / 0.5;
    r = static_cast<int>(std::lround(49 + u * (255 - 49)));
    g = static_cast<int>(std::lround(54 + u * (255 - 54)));
    b = static_cast<int>(std::lround(149 + u * (255 - 149)));
  } else {
    const double u = (t - 0.5) / 0.5;
    r = static_cast<int>(std::lround(255 - u * (255 - 165)));
    g = static_cast<int>(std::lround(255 - u * 255));
    b = static_cast<int>(std::lround(255 - u * (255 - 38)));
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

} // namespace

std::string render(const LinePlot& plot) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : plot.series) {
    for (Eigen::Index i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], plot.log_x) || !usable(s.y[i], plot.log_y)) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!std::isfinite(x0)) {
    x0 = y0 = 1.0;
    x1 = y1 = 10.0;
  }
  const Axis x = make_axis(x0, x1, plot.log_x, left, width - right);
  const Axis y = make_axis(y0, y1, plot.log_y, height - bottom, top);

  std::ostringstream os;
  header(os, plot.title);
  frame(os, x, y, plot.x_label, plot.y_label);
  for (double m : plot.x_marks) {
    if (!usable(m, plot.log_x)) continue;
    os << "<line x1=\"" << num(x.map(m)) << "\" x2=\"" << num(x.map(m)) << "\" y1=\"" << top << "\" y2=\""
       << height - bottom << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  }
  int index = 0;
  for (const auto& s : plot.series) {
    const char* c = palette[index % 6];
    std::ostringstream path;
    bool pen = false;
    for (Eigen::Index i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], plot.log_x) || !usable(s.y[i], plot.log_y)) {
        pen = false;
        continue;
      }
      path << (pen ? " L" : " M") << num(x.map(s.x[i])) << ' ' << num(y.map(s.y[i]));
      pen = true;
      if (s.markers)
        os << "<circle cx=\"" << num(x.map(s.x[i])) << "\" cy=\"" << num(y.map(s.y[i])) << "\" r=\"2.5\" fill=\""
           << c << "\"/>\n";
    }
    if (!s.markers || s.x.size() > 1) {
      os << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.2\""
         << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
    }
    if (!s.label.empty()) {
      os << "<text x=\"" << num(width - right - 8) << "\" y=\"" << num(top + 16 + 14 * index)
         << "\" text-anchor=\"end\" fill=\"" << c << "\">" << escape(s.label) << "</text>\n";
    }
    ++index;
  }
  os << "</svg>\n";
  return os.str();
}

std::string render(const Heatmap& map) {
  const Eigen::Index rows = map.values.rows();
  const Eigen::Index cols = map.values.cols();
  if (rows == 0 || cols == 0) throw Error("empty heatmap");
  if (map.y.size() != rows) throw Error("heatmap needs one y coordinate per row");

  // Downsample columns to at most 400 cells, keeping the largest value.
  const Eigen::Index max_cells = 400;
  const Eigen::Index stride = (cols + max_cells - 1) / max_cells;
  const Eigen::Index cells = (cols + stride - 1) / stride;
  Eigen::MatrixXd shown(rows, cells);
  for (Eigen::Index c = 0; c < cells; ++c) {
    const Eigen::Index a = c * stride;
    const Eigen::Index n = std::min(stride, cols - a);
    shown.col(c) = map.values.middleCols(a, n).rowwise().maxCoeff();
  }
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (Eigen::Index i = 0; i < shown.size(); ++i) {
    if (!std::isfinite(shown.data()[i])) continue;
    lo = std::min(lo, shown.data()[i]);
    hi = std::max(hi, shown.data()[i]);
  }
  if (!std::isfinite(lo)) lo = hi = 0.0;
  const double span = hi > lo ? hi - lo : 1.0;

  const double y_lo = map.y.minCoeff();
  const double y_hi = map.y.maxCoeff();
  const Axis x = make_axis(map.x_min, map.x_max, false, left, width - right);
  const Axis y = make_axis(y_lo, y_hi, map.log_y, height - bottom, top);

  std::ostringstream os;
  header(os, map.title);
  const double cell_w = (width - left - right) / static_cast<double>(cells);
  const double cell_h = (height - top - bottom) / static_cast<double>(rows);
  // Rows are drawn in coordinate order, so index them by rank.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(rows));
  for (Eigen::Index r = 0; r < rows; ++r) order[static_cast<std::size_t>(r)] = r;
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return map.y[a] < map.y[b]; });
  for (Eigen::Index rank = 0; rank < rows; ++rank) {
    const Eigen::Index r = order[static_cast<std::size_t>(rank)];
    const double py = height - bottom - (rank + 1) * cell_h;
    for (Eigen::Index c = 0; c < cells; ++c) {
      const double v = shown(r, c);
      os << "<rect x=\"" << num(left + c * cell_w) << "\" y=\"" << num(py) << "\" width=\"" << num(cell_w + 0.3)
         << "\" height=\"" << num(cell_h + 0.3) << "\" fill=\""
         << (std::isfinite(v) ? colour((v - lo) / span) : std::string("#808080")) << "\"/>\n";
    }
  }
  const double x_span = cols > 1 ? static_cast<double>(cols - 1) : 1.0;
  auto row_pixel = [&](double yv) {
    // Position by rank interpolation so the overlay matches the cells.
    const auto it = std::lower_bound(order.begin(), order.end(), yv,
                                     [&](Eigen::Index a, double v) { return map.y[a] < v; });
    const double rank = static_cast<double>(it - order.begin());
    return height - bottom - (rank + 0.5) * cell_h;
  };
  if (map.coi.size() == cols) {
    std::ostringstream path;
    path << "M" << num(left) << ' ' << num(top);
    for (Eigen::Index c = 0; c < cols; c += stride) {
      const double px = left + (width - left - right) * static_cast<double>(c) / x_span;
      const double bound = std::clamp(map.coi[c], y_lo, y_hi);
      path << " L" << num(px) << ' ' << num(map.coi[c] >= y_hi ? top : row_pixel(bound));
    }
    path << " L" << num(width - right) << ' ' << num(top) << " Z";
    os << "<path d=\"" << path.str() << "\" fill=\"white\" fill-opacity=\"0.55\" stroke=\"black\" "
       << "stroke-dasharray=\"4 3\"/>\n";
  }
  for (const auto& [px_val, py_val] : map.overlay) {
    const double px = left + (width - left - right) * (px_val - map.x_min) / std::max(map.x_max - map.x_min, 1e-300);
    os << "<circle cx=\"" << num(px) << "\" cy=\"" << num(row_pixel(py_val)) << "\" r=\"0.9\" fill=\"black\"/>\n";
  }
  for (const auto& [ax, ay, angle] : map.arrows) {
    const double px = left + (width - left - right) * (ax - map.x_min) / std::max(map.x_max - map.x_min, 1e-300);
    const double py = row_pixel(ay);
    const double dx = 7.0 * std::cos(angle);
    const double dy = -7.0 * std::sin(angle);
    os << "<line x1=\"" << num(px - dx) << "\" y1=\"" << num(py - dy) << "\" x2=\"" << num(px + dx) << "\" y2=\""
       << num(py + dy) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<circle cx=\"" << num(px + dx) << "\" cy=\"" << num(py + dy) << "\" r=\"1.5\" fill=\"black\"/>\n";
  }
  frame(os, x, y, map.x_label, map.y_label);
  os << "</svg>\n";
  return os.str();
}

void write(const std::filesystem::path& path, const std::string& document) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<!-- streamlens " << STREAMLENS_VERSION << " -->\n";
  out << document;
  if (!out) throw Error("write failed for " + path.string());
}

} // namespace streamlens::svg
