#include "streamlens/deltal.hpp"

#include <cmath>
#include <string>

#include "streamlens/parallel.hpp"

namespace streamlens {

Eigen::VectorXi segment_coverage(Eigen::Index length, int size) {
  if (size < 1 || size > length) throw Error("segment size out of range");
  Eigen::VectorXi m = Eigen::VectorXi::Zero(length);
  for (Eigen::Index p = 0; p + size <= length; ++p) m.segment(p, size).array() += 1;
  return m;
}

DeltaLDiagram delta_l(const TimeSeries& series, const DeltaLOptions& options) {
  const Eigen::Index n = series.size();
  if (n < 8) throw Error("delta-L needs at least 8 samples");
  const int max_size = options.max_size.value_or(static_cast<int>(n / 4));
  const int min_size = options.min_size;
  if (min_size < 2 || max_size < min_size || max_size > n)
    throw Error("segment sizes must satisfy 2 <= min <= max <= T, got " + std::to_string(min_size) +
                ".." + std::to_string(max_size));

  const Eigen::VectorXd z = options.on_profile ? profile(series, true).values() : series.values();

  DeltaLDiagram out;
  const int count = max_size - min_size + 1;
  out.sizes = Eigen::VectorXi::LinSpaced(count, min_size, max_size);
  out.E.resize(n, count);
  out.F.resize(count);

  parallel_for(static_cast<std::size_t>(count), [&](std::size_t column) {
    const auto c = static_cast<Eigen::Index>(column);
    const int s = out.sizes[c];
    // Abscissae centered on the segment midpoint; sum u = 0.
    const Eigen::ArrayXd u =
        Eigen::ArrayXd::LinSpaced(s, 0.0, static_cast<double>(s - 1)) - 0.5 * (s - 1);
    const double suu = (u * u).sum();

    Eigen::ArrayXd sum_sq = Eigen::ArrayXd::Zero(n);
    for (Eigen::Index p = 0; p + s <= n; ++p) {
      const auto seg = z.segment(p, s).array();
      const double level = seg.mean();
      const double slope = (u * seg).sum() / suu;
      sum_sq.segment(p, s) += (seg - level - slope * u).square();
    }
    const Eigen::ArrayXd m = segment_coverage(n, s).cast<double>().array();
    out.E.col(c) = (sum_sq / m).sqrt().matrix();
    out.F[c] = out.E.col(c).mean();
  });
  return out;
}

} // namespace streamlens
