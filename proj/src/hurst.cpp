#include "streamlens/hurst.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "streamlens/parallel.hpp"
#include "streamlens/regression.hpp"

namespace streamlens {

namespace {
constexpr Eigen::Index reliable_length = 200;
constexpr Eigen::Index min_curve_length = 64;
} // namespace

RescaledRange rescaled_range(const Eigen::Ref<const Eigen::VectorXd>& segment) {
  const Eigen::Index n = segment.size();
  if (n < 2) throw Error("rescaled range needs at least two samples");
  const double mean = segment.mean();
  double acc = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double sq = 0.0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double d = segment[t] - mean;
    acc += d;
    sq += d * d;
    if (t == 0 || acc < lo) lo = acc;
    if (t == 0 || acc > hi) hi = acc;
  }
  RescaledRange out;
  out.std_dev = std::sqrt(sq / static_cast<double>(n));
  out.range = hi - lo;
  if (!(out.std_dev > 0.0)) throw Error("zero variance");
  return out;
}

Eigen::VectorXi default_window_sizes(Eigen::Index length) {
  const double lo = std::log(8.0);
  const double hi = std::log(static_cast<double>(length / 2));
  std::set<int> sizes;
  for (int i = 0; i < 20; ++i) {
    const double v = std::exp(lo + (hi - lo) * i / 19.0);
    sizes.insert(static_cast<int>(std::lround(v)));
  }
  Eigen::VectorXi out(static_cast<Eigen::Index>(sizes.size()));
  Eigen::Index i = 0;
  for (int s : sizes) out[i++] = s;
  return out;
}

RSCurve rs_curve(const TimeSeries& series, const std::optional<Eigen::VectorXi>& window_sizes) {
  const Eigen::Index n = series.size();
  if (n < min_curve_length) throw Error("R/S analysis needs at least 64 samples");
  const Eigen::VectorXi sizes = window_sizes ? *window_sizes : default_window_sizes(n);

  const Eigen::VectorXd& x = series.values();
  std::vector<int> kept_sizes;
  std::vector<double> kept_rs;
  std::vector<int> kept_counts;
  for (Eigen::Index i = 0; i < sizes.size(); ++i) {
    const int w = sizes[i];
    if (w < 8 || w > n) throw Error("window size " + std::to_string(w) + " out of range");
    if (i > 0 && w <= sizes[i - 1]) throw Error("window sizes must be strictly increasing");
    double sum = 0.0;
    int used = 0;
    for (Eigen::Index b = 0; (b + 1) * w <= n; ++b) {
      const auto block = x.segment(b * w, w);
      if ((block.array() == block[0]).all()) continue;
      sum += rescaled_range(block).ratio();
      ++used;
    }
    if (used == 0) continue;
    kept_sizes.push_back(w);
    kept_rs.push_back(sum / used);
    kept_counts.push_back(used);
  }

  RSCurve curve;
  curve.series_length = n;
  const auto m = static_cast<Eigen::Index>(kept_sizes.size());
  curve.window_sizes = Eigen::Map<Eigen::VectorXi>(kept_sizes.data(), m);
  curve.rs = Eigen::Map<Eigen::VectorXd>(kept_rs.data(), m);
  curve.counts = Eigen::Map<Eigen::VectorXi>(kept_counts.data(), m);
  return curve;
}

double HurstFit::power_law(double n) const { return std::pow(n / 2.0, H); }

HurstFit fit_hurst(const RSCurve& curve) {
  if (curve.window_sizes.size() < 4) throw Error("Hurst fit needs at least 4 curve points");
  const Eigen::VectorXd log_n = curve.window_sizes.cast<double>().array().log();
  const Eigen::VectorXd log_rs = curve.rs.array().log();
  const auto line = fit_line(log_n, log_rs);

  HurstFit fit;
  fit.H = line.slope;
  fit.intercept = line.intercept;
  fit.r_squared = line.r_squared;
  fit.n_min = curve.window_sizes.minCoeff();
  fit.n_max = curve.window_sizes.maxCoeff();

  std::vector<std::string> notes;
  if (curve.series_length > 0 && curve.series_length < reliable_length)
    notes.push_back("series has " + std::to_string(curve.series_length) +
                    " samples; R/S needs at least 200 elements (better more than 300)");
  if (!(fit.H > 0.0 && fit.H < 1.0))
    notes.push_back("estimated H = " + std::to_string(fit.H) + " lies outside (0, 1)");
  if (!notes.empty()) {
    std::string joined = notes.front();
    for (std::size_t i = 1; i < notes.size(); ++i) joined += "; " + notes[i];
    fit.warning = joined;
  }
  return fit;
}

HurstFit estimate_hurst(const TimeSeries& series) { return fit_hurst(rs_curve(series)); }

std::optional<RegimeBreak> find_regime_break(const std::vector<Eigen::Index>& prefix_lengths,
                                             const Eigen::VectorXd& H, double threshold) {
  if (static_cast<Eigen::Index>(prefix_lengths.size()) != H.size())
    throw Error("trajectory lengths differ");
  std::optional<RegimeBreak> best;
  for (Eigen::Index i = 1; i < H.size(); ++i) {
    const double drop = H[i - 1] - H[i];
    if (drop > threshold && (!best || drop > best->drop))
      best = RegimeBreak{prefix_lengths[static_cast<std::size_t>(i)], drop};
  }
  return best;
}

RollingHurst rolling_hurst(const TimeSeries& series, Eigen::Index min_prefix, double threshold) {
  const Eigen::Index n = series.size();
  if (min_prefix < min_curve_length) throw Error("min_prefix must be at least 64");
  if (n < min_prefix) throw Error("series is shorter than min_prefix");

  RollingHurst out;
  const Eigen::Index points = n - min_prefix + 1;
  out.prefix_lengths.resize(static_cast<std::size_t>(points));
  out.H.resize(points);
  parallel_for(static_cast<std::size_t>(points), [&](std::size_t i) {
    const Eigen::Index t = min_prefix + static_cast<Eigen::Index>(i);
    out.prefix_lengths[i] = t;
    out.H[static_cast<Eigen::Index>(i)] = estimate_hurst(series.slice(0, t)).H;
  });
  out.regime_break = find_regime_break(out.prefix_lengths, out.H, threshold);
  return out;
}

} // namespace streamlens
