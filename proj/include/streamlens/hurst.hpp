#ifndef STREAMLENS_HURST_HPP
#define STREAMLENS_HURST_HPP

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

#include "streamlens/core.hpp"

namespace streamlens {

struct RescaledRange {
  double range = 0.0; ///< max - min of the cumulative mean deviations
  double std_dev = 0.0; ///< divisor T
  double ratio() const { return range / std_dev; }
};

/// R and S of one segment. Throws "zero variance" for a constant segment.
RescaledRange rescaled_range(const Eigen::Ref<const Eigen::VectorXd>& segment);

/// Mean R/S over non-overlapping blocks, per window size n.
struct RSCurve {
  Eigen::VectorXi window_sizes;
  Eigen::VectorXd rs;
  Eigen::VectorXi counts; ///< blocks averaged (constant blocks are skipped)
  Eigen::Index series_length = 0;
};

/// About 20 log-spaced integer sizes on [8, T/2].
Eigen::VectorXi default_window_sizes(Eigen::Index length);

RSCurve rs_curve(const TimeSeries& series, const std::optional<Eigen::VectorXi>& window_sizes = {});

struct HurstFit {
  double H = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int n_min = 0;
  int n_max = 0;
  std::optional<std::string> warning;

  /// The power-law reading R/S = (n/2)^H, for display.
  double power_law(double n) const;
};

/// Least squares on (log n, log R/S). Warns for series shorter than 200
/// samples and for H outside (0, 1).
HurstFit fit_hurst(const RSCurve& curve);

/// Convenience: rs_curve with default sizes followed by fit_hurst.
HurstFit estimate_hurst(const TimeSeries& series);

struct RegimeBreak {
  Eigen::Index time = 0; ///< prefix length at which H dropped
  double drop = 0.0;     ///< H(t-1) - H(t), positive
};

struct RollingHurst {
  std::vector<Eigen::Index> prefix_lengths;
  Eigen::VectorXd H;
  std::optional<RegimeBreak> regime_break;
};

/// Largest single-step decrease of an H trajectory if it exceeds `threshold`.
std::optional<RegimeBreak> find_regime_break(const std::vector<Eigen::Index>& prefix_lengths,
                                             const Eigen::VectorXd& H, double threshold);

/// H(t) for every prefix length t = min_prefix..T.
RollingHurst rolling_hurst(const TimeSeries& series, Eigen::Index min_prefix = 64,
                           double threshold = 0.05);

} // namespace streamlens

#endif
