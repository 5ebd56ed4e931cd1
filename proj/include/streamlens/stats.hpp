#ifndef STREAMLENS_STATS_HPP
#define STREAMLENS_STATS_HPP

#include <Eigen/Core>

#include <optional>

#include "streamlens/core.hpp"

namespace streamlens {

struct Moments {
  double mean = 0.0;
  /// Divisor T (biased).
  double variance = 0.0;
};

Moments sample_moments(const TimeSeries& series);

enum class CorrelationKind { auto_, cross };

/// `none` leaves covariances as they are. `standard` divides by s_x * s_y,
/// `lag_zero` by the lag-0 cross-covariance.
enum class Normalization { none, standard, lag_zero };

struct CorrelationFunction {
  Eigen::VectorXi lags;
  Eigen::VectorXd values;
  CorrelationKind kind = CorrelationKind::auto_;
  Normalization normalization = Normalization::none;

  /// Value at a given lag; throws when the lag is out of range.
  double at(int lag) const;
};

/// floor(T / 4)
int default_max_lag(Eigen::Index length);

/// Biased autocovariance (1/T) sum_{t<T-k} (x_t - mean)(x_{t+k} - mean) for k = 0..max_lag.
CorrelationFunction autocovariance(const TimeSeries& series, std::optional<int> max_lag = {});

/// Autocovariance divided by its lag-0 value. Throws "zero variance" on a constant series.
CorrelationFunction autocorrelation(const TimeSeries& series, std::optional<int> max_lag = {});

/// Cross-covariance over lags -max_lag..max_lag; negative lags swap the roles of x and y.
CorrelationFunction cross_covariance(const TimeSeries& x, const TimeSeries& y,
                                     std::optional<int> max_lag = {});

CorrelationFunction cross_correlation(const TimeSeries& x, const TimeSeries& y,
                                      std::optional<int> max_lag = {},
                                      Normalization normalization = Normalization::standard);

} // namespace streamlens

#endif
