#include "streamlens/stats.hpp"

#include <cmath>
#include <string>

namespace streamlens {
namespace {

int checked_max_lag(Eigen::Index length, std::optional<int> max_lag) {
  const int lag = max_lag.value_or(default_max_lag(length));
  if (lag < 0) throw Error("max_lag must be non-negative");
  if (lag >= length)
    throw Error("max_lag " + std::to_string(lag) + " must be smaller than the series length " +
                std::to_string(length));
  return lag;
}

// (1/T) sum_{t=0}^{T-k-1} a_t b_{t+k} on already centered inputs.
double lagged_product(const Eigen::VectorXd& a, const Eigen::VectorXd& b, int k) {
  const Eigen::Index n = a.size() - k;
  return a.head(n).dot(b.segment(k, n)) / static_cast<double>(a.size());
}

} // namespace

double CorrelationFunction::at(int lag) const {
  for (Eigen::Index i = 0; i < lags.size(); ++i) {
    if (lags[i] == lag) return values[i];
  }
  throw Error("lag " + std::to_string(lag) + " not present");
}

Moments sample_moments(const TimeSeries& series) {
  const Eigen::VectorXd& x = series.values();
  Moments m;
  m.mean = x.mean();
  m.variance = (x.array() - m.mean).square().mean();
  return m;
}

int default_max_lag(Eigen::Index length) { return static_cast<int>(length / 4); }

CorrelationFunction autocovariance(const TimeSeries& series, std::optional<int> max_lag) {
  const int lag = checked_max_lag(series.size(), max_lag);
  const Eigen::VectorXd d = series.values().array() - series.values().mean();
  CorrelationFunction out;
  out.kind = CorrelationKind::auto_;
  out.lags = Eigen::VectorXi::LinSpaced(lag + 1, 0, lag);
  out.values.resize(lag + 1);
  for (int k = 0; k <= lag; ++k) out.values[k] = lagged_product(d, d, k);
  return out;
}

CorrelationFunction autocorrelation(const TimeSeries& series, std::optional<int> max_lag) {
  auto acf = autocovariance(series, max_lag);
  const double gamma0 = acf.values[0];
  if (!(gamma0 > 0.0)) throw Error("zero variance");
  acf.values /= gamma0;
  acf.values[0] = 1.0;
  acf.normalization = Normalization::standard;
  return acf;
}

CorrelationFunction cross_covariance(const TimeSeries& x, const TimeSeries& y,
                                     std::optional<int> max_lag) {
  if (x.size() != y.size())
    throw Error("series lengths differ: " + std::to_string(x.size()) + " vs " +
                std::to_string(y.size()));
  const int lag = checked_max_lag(x.size(), max_lag);
  const Eigen::VectorXd dx = x.values().array() - x.values().mean();
  const Eigen::VectorXd dy = y.values().array() - y.values().mean();
  CorrelationFunction out;
  out.kind = CorrelationKind::cross;
  out.lags = Eigen::VectorXi::LinSpaced(2 * lag + 1, -lag, lag);
  out.values.resize(2 * lag + 1);
  for (int k = -lag; k <= lag; ++k)
    out.values[k + lag] = k >= 0 ? lagged_product(dx, dy, k) : lagged_product(dy, dx, -k);
  return out;
}

CorrelationFunction cross_correlation(const TimeSeries& x, const TimeSeries& y,
                                      std::optional<int> max_lag, Normalization normalization) {
  auto ccf = cross_covariance(x, y, max_lag);
  ccf.normalization = normalization;
  double denominator = 1.0;
  switch (normalization) {
  case Normalization::none:
    return ccf;
  case Normalization::standard:
    denominator = std::sqrt(sample_moments(x).variance * sample_moments(y).variance);
    break;
  case Normalization::lag_zero:
    denominator = ccf.at(0);
    break;
  }
  if (denominator == 0.0 || !std::isfinite(denominator)) throw Error("zero denominator");
  ccf.values /= denominator;
  return ccf;
}

} // namespace streamlens
