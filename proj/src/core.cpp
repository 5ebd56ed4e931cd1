#include "streamlens/core.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace streamlens {

TimeSeries::TimeSeries(Eigen::VectorXd values, double start, double step, std::string label)
    : values_(std::move(values)), start_(start), step_(step), label_(std::move(label)) {
  if (values_.size() == 0) throw Error("time series is empty");
  if (!(step_ > 0.0) || !std::isfinite(step_)) throw Error("time series step must be positive");
  if (!std::isfinite(start_)) throw Error("time series start must be finite");
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]))
      throw Error("time series value at index " + std::to_string(i) + " is not finite");
  }
}

TimeSeries TimeSeries::with_values(Eigen::VectorXd values) const {
  return TimeSeries(std::move(values), start_, step_, label_);
}

TimeSeries TimeSeries::slice(Eigen::Index offset, Eigen::Index count) const {
  if (offset < 0 || count < 1 || offset + count > size()) throw Error("slice out of range");
  return TimeSeries(values_.segment(offset, count), time_at(offset), step_, label_);
}

TimeSeries bin_events(const EventStream& stream, double step) {
  if (!(step > 0.0)) throw Error("bin step must be positive");
  if (stream.event_times.empty()) throw Error("no events");
  if (!(stream.t_end > stream.t0)) throw Error("event span must satisfy t_end > t0");

  const auto& times = stream.event_times;
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw Error("unsorted events");
  }
  if (times.front() < stream.t0 || times.back() > stream.t_end)
    throw Error("event outside the declared span");

  const auto bins = static_cast<Eigen::Index>(std::ceil((stream.t_end - stream.t0) / step));
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(bins);
  for (double tau : times) {
    auto bin = static_cast<Eigen::Index>(std::floor((tau - stream.t0) / step));
    counts[std::min(bin, bins - 1)] += 1.0;
  }
  return TimeSeries(std::move(counts), stream.t0, step, "events");
}

TimeSeries profile(const TimeSeries& series, bool center) {
  const Eigen::VectorXd& x = series.values();
  const double mean = center ? x.mean() : 0.0;
  Eigen::VectorXd y(x.size());
  double acc = 0.0;
  for (Eigen::Index t = 0; t < x.size(); ++t) {
    acc += x[t] - mean;
    y[t] = acc;
  }
  return series.with_values(std::move(y));
}

} // namespace streamlens
