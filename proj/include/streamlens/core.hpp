#ifndef STREAMLENS_CORE_HPP
#define STREAMLENS_CORE_HPP

#include <Eigen/Core>

#include <string>
#include <vector>

#include "streamlens/error.hpp"

namespace streamlens {

/// Equidistant real-valued samples x_0..x_{T-1} taken at start + i*step.
///
/// Immutable after construction. The constructor rejects empty input,
/// non-finite values and non-positive steps, so every analysis can assume
/// a valid series.
class TimeSeries {
public:
  explicit TimeSeries(Eigen::VectorXd values, double start = 0.0, double step = 1.0,
                      std::string label = {});

  const Eigen::VectorXd& values() const { return values_; }
  double start() const { return start_; }
  double step() const { return step_; }
  const std::string& label() const { return label_; }
  Eigen::Index size() const { return values_.size(); }

  double time_at(Eigen::Index i) const { return start_ + static_cast<double>(i) * step_; }

  /// Same grid and label, new values (validated).
  TimeSeries with_values(Eigen::VectorXd values) const;
  /// Samples [offset, offset + count) with the start time shifted accordingly.
  TimeSeries slice(Eigen::Index offset, Eigen::Index count) const;

private:
  Eigen::VectorXd values_;
  double start_;
  double step_;
  std::string label_;
};

/// Publication times of documents on the span [t0, t_end].
struct EventStream {
  std::vector<double> event_times;
  double t0 = 0.0;
  double t_end = 0.0;
};

/// Counts events per half-open bin [t0 + i*step, t0 + (i+1)*step). The series
/// has ceil((t_end - t0) / step) bins; an event exactly at t_end lands in the
/// last bin.
TimeSeries bin_events(const EventStream& stream, double step);

/// Accumulated sums y_t = sum_{k<=t} x_k, optionally of the mean-centered
/// series.
TimeSeries profile(const TimeSeries& series, bool center = true);

} // namespace streamlens

#endif
