#include "streamlens/multifractal.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "streamlens/regression.hpp"

namespace streamlens {

Eigen::VectorXd default_q_grid() { return Eigen::VectorXd::LinSpaced(41, -5.0, 5.0); }

namespace {

// log sum_i exp(v_i), stable for widely spread exponents.
double log_sum_exp(const Eigen::ArrayXd& v) {
  const double top = v.maxCoeff();
  if (!std::isfinite(top)) return top;
  return top + std::log((v - top).exp().sum());
}

} // namespace

OscillationFit oscillation_structure(const TimeSeries& series, const OscillationOptions& options) {
  const Eigen::Index n = series.size();
  const int log2_n = static_cast<int>(std::floor(std::log2(static_cast<double>(n))));
  const int max_level = options.max_level.value_or(log2_n - 4);
  const int min_level = options.min_level;
  if (min_level < 0 || max_level - min_level + 1 < 3)
    throw Error("oscillation fit needs at least 3 dyadic levels, got " + std::to_string(min_level) +
                ".." + std::to_string(max_level));
  if (static_cast<double>(n) < std::ldexp(1.0, max_level + 2))
    throw Error("series of length " + std::to_string(n) + " is too short for level " +
                std::to_string(max_level));
  if (options.q.size() == 0) throw Error("empty q grid");

  const Eigen::VectorXd& x = series.values();
  const Eigen::Index intervals = n - 1;
  const Eigen::VectorXd& q = options.q;
  const int levels = max_level - min_level + 1;

  OscillationFit out;
  out.levels = Eigen::VectorXi::LinSpaced(levels, min_level, max_level);
  ScalingFit& un = out.unnormalized;
  un.q = q;
  un.convention = Convention::unnormalized;
  un.log_scales.resize(levels);
  un.log_z.resize(q.size(), levels);

  bool floored = false;
  for (int c = 0; c < levels; ++c) {
    const int j = out.levels[c];
    const Eigen::Index cells = Eigen::Index{1} << j;
    Eigen::ArrayXd ranges(cells);
    for (Eigen::Index i = 0; i < cells; ++i) {
      const Eigen::Index a = i * intervals / cells;
      const Eigen::Index b = (i + 1) * intervals / cells;
      const auto cell = x.segment(a, b - a + 1);
      ranges[i] = cell.maxCoeff() - cell.minCoeff();
    }
    if ((ranges == 0.0).all()) throw Error("degenerate ranges: the series is constant");
    const Eigen::ArrayXd log_r = ranges.max(0.0).log();
    const Eigen::ArrayXd log_r_floored = ranges.max(options.floor).log();
    if ((ranges < options.floor).any()) floored = true;

    un.log_scales[c] = -static_cast<double>(j) * std::log(2.0);
    for (Eigen::Index k = 0; k < q.size(); ++k) {
      if (q[k] == 0.0) un.log_z(k, c) = std::log(static_cast<double>(cells));
      else if (q[k] < 0.0) un.log_z(k, c) = log_sum_exp(q[k] * log_r_floored);
      else un.log_z(k, c) = log_sum_exp(q[k] * log_r);
    }
  }

  if (floored)
    un.warnings.push_back("zero ranges floored at " + std::to_string(options.floor) +
                          " for negative q");
  un.tau.resize(q.size());
  un.r_squared.resize(q.size());
  for (Eigen::Index k = 0; k < q.size(); ++k) {
    const auto line = fit_line(un.log_scales, Eigen::VectorXd(un.log_z.row(k).transpose()));
    un.tau[k] = line.slope;
    un.r_squared[k] = line.r_squared;
  }

  ScalingFit& nm = out.normalized;
  nm = un;
  nm.convention = Convention::normalized;
  for (int c = 0; c < levels; ++c)
    nm.log_z.col(c).array() -= static_cast<double>(out.levels[c]) * std::log(2.0);
  for (Eigen::Index k = 0; k < q.size(); ++k) {
    const auto line = fit_line(nm.log_scales, Eigen::VectorXd(nm.log_z.row(k).transpose()));
    nm.tau[k] = line.slope;
    nm.r_squared[k] = line.r_squared;
  }
  return out;
}

} // namespace streamlens
