#ifndef STREAMLENS_DELTAL_HPP
#define STREAMLENS_DELTAL_HPP

#include <Eigen/Core>

#include <optional>

#include "streamlens/core.hpp"

namespace streamlens {

/// Deviations of a sequence from sliding local linear fits.
///
/// For a segment size s every run of s consecutive points (centered at t, or
/// with t-1 as the lower middle point when s is even) is fitted by least
/// squares. E(j, s) is the RMS deviation at point j over the m_j segments
/// that contain it and F(s) is the mean of E(., s) over all points.
struct DeltaLDiagram {
  Eigen::VectorXi sizes;
  Eigen::MatrixXd E; ///< points x sizes
  Eigen::VectorXd F;
};

struct DeltaLOptions {
  /// Analyze the accumulated (mean-centered) profile rather than raw values.
  bool on_profile = true;
  int min_size = 2;
  /// Defaults to floor(T/4).
  std::optional<int> max_size;
};

DeltaLDiagram delta_l(const TimeSeries& series, const DeltaLOptions& options = {});

/// m_j: how many full-length segments of the given size contain point j.
Eigen::VectorXi segment_coverage(Eigen::Index length, int size);

} // namespace streamlens

#endif
