#ifndef STREAMLENS_REGRESSION_HPP
#define STREAMLENS_REGRESSION_HPP

#include <Eigen/Core>

#include <cmath>

#include "streamlens/error.hpp"

namespace streamlens {

template <typename Scalar>
struct LineFit {
  Scalar slope{};
  Scalar intercept{};
  Scalar r_squared{};
};

/// Ordinary least squares y = slope * x + intercept. r_squared is 1 for a
/// perfect fit and also when y is constant.
template <typename DerivedX, typename DerivedY>
auto fit_line(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y)
    -> LineFit<typename DerivedX::Scalar> {
  using Scalar = typename DerivedX::Scalar;
  const Eigen::Index n = x.size();
  if (n < 2 || y.size() != n) throw Error("line fit needs at least two paired points");
  const Scalar mx = x.mean();
  const Scalar my = y.mean();
  const auto dx = (x.array() - mx).eval();
  const auto dy = (y.array() - my).eval();
  const Scalar sxx = (dx * dx).sum();
  if (!(sxx > Scalar(0))) throw Error("line fit needs distinct abscissae");
  const Scalar sxy = (dx * dy).sum();
  const Scalar syy = (dy * dy).sum();
  LineFit<Scalar> fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > Scalar(0) ? (sxy * sxy) / (sxx * syy) : Scalar(1);
  return fit;
}

} // namespace streamlens

#endif
