#include "streamlens/multifractal.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "streamlens/parallel.hpp"
#include "streamlens/regression.hpp"

namespace streamlens {
namespace {

Eigen::VectorXi log_spaced_sizes(int lo, int hi, int count) {
  std::set<int> sizes;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    sizes.insert(static_cast<int>(std::lround(std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))))));
  }
  Eigen::VectorXi out(static_cast<Eigen::Index>(sizes.size()));
  Eigen::Index i = 0;
  for (int s : sizes) out[i++] = s;
  return out;
}

// Orthonormal basis of degree <= order polynomials sampled on s points.
Eigen::MatrixXd polynomial_basis(int s, int order) {
  Eigen::MatrixXd v(s, order + 1);
  for (int i = 0; i < s; ++i) {
    const double u = s == 1 ? 0.0 : 2.0 * i / (s - 1) - 1.0;
    double p = 1.0;
    for (int k = 0; k <= order; ++k, p *= u) v(i, k) = p;
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(v);
  return qr.householderQ() * Eigen::MatrixXd::Identity(s, order + 1);
}

} // namespace

MfdfaResult mfdfa(const TimeSeries& series, const MfdfaOptions& options) {
  const Eigen::Index n = series.size();
  if (n < 512) throw Error("MF-DFA needs at least 512 samples");
  if (options.poly_order < 0) throw Error("polynomial order must be non-negative");
  const int lowest = options.poly_order + 2;
  const int highest = static_cast<int>(n / 4);

  Eigen::VectorXi scales;
  if (options.scales) {
    scales = *options.scales;
  } else {
    const int lo = std::max(options.min_scale, lowest);
    const int hi = options.max_scale.value_or(highest);
    if (hi <= lo) throw Error("empty MF-DFA scale range");
    scales = log_spaced_sizes(lo, hi, options.scale_count);
  }
  if (scales.size() < 3) throw Error("MF-DFA needs at least 3 scales");
  for (Eigen::Index i = 0; i < scales.size(); ++i) {
    if (scales[i] < lowest || scales[i] > highest)
      throw Error("MF-DFA scale " + std::to_string(scales[i]) + " outside [" +
                  std::to_string(lowest) + ", " + std::to_string(highest) + "]");
  }

  const Eigen::VectorXd y = profile(series, true).values();
  const Eigen::VectorXd& q = options.q;
  const Eigen::Index nq = q.size();
  if (nq < 5) throw Error("MF-DFA needs at least 5 q values");

  ScalingFit fit;
  fit.q = q;
  fit.convention = Convention::unnormalized;
  fit.log_scales = scales.cast<double>().array().log();
  fit.log_z.resize(nq, scales.size());
  std::vector<char> floored(static_cast<std::size_t>(scales.size()), 0);

  parallel_for(static_cast<std::size_t>(scales.size()), [&](std::size_t c) {
    const int s = scales[static_cast<Eigen::Index>(c)];
    const Eigen::Index segments = n / s;
    const Eigen::MatrixXd basis = polynomial_basis(s, options.poly_order);
    // Segments counted from the start and from the end.
    Eigen::ArrayXd f2(2 * segments);
    for (Eigen::Index v = 0; v < 2 * segments; ++v) {
      const Eigen::Index start = v < segments ? v * s : n - (v - segments + 1) * s;
      const Eigen::VectorXd seg = y.segment(start, s);
      const Eigen::VectorXd residual = seg - basis * (basis.transpose() * seg);
      f2[v] = residual.squaredNorm() / s;
    }
    if ((f2 == 0.0).all()) throw Error("zero fluctuation at every segment: the series is degenerate");
    const Eigen::ArrayXd f2_floored = f2.max(options.floor);
    if ((f2 < options.floor).any()) floored[c] = 1;
    for (Eigen::Index k = 0; k < nq; ++k) {
      double log_fq;
      if (q[k] == 0.0) {
        log_fq = 0.5 * f2_floored.log().mean();
      } else {
        const Eigen::ArrayXd& base = q[k] < 0.0 ? f2_floored : f2;
        // log of mean((F^2)^{q/2}), computed in the log domain.
        const Eigen::ArrayXd e = 0.5 * q[k] * base.log();
        const double top = e.maxCoeff();
        log_fq = (top + std::log((e - top).exp().mean())) / q[k];
      }
      fit.log_z(k, static_cast<Eigen::Index>(c)) = log_fq;
    }
  });
  if (std::find(floored.begin(), floored.end(), 1) != floored.end())
    fit.warnings.push_back("zero detrended variance floored at " + std::to_string(options.floor));

  fit.generalized_hurst.resize(nq);
  fit.tau.resize(nq);
  fit.r_squared.resize(nq);
  for (Eigen::Index k = 0; k < nq; ++k) {
    const auto line = fit_line(fit.log_scales, Eigen::VectorXd(fit.log_z.row(k).transpose()));
    fit.generalized_hurst[k] = line.slope;
    fit.r_squared[k] = line.r_squared;
    fit.tau[k] = q[k] * line.slope - 1.0;
  }

  MfdfaResult out;
  out.scales = scales;
  out.spectrum.method = SpectrumMethod::mfdfa;
  const Eigen::VectorXd& h = fit.generalized_hurst;
  for (Eigen::Index k = 0; k < nq; ++k) {
    const Eigen::Index lo = std::max<Eigen::Index>(k - 1, 0);
    const Eigen::Index hi = std::min<Eigen::Index>(k + 1, nq - 1);
    const double dh = (h[hi] - h[lo]) / (q[hi] - q[lo]);
    SpectrumPoint p;
    p.q = q[k];
    p.h = h[k] + q[k] * dh;
    p.d = q[k] * (p.h - h[k]) + 1.0;
    p.boundary_limited = k == 0 || k == nq - 1;
    out.spectrum.points.push_back(p);
  }
  out.fit = std::move(fit);
  return out;
}

} // namespace streamlens
