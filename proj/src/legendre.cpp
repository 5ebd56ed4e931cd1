#include "streamlens/multifractal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace streamlens {

double MultifractalSpectrum::h_min() const {
  if (points.empty()) throw Error("empty spectrum");
  double v = points.front().h;
  for (const auto& p : points) v = std::min(v, p.h);
  return v;
}

double MultifractalSpectrum::h_max() const {
  if (points.empty()) throw Error("empty spectrum");
  double v = points.front().h;
  for (const auto& p : points) v = std::max(v, p.h);
  return v;
}

double MultifractalSpectrum::width(double min_d) const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& p : points) {
    if (p.d < min_d) continue;
    lo = std::min(lo, p.h);
    hi = std::max(hi, p.h);
  }
  return hi >= lo ? hi - lo : 0.0;
}

double MultifractalSpectrum::concavity_defect() const {
  std::vector<SpectrumPoint> sorted = points;
  std::sort(sorted.begin(), sorted.end(), [](const SpectrumPoint& a, const SpectrumPoint& b) { return a.h < b.h; });
  double worst = 0.0;
  const std::size_t n = sorted.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 2; k < n; ++k) {
      const double span = sorted[k].h - sorted[i].h;
      if (!(span > 0.0)) continue;
      for (std::size_t j = i + 1; j < k; ++j) {
        const double t = (sorted[j].h - sorted[i].h) / span;
        const double chord = sorted[i].d + t * (sorted[k].d - sorted[i].d);
        worst = std::max(worst, chord - sorted[j].d);
      }
    }
  }
  return worst;
}

MultifractalSpectrum legendre_spectrum(const ScalingFit& fit, Convention convention,
                                       SpectrumMethod method, int resolution) {
  const Eigen::VectorXd& q = fit.q;
  const Eigen::VectorXd& tau = fit.tau;
  const Eigen::Index n = q.size();
  if (n < 5 || tau.size() != n) throw Error("Legendre transform needs tau on at least 5 q points");
  if (!tau.allFinite()) throw Error("non-finite tau values");
  if (resolution < 2) throw Error("spectrum resolution must be at least 2");

  // Finite-difference slopes of tau give the h range.
  Eigen::VectorXd slopes(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index lo = std::max<Eigen::Index>(i - 1, 0);
    const Eigen::Index hi = std::min<Eigen::Index>(i + 1, n - 1);
    slopes[i] = (tau[hi] - tau[lo]) / (q[hi] - q[lo]);
  }
  const double h_lo = slopes.minCoeff();
  const double h_hi = slopes.maxCoeff();
  const double offset = convention == Convention::normalized ? 1.0 : 0.0;

  auto point_at = [&](double h) {
    SpectrumPoint p;
    p.h = h;
    p.d = std::numeric_limits<double>::infinity();
    Eigen::Index arg = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double v = offset - tau[i] + h * q[i];
      if (v < p.d) {
        p.d = v;
        arg = i;
      }
    }
    p.q = q[arg];
    // Ties count: at the ends of the h range the last two q values share the minimum.
    const double tol = 1e-12 * (1.0 + std::abs(p.d));
    p.boundary_limited = offset - tau[0] + h * q[0] <= p.d + tol || offset - tau[n - 1] + h * q[n - 1] <= p.d + tol;
    return p;
  };

  MultifractalSpectrum spectrum;
  spectrum.method = method;
  if (h_hi - h_lo <= 1e-12 * (1.0 + std::abs(h_lo))) {
    // A linear tau has a one-point spectrum; every q attains the minimum.
    SpectrumPoint p = point_at(0.5 * (h_lo + h_hi));
    p.boundary_limited = false;
    spectrum.points.push_back(p);
    return spectrum;
  }
  spectrum.points.reserve(static_cast<std::size_t>(resolution));
  for (int k = 0; k < resolution; ++k)
    spectrum.points.push_back(point_at(h_lo + (h_hi - h_lo) * k / (resolution - 1)));
  return spectrum;
}

} // namespace streamlens
