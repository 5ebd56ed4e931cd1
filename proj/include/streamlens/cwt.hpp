#ifndef STREAMLENS_CWT_HPP
#define STREAMLENS_CWT_HPP

#include <Eigen/Core>

#include <optional>

#include "streamlens/core.hpp"
#include "streamlens/wavelet.hpp"

namespace streamlens {

/// CWT coefficients on a scale x location grid. Locations are the sample
/// indices 0..T-1, scales are in samples.
struct WaveletField {
  Eigen::VectorXd scales;        ///< strictly increasing, > 0
  Eigen::MatrixXcd coefficients; ///< scales x locations
  Wavelet wavelet{WaveletKind::mexican_hat};
  double step = 1.0;
  /// Per location, the largest scale whose wavelet support stays inside the
  /// series; coefficients above it are in the cone of influence.
  Eigen::VectorXd coi;

  Eigen::Index scale_count() const { return coefficients.rows(); }
  Eigen::Index location_count() const { return coefficients.cols(); }
  bool trusted(Eigen::Index scale_index, Eigen::Index location) const {
    return scales[scale_index] <= coi[location];
  }
};

/// `count` scales geometrically spaced on [min, max].
Eigen::VectorXd log_scales(double min, double max, Eigen::Index count);

/// 64 log-spaced scales on [2, T/4].
Eigen::VectorXd default_scales(Eigen::Index length);

/// Largest trusted scale per location for a series of the given length.
Eigen::VectorXd cone_of_influence(const Wavelet& wavelet, Eigen::Index length);

/// W(s, l) = (h / sqrt(s)) sum_t x_t conj(psi((t - l) / s)), zero padded
/// outside the series. Accepts real or complex samples.
WaveletField cwt(const Eigen::Ref<const Eigen::VectorXcd>& samples, const Wavelet& wavelet,
                 const Eigen::VectorXd& scales, double step = 1.0);

template <typename Derived>
WaveletField cwt(const Eigen::MatrixBase<Derived>& samples, const Wavelet& wavelet,
                 const Eigen::VectorXd& scales, double step = 1.0) {
  const Eigen::VectorXcd z = samples.template cast<std::complex<double>>();
  return cwt(Eigen::Ref<const Eigen::VectorXcd>(z), wavelet, scales, step);
}

WaveletField cwt(const TimeSeries& series, const Wavelet& wavelet,
                 const std::optional<Eigen::VectorXd>& scales = {});

enum class ScalogramKind { energy, modulus };

/// |W|^2 (energy) or |W| per coefficient.
Eigen::MatrixXd scalogram(const WaveletField& field, ScalogramKind kind = ScalogramKind::energy);

} // namespace streamlens

#endif
