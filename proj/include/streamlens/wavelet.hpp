#ifndef STREAMLENS_WAVELET_HPP
#define STREAMLENS_WAVELET_HPP

#include <complex>
#include <string>
#include <string_view>

namespace streamlens {

enum class WaveletKind { gaussian_wave, mexican_hat, haar, morlet };

/// Mother wavelet psi(t).
///
///   gaussian_wave  -t exp(-t^2/2)                      1 vanishing moment
///   mexican_hat    (1 - t^2) exp(-t^2/2)               2 vanishing moments
///   haar           +1 on [0, 1/2), -1 on [1/2, 1)      1 vanishing moment
///   morlet         pi^-1/4 exp(i w0 t) exp(-t^2/2)     complex, w0 = 6
///
/// The Gaussian family is treated as supported on [-8, 8], where the tails
/// are below 1e-12.
class Wavelet {
public:
  explicit Wavelet(WaveletKind kind) : kind_(kind) {}

  WaveletKind kind() const { return kind_; }
  std::string_view name() const;
  int vanishing_moments() const;
  bool is_complex() const { return kind_ == WaveletKind::morlet; }

  std::complex<double> operator()(double t) const;

  /// Effective support [lower, upper] in units of scale.
  double support_lower() const;
  double support_upper() const;

  /// Haar is integrated exactly over each sample cell instead of being point
  /// sampled, which keeps its discrete mean at zero for any scale.
  bool cell_integrated() const { return kind_ == WaveletKind::haar; }
  /// Antiderivative of psi from -infinity; only meaningful when cell_integrated().
  double antiderivative(double t) const;

  bool operator==(const Wavelet&) const = default;

  static constexpr double morlet_omega0 = 6.0;
  static constexpr double gaussian_support = 8.0;

private:
  WaveletKind kind_;
};

/// Accepts gaussian_wave, mexican_hat, haar, morlet.
Wavelet make_wavelet(std::string_view name);

} // namespace streamlens

#endif
