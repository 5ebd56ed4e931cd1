#ifndef STREAMLENS_SPECTRAL_HPP
#define STREAMLENS_SPECTRAL_HPP

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

#include "streamlens/core.hpp"

namespace streamlens {

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

constexpr bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

/// Direct O(N^2) transform X_m = sum_t x_t exp(sign * i 2 pi m t / N).
template <typename Scalar>
ComplexVector<Scalar> direct_dft(const ComplexVector<Scalar>& x, int sign = -1) {
  const Eigen::Index n = x.size();
  ComplexVector<Scalar> out(n);
  const Scalar base = Scalar(sign) * Scalar(2) * std::numbers::pi_v<Scalar> / Scalar(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    std::complex<Scalar> acc(0);
    for (Eigen::Index t = 0; t < n; ++t) {
      // Reduce m*t mod n first so the twiddle angle stays small.
      const auto k = static_cast<Scalar>((m * t) % n);
      acc += x[t] * std::polar(Scalar(1), base * k);
    }
    out[m] = acc;
  }
  return out;
}

/// In-place iterative radix-2 transform; n must be a power of two.
template <typename Scalar>
void radix2_fft_inplace(ComplexVector<Scalar>& a, int sign = -1) {
  const Eigen::Index n = a.size();
  for (Eigen::Index i = 1, j = 0; i < n; ++i) {
    Eigen::Index bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (Eigen::Index len = 2; len <= n; len <<= 1) {
    const Scalar angle = Scalar(sign) * Scalar(2) * std::numbers::pi_v<Scalar> / Scalar(len);
    const Eigen::Index half = len / 2;
    // Twiddles are evaluated directly rather than by repeated multiplication.
    ComplexVector<Scalar> w(half);
    for (Eigen::Index k = 0; k < half; ++k) w[k] = std::polar(Scalar(1), angle * Scalar(k));
    for (Eigen::Index i = 0; i < n; i += len) {
      for (Eigen::Index k = 0; k < half; ++k) {
        const auto u = a[i + k];
        const auto v = a[i + k + half] * w[k];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

/// Forward transform, unnormalized, kernel exp(-i 2 pi m t / N). Power-of-two
/// lengths use the radix-2 path, anything else the direct definition.
template <typename Derived>
auto fft(const Eigen::MatrixBase<Derived>& x) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  ComplexVector<Real> a = x.template cast<std::complex<Real>>();
  if (!is_power_of_two(a.size())) return direct_dft<Real>(a, -1);
  radix2_fft_inplace<Real>(a, -1);
  return a;
}

/// Inverse transform carrying the 1/N factor.
template <typename Derived>
auto ifft(const Eigen::MatrixBase<Derived>& x) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  ComplexVector<Real> a = x.template cast<std::complex<Real>>();
  if (is_power_of_two(a.size())) radix2_fft_inplace<Real>(a, +1);
  else a = direct_dft<Real>(a, +1);
  return ComplexVector<Real>(a / Real(a.size()));
}

/// One-sided spectrum, bins m = 0..floor(N/2).
struct Spectrum {
  Eigen::VectorXd frequencies; ///< m / (N h), cycles per unit time
  Eigen::VectorXd amplitudes;
  Eigen::VectorXd phases; ///< in (-pi, pi]
};

enum class AmplitudeScaling {
  raw,    ///< |X_m|
  display ///< 2|X_m|/N, so a unit sine reads 1
};

Spectrum dft(const TimeSeries& series, AmplitudeScaling scaling = AmplitudeScaling::raw);

struct GaborField {
  Eigen::VectorXd frequencies;
  Eigen::VectorXd locations; ///< sample indices
  double window_width = 0.0;  ///< in samples
  Eigen::MatrixXcd coefficients; ///< frequencies x locations
};

/// G(nu, l, s) = h * sum_t x_t exp(-(t-l)^2 / s^2) exp(-i 2 pi nu t h), with t
/// and l in samples and nu in cycles per unit time.
GaborField gabor(const TimeSeries& series, const Eigen::VectorXd& frequencies,
                 const Eigen::VectorXd& locations, double window_width);

/// DFT bin frequencies, every sample as a location and s = T/10.
GaborField gabor(const TimeSeries& series);

} // namespace streamlens

#endif
