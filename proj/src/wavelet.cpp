#include "streamlens/wavelet.hpp"

#include <cmath>
#include <numbers>

#include "streamlens/error.hpp"

namespace streamlens {

std::string_view Wavelet::name() const {
  switch (kind_) {
  case WaveletKind::gaussian_wave: return "gaussian_wave";
  case WaveletKind::mexican_hat: return "mexican_hat";
  case WaveletKind::haar: return "haar";
  case WaveletKind::morlet: return "morlet";
  }
  return "unknown";
}

int Wavelet::vanishing_moments() const { return kind_ == WaveletKind::mexican_hat ? 2 : 1; }

std::complex<double> Wavelet::operator()(double t) const {
  switch (kind_) {
  case WaveletKind::gaussian_wave: return -t * std::exp(-0.5 * t * t);
  case WaveletKind::mexican_hat: return (1.0 - t * t) * std::exp(-0.5 * t * t);
  case WaveletKind::haar:
    if (t >= 0.0 && t < 0.5) return 1.0;
    if (t >= 0.5 && t < 1.0) return -1.0;
    return 0.0;
  case WaveletKind::morlet: {
    const double envelope = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * t * t);
    return std::polar(envelope, morlet_omega0 * t);
  }
  }
  return 0.0;
}

double Wavelet::support_lower() const {
  return kind_ == WaveletKind::haar ? 0.0 : -gaussian_support;
}

double Wavelet::support_upper() const {
  return kind_ == WaveletKind::haar ? 1.0 : gaussian_support;
}

double Wavelet::antiderivative(double t) const {
  if (kind_ != WaveletKind::haar) throw Error("antiderivative is only tabulated for haar");
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return t < 0.5 ? t : 1.0 - t;
}

Wavelet make_wavelet(std::string_view name) {
  if (name == "gaussian_wave") return Wavelet(WaveletKind::gaussian_wave);
  if (name == "mexican_hat") return Wavelet(WaveletKind::mexican_hat);
  if (name == "haar") return Wavelet(WaveletKind::haar);
  if (name == "morlet") return Wavelet(WaveletKind::morlet);
  throw Error("unknown wavelet '" + std::string(name) + "'");
}

} // namespace streamlens
