#include "streamlens/cwt.hpp"

#include <cmath>
#include <string>

#include "streamlens/parallel.hpp"
#include "streamlens/spectral.hpp"

namespace streamlens {
namespace {

// Kernel k[m] for m in [first, first + size): the sampled (or cell-integrated)
// conjugate wavelet at offset m from the location.
struct Kernel {
  Eigen::Index first = 0;
  Eigen::VectorXcd taps;
};

Kernel make_kernel(const Wavelet& wavelet, double scale) {
  Kernel k;
  if (wavelet.cell_integrated()) {
    k.first = -1;
    const auto last = static_cast<Eigen::Index>(std::ceil(scale)) + 1;
    k.taps.resize(last - k.first + 1);
    for (Eigen::Index m = k.first; m <= last; ++m) {
      const double md = static_cast<double>(m);
      k.taps[m - k.first] = scale * (wavelet.antiderivative((md + 0.5) / scale) -
                                     wavelet.antiderivative((md - 0.5) / scale));
    }
    return k;
  }
  const auto lo = static_cast<Eigen::Index>(std::floor(wavelet.support_lower() * scale));
  const auto hi = static_cast<Eigen::Index>(std::ceil(wavelet.support_upper() * scale));
  k.first = lo;
  k.taps.resize(hi - lo + 1);
  for (Eigen::Index m = lo; m <= hi; ++m)
    k.taps[m - lo] = std::conj(wavelet(static_cast<double>(m) / scale));
  return k;
}

// Short kernels are summed directly.
constexpr Eigen::Index direct_kernel_limit = 48;

void correlate_direct(const Eigen::VectorXcd& x, const Kernel& k, Eigen::Ref<Eigen::VectorXcd> out) {
  const Eigen::Index n = x.size();
  const Eigen::Index taps = k.taps.size();
  for (Eigen::Index l = 0; l < n; ++l) {
    std::complex<double> acc(0.0);
    const Eigen::Index m_begin = std::max<Eigen::Index>(0, -(l + k.first));
    const Eigen::Index m_end = std::min<Eigen::Index>(taps, n - (l + k.first));
    for (Eigen::Index m = m_begin; m < m_end; ++m) acc += x[l + k.first + m] * k.taps[m];
    out[l] = acc;
  }
}

// W(l) = sum_m x[l + m] k[m] = (x * g)(l) with g[j] = k[-j]; the linear
// convolution fits in the padded length without wrap-around.
void correlate_fft(const Eigen::VectorXcd& x, const Kernel& k, Eigen::Ref<Eigen::VectorXcd> out) {
  const Eigen::Index n = x.size();
  const Eigen::Index taps = k.taps.size();
  Eigen::Index padded = 1;
  while (padded < n + taps) padded <<= 1;

  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(padded);
  a.head(n) = x;
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(padded);
  for (Eigen::Index i = 0; i < taps; ++i) {
    const Eigen::Index m = k.first + i;
    g[((-m) % padded + padded) % padded] = k.taps[i];
  }
  radix2_fft_inplace<double>(a, -1);
  radix2_fft_inplace<double>(g, -1);
  a.array() *= g.array();
  radix2_fft_inplace<double>(a, +1);
  out = a.head(n) / static_cast<double>(padded);
}

} // namespace

Eigen::VectorXd log_scales(double min, double max, Eigen::Index count) {
  if (!(min > 0.0) || !(max >= min) || count < 1) throw Error("invalid scale range");
  if (count == 1) return Eigen::VectorXd::Constant(1, min);
  Eigen::VectorXd s = Eigen::VectorXd::LinSpaced(count, std::log(min), std::log(max));
  return s.array().exp();
}

Eigen::VectorXd default_scales(Eigen::Index length) {
  return log_scales(2.0, std::max(2.0, static_cast<double>(length) / 4.0), 64);
}

Eigen::VectorXd cone_of_influence(const Wavelet& wavelet, Eigen::Index length) {
  Eigen::VectorXd coi(length);
  for (Eigen::Index l = 0; l < length; ++l) {
    const auto left = static_cast<double>(l);
    const auto right = static_cast<double>(length - 1 - l);
    if (wavelet.cell_integrated()) coi[l] = right / wavelet.support_upper();
    else coi[l] = std::min(left / -wavelet.support_lower(), right / wavelet.support_upper());
  }
  return coi;
}

WaveletField cwt(const Eigen::Ref<const Eigen::VectorXcd>& samples, const Wavelet& wavelet,
                 const Eigen::VectorXd& scales, double step) {
  const Eigen::Index n = samples.size();
  if (n < 8) throw Error("continuous wavelet transform needs at least 8 samples");
  if (scales.size() == 0) throw Error("empty scale grid");
  for (Eigen::Index i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0)) throw Error("non-positive scale " + std::to_string(scales[i]));
    if (scales[i] > static_cast<double>(n))
      throw Error("scale " + std::to_string(scales[i]) + " exceeds the series length");
    if (i > 0 && !(scales[i] > scales[i - 1])) throw Error("scales must be strictly increasing");
  }

  WaveletField field;
  field.scales = scales;
  field.wavelet = wavelet;
  field.step = step;
  field.coi = cone_of_influence(wavelet, n);
  field.coefficients.resize(scales.size(), n);

  const Eigen::VectorXcd x = samples;
  std::vector<Eigen::VectorXcd> rows(static_cast<std::size_t>(scales.size()));
  parallel_for(rows.size(), [&](std::size_t i) {
    const double s = scales[static_cast<Eigen::Index>(i)];
    const Kernel k = make_kernel(wavelet, s);
    Eigen::VectorXcd row(n);
    if (k.taps.size() <= direct_kernel_limit) correlate_direct(x, k, row);
    else correlate_fft(x, k, row);
    rows[i] = row * (step / std::sqrt(s));
  });
  for (std::size_t i = 0; i < rows.size(); ++i)
    field.coefficients.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return field;
}

WaveletField cwt(const TimeSeries& series, const Wavelet& wavelet,
                 const std::optional<Eigen::VectorXd>& scales) {
  const Eigen::VectorXd grid = scales ? *scales : default_scales(series.size());
  return cwt(series.values(), wavelet, grid, series.step());
}

Eigen::MatrixXd scalogram(const WaveletField& field, ScalogramKind kind) {
  if (kind == ScalogramKind::modulus) return field.coefficients.cwiseAbs();
  return field.coefficients.cwiseAbs2();
}

} // namespace streamlens
