#include "streamlens/spectral.hpp"

#include "streamlens/parallel.hpp"

namespace streamlens {

Spectrum dft(const TimeSeries& series, AmplitudeScaling scaling) {
  const Eigen::Index n = series.size();
  if (n < 2) throw Error("spectrum needs at least two samples");
  const Eigen::VectorXcd coeffs = fft(series.values());
  const Eigen::Index bins = n / 2 + 1;
  Spectrum s;
  s.frequencies = Eigen::VectorXd::LinSpaced(bins, 0.0, static_cast<double>(bins - 1)) /
                  (static_cast<double>(n) * series.step());
  s.amplitudes = coeffs.head(bins).cwiseAbs();
  if (scaling == AmplitudeScaling::display) s.amplitudes *= 2.0 / static_cast<double>(n);
  s.phases.resize(bins);
  for (Eigen::Index m = 0; m < bins; ++m) {
    double phase = std::arg(coeffs[m]);
    if (phase <= -std::numbers::pi) phase += 2.0 * std::numbers::pi;
    s.phases[m] = phase;
  }
  return s;
}

GaborField gabor(const TimeSeries& series, const Eigen::VectorXd& frequencies,
                 const Eigen::VectorXd& locations, double window_width) {
  if (!(window_width > 0.0)) throw Error("window width must be positive");
  if (frequencies.size() == 0 || locations.size() == 0)
    throw Error("empty frequency or location grid");

  const Eigen::VectorXd& x = series.values();
  const Eigen::Index n = x.size();
  const double h = series.step();
  const double two_pi = 2.0 * std::numbers::pi;

  GaborField field;
  field.frequencies = frequencies;
  field.locations = locations;
  field.window_width = window_width;
  field.coefficients.resize(frequencies.size(), locations.size());

  parallel_for(static_cast<std::size_t>(frequencies.size()), [&](std::size_t row) {
    const auto f = static_cast<Eigen::Index>(row);
    Eigen::VectorXcd modulated(n);
    for (Eigen::Index t = 0; t < n; ++t)
      modulated[t] = x[t] * std::polar(1.0, -two_pi * frequencies[f] * static_cast<double>(t) * h);
    for (Eigen::Index c = 0; c < locations.size(); ++c) {
      std::complex<double> acc(0.0);
      for (Eigen::Index t = 0; t < n; ++t) {
        const double u = (static_cast<double>(t) - locations[c]) / window_width;
        acc += modulated[t] * std::exp(-u * u);
      }
      field.coefficients(f, c) = acc * h;
    }
  });
  return field;
}

GaborField gabor(const TimeSeries& series) {
  const Eigen::Index n = series.size();
  const Eigen::Index bins = n / 2 + 1;
  Eigen::VectorXd freqs = Eigen::VectorXd::LinSpaced(bins, 0.0, static_cast<double>(bins - 1)) /
                          (static_cast<double>(n) * series.step());
  Eigen::VectorXd locs = Eigen::VectorXd::LinSpaced(n, 0.0, static_cast<double>(n - 1));
  return gabor(series, freqs, locs, static_cast<double>(n) / 10.0);
}

} // namespace streamlens
