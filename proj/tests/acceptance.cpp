// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Stochastic criteria use fixed seeds.

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

#include "cli_runner.hpp"
#include "oracles.hpp"
#include "streamlens/cwt.hpp"
#include "streamlens/deltal.hpp"
#include "streamlens/hurst.hpp"
#include "streamlens/io.hpp"
#include "streamlens/multifractal.hpp"
#include "streamlens/regression.hpp"
#include "streamlens/spectral.hpp"
#include "streamlens/stats.hpp"
#include "streamlens/synth.hpp"
#include "streamlens/xwt.hpp"

using namespace streamlens;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

Eigen::VectorXd cumsum(const Eigen::VectorXd& x, bool leading_zero = false) {
  Eigen::VectorXd out(x.size() + (leading_zero ? 1 : 0));
  double acc = 0;
  Eigen::Index o = 0;
  if (leading_zero) out[o++] = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) out[o++] = acc += x[i];
  return out;
}

TimeSeries white(Eigen::Index n, std::uint64_t seed) { return generate({GeneratorKind::white_noise, 0.5, 0.5, n, seed}); }
TimeSeries brownian(Eigen::Index n, std::uint64_t seed) { return generate({GeneratorKind::brownian, 0.5, 0.5, n, seed}); }
TimeSeries fgn(double h, Eigen::Index n, std::uint64_t seed) { return generate({GeneratorKind::fbm, h, 0.5, n, seed}); }

TimeSeries cascade_path(std::uint64_t seed, Eigen::Index n = 1 << 14, double p = 0.7) {
  return TimeSeries(cumsum(generate({GeneratorKind::binomial_cascade, 0.5, p, n, seed}).values(), true));
}

// -- 1 ----------------------------------------------------------------------
void correlation_oracle(Outcome& o) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> len(2, 512);
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(len(rng));
    const auto x = oracle::random_vector(n, rng), y = oracle::random_vector(n, rng);
    const TimeSeries tx(oracle::to_eigen(x)), ty(oracle::to_eigen(y));
    const int L = static_cast<int>(n) - 1;
    const auto ac = autocovariance(tx, L);
    const auto cc = cross_covariance(tx, ty, L);
    for (int k = 0; k <= L; ++k) worst = std::max(worst, std::abs(ac.at(k) - oracle::cross_cov(x, x, k)));
    for (int k = -L; k <= L; ++k) worst = std::max(worst, std::abs(cc.at(k) - oracle::cross_cov(x, y, k)));
  }
  o.detail << "max abs error " << fmt(worst) << " over 200 series; ";
  o.require(worst <= 1e-12, "oracle error <= 1e-12");
}

// -- 2 ----------------------------------------------------------------------
void spectral(Outcome& o) {
  std::mt19937_64 rng(77);
  double fft_err = 0, parseval = 0, inverse = 0;
  std::vector<std::size_t> sizes;
  for (std::size_t n = 64; n <= 4096; n *= 2) sizes.push_back(n);
  for (std::size_t n : {100, 360, 1000}) sizes.push_back(n);
  for (std::size_t n : sizes) {
    const auto v = oracle::random_vector(n, rng);
    const Eigen::VectorXd x = oracle::to_eigen(v);
    const Eigen::VectorXcd X = fft(x);
    std::vector<std::complex<double>> z(v.begin(), v.end());
    const auto ref = oracle::dft(z);
    double scale = 0, diff = 0;
    for (std::size_t m = 0; m < n; ++m) {
      scale = std::max(scale, std::abs(ref[m]));
      diff = std::max(diff, std::abs(X[static_cast<Eigen::Index>(m)] - ref[m]));
    }
    fft_err = std::max(fft_err, diff / scale);
    const double e_time = x.squaredNorm(), e_freq = X.squaredNorm() / static_cast<double>(n);
    parseval = std::max(parseval, std::abs(e_time - e_freq) / e_time);
    inverse = std::max(inverse, (ifft(X).real() - x).cwiseAbs().maxCoeff() / x.cwiseAbs().maxCoeff());
  }
  o.detail << "fft " << fmt(fft_err) << ", parseval " << fmt(parseval) << ", inverse " << fmt(inverse) << "; ";
  o.require(fft_err <= 1e-9, "fft vs dft");
  o.require(parseval <= 1e-9, "parseval");
  o.require(inverse <= 1e-9, "inverse round trip");

  const int n = 1024;
  Eigen::VectorXd x(n);
  for (int t = 0; t < n; ++t)
    x[t] = std::sin(2 * std::numbers::pi * 5 * t / n) + 0.6 * std::sin(2 * std::numbers::pi * 40 * t / n) +
           0.3 * std::sin(2 * std::numbers::pi * 130 * t / n);
  const Spectrum s = dft(TimeSeries(x), AmplitudeScaling::display);
  const double top = s.amplitudes.maxCoeff();
  std::vector<Eigen::Index> dominant;
  for (Eigen::Index m = 0; m < s.amplitudes.size(); ++m)
    if (s.amplitudes[m] > 0.1 * top) dominant.push_back(m);
  o.detail << "dominant bins:";
  for (auto m : dominant) o.detail << ' ' << m;
  o.detail << "; ";
  o.require(dominant == std::vector<Eigen::Index>{5, 40, 130}, "three dominant bins at 5, 40, 130");
}

// -- 3 ----------------------------------------------------------------------
void cwt_properties(Outcome& o) {
  const Eigen::Index n = 600, d = 17;
  const Eigen::VectorXd x = white(n, 31).values(), y = white(n, 32).values();
  const Eigen::VectorXd scales = log_scales(2, 40, 24);
  double lin = 0, shift = 0, annihil = 0;
  for (const char* name : {"gaussian_wave", "mexican_hat", "haar", "morlet"}) {
    const Wavelet w = make_wavelet(name);
    const auto fx = cwt(x, w, scales), fy = cwt(y, w, scales);
    const auto fz = cwt(Eigen::VectorXd(2.0 * x - 3.0 * y), w, scales);
    const double top = fz.coefficients.cwiseAbs().maxCoeff();
    lin = std::max(lin, (fz.coefficients - (2.0 * fx.coefficients - 3.0 * fy.coefficients)).cwiseAbs().maxCoeff() / top);

    {
      Eigen::VectorXd xs = Eigen::VectorXd::Zero(n);
      xs.tail(n - d) = x.head(n - d);
      const auto fs_ = cwt(xs, w, scales);
      double worst = 0;
      for (Eigen::Index k = 0; k < scales.size(); ++k)
        for (Eigen::Index l = d; l < n; ++l) {
          if (!fx.trusted(k, l - d) || !fs_.trusted(k, l)) continue;
          if (static_cast<double>(l - d) - w.support_lower() * scales[k] < 0) continue;
          worst = std::max(worst, std::abs(fs_.coefficients(k, l) - fx.coefficients(k, l - d)));
        }
      shift = std::max(shift, worst / fx.coefficients.cwiseAbs().maxCoeff());
    }

    // The Morlet wavelet is only approximately zero-mean.
    if (w.kind() != WaveletKind::morlet) {
      const auto fc = cwt(Eigen::VectorXd(Eigen::VectorXd::Constant(n, 4.5)), w, scales);
      for (Eigen::Index k = 0; k < scales.size(); ++k)
        for (Eigen::Index l = 0; l < n; ++l)
          if (fc.trusted(k, l)) annihil = std::max(annihil, std::abs(fc.coefficients(k, l)) / (4.5 * std::sqrt(scales[k])));
    }
  }
  o.detail << "linearity " << fmt(lin) << ", shift " << fmt(shift) << " of max|W|, constant " << fmt(annihil) << "; ";
  o.require(lin <= 1e-10, "linearity");
  o.require(shift <= 1e-6, "shift covariance");
  o.require(annihil < 1e-8, "constant annihilation");
}

// -- 4 ----------------------------------------------------------------------
void cross_identities(Outcome& o) {
  const TimeSeries x = white(512, 41), y = brownian(512, 42);
  double self = 0, modulus = 0, phase = 0, swap = 0;
  for (const char* name : {"morlet", "mexican_hat"}) {
    const Wavelet w = make_wavelet(name);
    const auto wx = cwt(x, w), wy = cwt(y, w);
    const auto c = crwt(wx, wy);
    const Eigen::MatrixXd energy = scalogram(wx);
    self = std::max(self, (crwt(wx, wx).values.real() - energy).cwiseAbs().maxCoeff() / energy.maxCoeff());
    const Eigen::MatrixXd prod = wx.coefficients.cwiseAbs().cwiseProduct(wy.coefficients.cwiseAbs());
    modulus = std::max(modulus, (c.values.cwiseAbs() - prod).cwiseAbs().maxCoeff() / prod.maxCoeff());
    swap = std::max(swap, (crwt(wy, wx).values - c.values.conjugate()).cwiseAbs().maxCoeff() / prod.maxCoeff());
    if (!w.is_complex()) continue;
    const auto p = phase_diff(wx, wy);
    for (Eigen::Index k = 0; k < c.values.rows(); ++k)
      for (Eigen::Index l = 0; l < c.values.cols(); ++l) {
        if (prod(k, l) < 1e-9 * prod.maxCoeff()) continue;
        phase = std::max(phase, std::abs(wrap_phase(std::arg(c.values(k, l)) + p.values(k, l).real())));
      }
  }
  o.detail << "self " << fmt(self) << ", modulus " << fmt(modulus) << ", phase " << fmt(phase) << ", swap " << fmt(swap)
           << "; ";
  o.require(self <= 1e-12, "crwt(W, W) = scalogram");
  o.require(modulus <= 1e-12, "|crwt| = |Wx||Wy|");
  o.require(phase <= 1e-9, "arg crwt = -phase difference");
  o.require(swap <= 1e-12, "Hermitian swap");
}

// -- 5 ----------------------------------------------------------------------
void deltal(Outcome& o) {
  DeltaLOptions raw;
  raw.on_profile = false;
  const Eigen::VectorXd line = 0.3 * Eigen::VectorXd::LinSpaced(4096, 0, 4095).array() - 2.0;
  const double zero = delta_l(TimeSeries(line), raw).F.cwiseAbs().maxCoeff();

  const Eigen::VectorXd walk = brownian(4096, 51).values();
  DeltaLOptions range;
  range.min_size = 8;
  range.max_size = 512;
  const DeltaLDiagram d = delta_l(TimeSeries(walk), range);
  const double slope = fit_line(Eigen::VectorXd(d.sizes.cast<double>().array().log()), Eigen::VectorXd(d.F.array().log())).slope;
  std::vector<double> lx, ly;
  for (int s = 8; s <= 512; s = s * 5 / 4 + 1) {
    lx.push_back(std::log(s));
    ly.push_back(std::log(oracle::dfa1(walk, s)));
  }
  const double dfa = fit_line(oracle::to_eigen(lx), oracle::to_eigen(ly)).slope;

  const Eigen::VectorXd x = white(4096, 52).values();
  const Eigen::VectorXd trend = 0.7 * Eigen::VectorXd::LinSpaced(4096, 0, 4095).array() + 5.0;
  const DeltaLDiagram a = delta_l(TimeSeries(x), raw);
  const DeltaLDiagram b = delta_l(TimeSeries(Eigen::VectorXd(x + trend)), raw);
  const double trend_err = (a.F - b.F).cwiseAbs().maxCoeff() / a.F.maxCoeff();

  o.detail << "linear F " << fmt(zero) << ", slope " << fmt(slope) << " (DFA-1 " << fmt(dfa) << "), trend " << fmt(trend_err)
           << "; ";
  o.require(zero <= 1e-10, "zero F on linear input");
  o.require(std::abs(slope - 1.5) <= 0.15, "slope 1.5 +- 0.15");
  o.require(std::abs(slope - dfa) <= 0.15, "slope agrees with DFA-1");
  o.require(trend_err <= 1e-9, "linear-trend invariance");
}

// -- 6 ----------------------------------------------------------------------
void hurst(Outcome& o) {
  std::vector<double> hw, h3, h7;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    hw.push_back(estimate_hurst(white(4096, 6000 + seed)).H);
    h3.push_back(estimate_hurst(fgn(0.3, 4096, 6100 + seed)).H);
    h7.push_back(estimate_hurst(fgn(0.7, 4096, 6200 + seed)).H);
  }
  const double mw = median(hw), m3 = median(h3), m7 = median(h7);
  o.detail << "median H: white " << fmt(mw) << ", fGn(0.3) " << fmt(m3) << ", fGn(0.7) " << fmt(m7) << "; ";
  o.require(std::abs(mw - 0.5) <= 0.08, "white noise 0.5 +- 0.08");
  o.require(std::abs(m3 - 0.3) <= 0.1, "fGn 0.3 +- 0.1");
  o.require(std::abs(m7 - 0.7) <= 0.1, "fGn 0.7 +- 0.1");

  const TimeSeries x = fgn(0.7, 2048, 66);
  const RSCurve base = rs_curve(x);
  double affine = 0;
  for (auto [a, b] : {std::pair{3.5, -2.0}, std::pair{-0.25, 100.0}, std::pair{1e3, 7.0}}) {
    const RSCurve t = rs_curve(x.with_values((a * x.values().array() + b).matrix()));
    affine = std::max(affine, ((t.rs - base.rs).array().abs() / base.rs.array()).maxCoeff());
  }
  o.detail << "affine " << fmt(affine) << "; ";
  o.require(affine <= 1e-12, "affine invariance");

  const HurstFit short_fit = estimate_hurst(white(150, 67));
  const bool warned = short_fit.warning && short_fit.warning->find("at least 200 elements") != std::string::npos;
  const bool quiet = !estimate_hurst(white(4096, 68)).warning.has_value();
  o.require(warned, "short-series warning");
  o.require(quiet, "no warning on long series");
}

// -- 7 ----------------------------------------------------------------------
void multifractal_tau(Outcome& o) {
  std::vector<double> dev;
  double identity = 0;
  for (std::uint64_t seed = 0; seed < 21; ++seed) {
    const OscillationFit f = oscillation_structure(brownian(1 << 14, 7000 + seed));
    double worst = 0;
    for (Eigen::Index i = 0; i < f.unnormalized.q.size(); ++i) {
      const double q = f.unnormalized.q[i];
      if (q < -2 - 1e-12 || q > 4 + 1e-12) continue;
      worst = std::max(worst, std::abs(f.unnormalized.tau[i] - (q / 2 - 1)));
    }
    dev.push_back(worst);
    identity = std::max(identity, ((f.normalized.tau - f.unnormalized.tau).array() - 1.0).abs().maxCoeff());
  }
  const double med = median(dev);
  o.detail << "median max|tau - (q/2 - 1)| " << fmt(med) << " over 21 seeds (range " << fmt(*std::min_element(dev.begin(), dev.end()))
           << ".." << fmt(*std::max_element(dev.begin(), dev.end())) << "), convention identity " << fmt(identity) << "; ";
  o.require(med <= 0.15, "Brownian tau within 0.15");
  o.require(identity <= 1e-9, "tau_norm - tau_unnorm = 1");
}

// -- 8 ----------------------------------------------------------------------
void multifractal_spectrum(Outcome& o) {
  const double h_lo = -std::log2(0.7), h_hi = -std::log2(0.3);

  const auto t0 = Clock::now();
  const TimeSeries path = cascade_path(0);
  const MultifractalSpectrum osc = legendre_spectrum(oscillation_structure(path).unnormalized, Convention::unnormalized);
  const WtmmResult first = wtmm_spectrum(path);
  const double runtime = seconds_since(t0);

  o.detail << "oscillation (" << fmt(osc.h_min()) << ", " << fmt(osc.h_max()) << ") concavity " << fmt(osc.concavity_defect())
           << "; ";
  o.require(std::abs(osc.h_min() - h_lo) <= 0.1 && std::abs(osc.h_max() - h_hi) <= 0.1, "oscillation endpoints");
  o.require(osc.concavity_defect() <= 0.05, "oscillation concavity");

  std::vector<double> lo, hi;
  double concavity = first.spectrum.concavity_defect();
  lo.push_back(first.spectrum.h_min());
  hi.push_back(first.spectrum.h_max());
  for (std::uint64_t seed = 1; seed < 21; ++seed) {
    const WtmmResult r = wtmm_spectrum(cascade_path(seed));
    lo.push_back(r.spectrum.h_min());
    hi.push_back(r.spectrum.h_max());
    concavity = std::max(concavity, r.spectrum.concavity_defect());
  }
  const double mlo = median(lo), mhi = median(hi);
  o.detail << "WTMM median (" << fmt(mlo) << ", " << fmt(mhi) << ") over 21 seeds, worst concavity " << fmt(concavity) << "; ";
  o.require(std::abs(mlo - h_lo) <= 0.1 && std::abs(mhi - h_hi) <= 0.1, "WTMM endpoints");
  o.require(concavity <= 0.05, "WTMM concavity");

  std::vector<double> w_osc, w_wtmm;
  for (std::uint64_t seed = 0; seed < 11; ++seed) {
    const TimeSeries fbm(cumsum(fgn(0.7, 1 << 14, 8000 + seed).values(), true));
    const auto so = legendre_spectrum(oscillation_structure(fbm).unnormalized, Convention::unnormalized);
    const auto sw = wtmm_spectrum(fbm).spectrum;
    w_osc.push_back(so.width());
    w_wtmm.push_back(sw.width());
  }
  const double wo = median(w_osc), ww = median(w_wtmm);
  o.detail << "fBm(0.7) median width: oscillation " << fmt(wo) << ", WTMM " << fmt(ww) << " over 11 seeds; cascade pipeline at 2^14 "
           << fmt(runtime, 3) << " s; ";
  o.require(wo < 0.25 && ww < 0.25, "fBm spectrum width < 0.25");
  o.require(runtime < 300, "runtime at 2^14");
}

// -- 9 ----------------------------------------------------------------------
void mfdfa_criterion(Outcome& o) {
  double worst = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = mfdfa(white(8192, 9000 + seed));
    for (Eigen::Index i = 0; i < r.fit.q.size(); ++i)
      if (std::abs(r.fit.q[i]) <= 4 + 1e-12) worst = std::max(worst, std::abs(r.fit.generalized_hurst[i] - 0.5));
  }
  const auto c = mfdfa(cascade_path(9));
  const double spread = c.fit.generalized_hurst[4] - c.fit.generalized_hurst[36];
  o.detail << "white noise max|h(q) - 0.5| " << fmt(worst) << " over 10 seeds, cascade h(-4) - h(4) = " << fmt(spread) << "; ";
  o.require(worst <= 0.1, "white noise flat");
  o.require(spread > 0.3, "cascade multifractal");
}

// -- 10 ---------------------------------------------------------------------
void wtmm_structure_criterion(Outcome& o) {
  const WtmmResult r = wtmm_spectrum(brownian(1 << 14, 10));
  const double fit_max = static_cast<double>(1 << 14) / 64.0;
  const Eigen::VectorXi counts = wtmm_line_counts(r.field, r.skeleton, 4.0, fit_max);
  const Eigen::Index q0 = 20;
  bool exact = counts.size() == r.fit.log_z.cols();
  for (Eigen::Index c = 0; exact && c < counts.size(); ++c) {
    const double z = std::exp(r.fit.log_z(q0, c));
    exact = std::round(z) == counts[c] && std::abs(z - counts[c]) <= 1e-9 * counts[c];
  }
  o.require(r.fit.q[q0] == 0.0, "q grid contains 0");
  o.require(exact, "Z(0, s) equals the live-line count");

  std::size_t points = 0, bad = 0;
  std::vector<std::vector<Eigen::Index>> maxima(static_cast<std::size_t>(r.field.scale_count()));
  for (Eigen::Index k = 0; k < r.field.scale_count(); ++k) maxima[static_cast<std::size_t>(k)] = find_modulus_maxima(r.field, k);
  for (const auto& line : r.skeleton.lines)
    for (const auto& p : line.points) {
      ++points;
      const auto& m = maxima[static_cast<std::size_t>(p.scale_index)];
      if (!std::binary_search(m.begin(), m.end(), p.location)) ++bad;
    }
  o.detail << r.skeleton.lines.size() << " lines, " << points << " points, " << bad << " not maxima; ";
  o.require(points > 0 && bad == 0, "skeleton points are modulus maxima");

  Eigen::VectorXd spike = Eigen::VectorXd::Zero(2048);
  spike[1000] = 1.0;
  const Skeleton sk = build_skeleton(cwt(spike, make_wavelet("mexican_hat"), log_scales(1, 64, 40)));
  Eigen::Index far = 0;
  for (const auto& line : sk.lines) far = std::max(far, std::abs(line.points.back().location - 1000));
  o.detail << "spike lines end within " << far << " samples; ";
  o.require(!sk.lines.empty() && far <= 2, "spike convergence");
}

// -- 11 ---------------------------------------------------------------------
void holder(Outcome& o) {
  const int n = 4096, c = 2048;
  Eigen::VectorXd cusp(n), step(n), smooth(n);
  for (int i = 0; i < n; ++i) {
    cusp[i] = std::sqrt(std::abs(i - c) / double(n));
    step[i] = i >= c ? 1.0 : 0.0;
    smooth[i] = std::sin(2 * std::numbers::pi * i / 1024.0);
  }
  const Eigen::VectorXd s = log_scales(4, 64, 8);
  for (const char* name : {"mexican_hat", "gaussian_wave"}) {
    const auto h = holder_at_point(cwt(cusp, make_wavelet(name), s), c);
    o.detail << name << " cusp " << fmt(h.h) << "; ";
    o.require(std::abs(h.h - 0.5) <= 0.1 && !h.moment_saturated, std::string("cusp ") + name);
  }
  for (const char* name : {"mexican_hat", "gaussian_wave", "haar"}) {
    const auto h = holder_at_point(cwt(step, make_wavelet(name), s), c);
    o.detail << name << " step " << fmt(h.h) << "; ";
    o.require(std::abs(h.h) <= 0.1, std::string("step ") + name);
  }
  for (const char* name : {"haar", "gaussian_wave", "mexican_hat"}) {
    const Wavelet w = make_wavelet(name);
    const auto h = holder_at_point(cwt(smooth, w, s), 1500);
    o.detail << name << " smooth " << fmt(h.h) << (h.moment_saturated ? " (saturated)" : "") << "; ";
    o.require(h.moment_saturated, std::string("saturation flag ") + name);
  }
}

// -- 12 ---------------------------------------------------------------------
void cli_determinism(Outcome& o) {
  const fs::path dir = cli::fresh_dir("streamlens_acceptance_cli");
  o.require(cli::run(dir, {"synth", "--kind", "fbm", "--hurst", "0.7", "--length", "4096", "--seed", "3", "-o", "fbm.csv"}).code == 0,
            "synth fbm");
  o.require(cli::run(dir, {"synth", "--kind", "white_noise", "--length", "2048", "--seed", "4", "-o", "a.csv"}).code == 0, "synth a");
  o.require(cli::run(dir, {"synth", "--kind", "white_noise", "--length", "2048", "--seed", "5", "-o", "b.csv"}).code == 0, "synth b");
  o.require(cli::run(dir, {"synth", "--kind", "binomial_cascade", "--length", "4096", "-o", "c.csv"}).code == 0, "synth cascade");
  const std::vector<std::vector<std::string>> calls{
      {"acf", "a.csv", "--plot"},
      {"ccf", "a.csv", "b.csv", "--plot"},
      {"spectrum", "a.csv", "--plot"},
      {"gabor", "a.csv", "--location-step", "16", "--plot"},
      {"cwt", "a.csv", "--plot"},
      {"xwt", "a.csv", "b.csv", "--plot", "--arrows"},
      {"xwt", "a.csv", "b.csv", "--metric", "diffmod"},
      {"xwt", "a.csv", "b.csv", "--metric", "phase"},
      {"deltal", "a.csv", "--plot"},
      {"hurst", "fbm.csv", "--plot"},
      {"mf", "c.csv", "--plot"},
      {"mf", "fbm.csv", "--method", "mfdfa", "--plot"},
      {"mf", "c.csv", "--method", "wtmm", "--plot"},
      {"synth", "--kind", "brownian", "--length", "512", "--seed", "9", "-o", "synth.csv"},
  };
  std::size_t files = 0, tables = 0, mismatched = 0, unreadable = 0;
  for (std::size_t i = 0; i < calls.size(); ++i) {
    std::vector<fs::path> outs;
    for (const char* run : {"a", "b"}) {
      const fs::path out = "run_" + std::to_string(i) + "_" + run;
      auto args = calls[i];
      if (args[0] == "synth") args.back() = (out / "synth.csv").string();
      args.insert(args.end(), {"--out-dir", out.string()});
      const auto r = cli::run(dir, args);
      o.require(r.code == 0, calls[i][0] + " exit code");
      outs.push_back(dir / out);
    }
    for (const auto& e : fs::directory_iterator(outs[0])) {
      const auto name = e.path().filename();
      ++files;
      const std::string x = cli::slurp(outs[0] / name), y = cli::slurp(outs[1] / name);
      const bool same = name.extension() == ".svg" ? cli::strip_version(x) == cli::strip_version(y) : x == y;
      if (!same) ++mismatched;
      try {
        if (name.extension() == ".csv") {
          ++tables;
          if (calls[i][0] == "synth") (void)read_csv(outs[0] / name);
          else {
            const Table t = read_table(outs[0] / name);
            if (t.rows.rows() == 0 || static_cast<std::size_t>(t.rows.cols()) != t.header.size()) ++unreadable;
          }
        } else if (name.extension() == ".json" && !nlohmann::json::accept(x)) {
          ++unreadable;
        }
      } catch (const std::exception&) {
        ++unreadable;
      }
    }
  }
  o.detail << files << " files from " << calls.size() << " invocations, " << tables << " tables, " << mismatched << " differ, "
           << unreadable << " unreadable; ";
  o.require(mismatched == 0, "byte-identical reruns");
  o.require(unreadable == 0, "outputs read back");
}

struct Criterion {
  int id;
  const char* title;
  double budget_s; // 0 = none
  std::function<void(Outcome&)> run;
};

} // namespace

int main() {
  const std::vector<Criterion> all{
      {1, "correlation oracle equivalence", 10, correlation_oracle},
      {2, "spectral correctness", 30, spectral},
      {3, "CWT properties", 60, cwt_properties},
      {4, "cross-wavelet identities", 0, cross_identities},
      {5, "delta-L", 60, deltal},
      {6, "Hurst R/S", 300, hurst},
      {7, "multifractal tau", 0, multifractal_tau},
      {8, "multifractal spectrum", 0, multifractal_spectrum},
      {9, "MF-DFA", 0, mfdfa_criterion},
      {10, "WTMM structure", 0, wtmm_structure_criterion},
      {11, "pointwise Holder", 0, holder},
      {12, "CLI determinism", 0, cli_determinism},
  };
  int failures = 0;
  for (const auto& c : all) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "[exception: " << e.what() << "] ";
    }
    const double elapsed = seconds_since(t0);
    if (c.budget_s > 0) o.require(elapsed < c.budget_s, "runtime < " + fmt(c.budget_s) + " s");
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s(%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.str().c_str(), elapsed);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failures, all.size());
  return failures == 0 ? 0 : 1;
}
