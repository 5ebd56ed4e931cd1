#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "streamlens/core.hpp"
#include "streamlens/cwt.hpp"
#include "streamlens/deltal.hpp"
#include "streamlens/error.hpp"
#include "streamlens/hurst.hpp"
#include "streamlens/io.hpp"
#include "streamlens/multifractal.hpp"
#include "streamlens/spectral.hpp"
#include "streamlens/stats.hpp"
#include "streamlens/svg.hpp"
#include "streamlens/synth.hpp"
#include "streamlens/xwt.hpp"

namespace fs = std::filesystem;
using namespace streamlens;

namespace {

constexpr int exit_data_error = 1;
constexpr int exit_usage_error = 2;

// Plain key=value lines belong to the subcommand being run; [section]
// headers still work as usual.
class SubcommandConfig : public CLI::ConfigINI {
public:
  explicit SubcommandConfig(std::string active) : active_(std::move(active)) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigINI::from_config(input);
    for (auto& item : items) {
      if (item.parents.empty() && !active_.empty() && item.name != "config") item.parents = {active_};
    }
    return items;
  }

private:
  std::string active_;
};

struct Common {
  fs::path out_dir = ".";
  bool plot = false;
  std::string column;
  std::optional<double> step;
  std::string format = "csv";
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out-dir", c.out_dir, "Directory for output files")->capture_default_str();
  sub->add_flag("--plot", c.plot, "Also write SVG plots");
  sub->add_option("--column", c.column, "Value column: header name or zero-based index (default: last)");
  sub->add_option("--step", c.step, "Sampling step, overriding the time column")->check(CLI::PositiveNumber);
  sub->add_option("--format", c.format, "Table output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

TimeSeries load(const fs::path& path, const Common& c) {
  CsvOptions o;
  if (!c.column.empty()) {
    if (c.column.find_first_not_of("0123456789") == std::string::npos) o.column_index = std::stoi(c.column);
    else o.column_name = c.column;
  }
  o.step = c.step;
  return read_csv(path, o);
}

void prepare(const Common& c) {
  std::error_code ec;
  fs::create_directories(c.out_dir, ec);
  if (ec) throw Error("cannot create output directory " + c.out_dir.string() + ": " + ec.message());
}

void emit(const Table& table, const Common& c, const std::string& stem) {
  if (c.format == "json") {
    const fs::path p = c.out_dir / (stem + ".json");
    std::ofstream out(p);
    if (!out) throw Error("cannot write " + p.string());
    out << to_json(table).dump(1) << '\n';
  } else {
    write_table(table, c.out_dir / (stem + ".csv"));
  }
}

void emit_plot(const Common& c, const std::string& stem, const std::string& document) {
  if (c.plot) svg::write(c.out_dir / (stem + ".svg"), document);
}

void warn(const std::string& text) { std::cerr << "warning: " << text << '\n'; }

Table two_columns(const std::string& a, const Eigen::VectorXd& x, const std::string& b, const Eigen::VectorXd& y) {
  Table t{{a, b}, Eigen::MatrixXd(x.size(), 2)};
  t.rows.col(0) = x;
  t.rows.col(1) = y;
  return t;
}

// Row key followed by the matrix; complex entries become re/im column pairs.
Table matrix_table(const std::string& key, const Eigen::VectorXd& keys, const Eigen::MatrixXcd& m, bool complex) {
  Table t;
  t.header.push_back(key);
  const Eigen::Index cols = m.cols();
  for (Eigen::Index l = 0; l < cols; ++l) {
    if (complex) {
      t.header.push_back("re_" + std::to_string(l));
      t.header.push_back("im_" + std::to_string(l));
    } else {
      t.header.push_back("v_" + std::to_string(l));
    }
  }
  t.rows.resize(m.rows(), 1 + (complex ? 2 : 1) * cols);
  t.rows.col(0) = keys;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index l = 0; l < cols; ++l) {
      if (complex) {
        t.rows(r, 1 + 2 * l) = m(r, l).real();
        t.rows(r, 2 + 2 * l) = m(r, l).imag();
      } else {
        t.rows(r, 1 + l) = m(r, l).real();
      }
    }
  }
  return t;
}

// "a:b:n"
std::tuple<double, double, int> parse_grid(const std::string& text, const std::string& flag) {
  double a = 0, b = 0;
  int n = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1 || !in.eof())
    throw CLI::ValidationError(flag, "expected min:max:count, got '" + text + "'");
  return {a, b, n};
}

Eigen::VectorXd log_grid(const std::string& text, const std::string& flag) {
  const auto [a, b, n] = parse_grid(text, flag);
  if (!(a > 0) || !(b > a)) throw CLI::ValidationError(flag, "scales need 0 < min < max");
  return log_scales(a, b, n);
}

Eigen::VectorXd linear_grid(const std::string& text, const std::string& flag) {
  const auto [a, b, n] = parse_grid(text, flag);
  if (n < 2 || !(b > a)) throw CLI::ValidationError(flag, "need min < max and count >= 2");
  return Eigen::VectorXd::LinSpaced(n, a, b);
}

Eigen::VectorXd times_of(const TimeSeries& s) {
  Eigen::VectorXd t(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) t[i] = s.time_at(i);
  return t;
}

svg::Heatmap field_heatmap(const std::string& title, const TimeSeries& series, const Eigen::VectorXd& scales,
                           const Eigen::MatrixXd& values) {
  svg::Heatmap h;
  h.title = title;
  h.x_label = "time";
  h.y_label = "scale (samples)";
  h.values = values;
  h.x_min = series.time_at(0);
  h.x_max = series.time_at(series.size() - 1);
  h.y = scales;
  h.log_y = true;
  return h;
}

// ---------------------------------------------------------------------------

struct AcfArgs {
  fs::path input;
  std::optional<int> max_lag;
  bool covariance = false;
  Common common;
};

int run_acf(const AcfArgs& a) {
  prepare(a.common);
  const TimeSeries x = load(a.input, a.common);
  const auto f = a.covariance ? autocovariance(x, a.max_lag) : autocorrelation(x, a.max_lag);
  emit(two_columns("lag", f.lags.cast<double>(), "value", f.values), a.common, "acf");
  svg::LinePlot p{a.covariance ? "Autocovariance" : "Autocorrelation", "lag", "value", false, false,
                  {{f.lags.cast<double>(), f.values, x.label(), true, false}}, {}};
  emit_plot(a.common, "acf", svg::render(p));
  return 0;
}

struct CcfArgs {
  fs::path x, y;
  std::optional<int> max_lag;
  std::string normalization = "standard";
  Common common;
};

int run_ccf(const CcfArgs& a) {
  prepare(a.common);
  const TimeSeries x = load(a.x, a.common);
  const TimeSeries y = load(a.y, a.common);
  const auto f = a.normalization == "none" ? cross_covariance(x, y, a.max_lag)
                 : a.normalization == "lag0" ? cross_correlation(x, y, a.max_lag, Normalization::lag_zero)
                                              : cross_correlation(x, y, a.max_lag, Normalization::standard);
  emit(two_columns("lag", f.lags.cast<double>(), "value", f.values), a.common, "ccf");
  svg::LinePlot p{"Cross-correlation " + x.label() + " / " + y.label(), "lag", "value", false, false,
                  {{f.lags.cast<double>(), f.values, "", true, false}}, {0.0}};
  emit_plot(a.common, "ccf", svg::render(p));
  return 0;
}

struct SpectrumArgs {
  fs::path input;
  std::string scaling = "raw";
  Common common;
};

int run_spectrum(const SpectrumArgs& a) {
  prepare(a.common);
  const TimeSeries x = load(a.input, a.common);
  const Spectrum s = dft(x, a.scaling == "display" ? AmplitudeScaling::display : AmplitudeScaling::raw);
  Table t{{"frequency", "amplitude", "phase"}, Eigen::MatrixXd(s.frequencies.size(), 3)};
  t.rows << s.frequencies, s.amplitudes, s.phases;
  emit(t, a.common, "spectrum");
  svg::LinePlot p{"Amplitude spectrum", "frequency", "amplitude", false, false,
                  {{s.frequencies, s.amplitudes, x.label(), false, false}}, {}};
  emit_plot(a.common, "spectrum", svg::render(p));
  return 0;
}

struct GaborArgs {
  fs::path input;
  std::optional<double> window;
  std::string frequencies;
  int location_step = 1;
  Common common;
};

int run_gabor(const GaborArgs& a) {
  prepare(a.common);
  const TimeSeries x = load(a.input, a.common);
  const Eigen::VectorXd nu = a.frequencies.empty() ? dft(x).frequencies : linear_grid(a.frequencies, "--frequencies");
  const Eigen::Index count = (x.size() + a.location_step - 1) / a.location_step;
  const Eigen::VectorXd loc = Eigen::VectorXd::LinSpaced(count, 0, static_cast<double>((count - 1) * a.location_step));
  const double s = a.window.value_or(static_cast<double>(x.size()) / 10.0);
  const GaborField g = gabor(x, nu, loc, s);
  emit(matrix_table("frequency", nu, g.coefficients, true), a.common, "gabor");
  if (a.common.plot) {
    svg::Heatmap h;
    h.title = "Gabor transform |G|, window " + format_number(s);
    h.x_label = "time";
    h.y_label = "frequency";
    h.values = g.coefficients.cwiseAbs();
    h.x_min = x.time_at(0);
    h.x_max = x.time_at(static_cast<Eigen::Index>(loc[count - 1]));
    h.y = nu;
    emit_plot(a.common, "gabor", svg::render(h));
  }
  return 0;
}

struct CwtArgs {
  fs::path input;
  std::string wavelet = "mexican_hat";
  std::string scales;
  Common common;
};

int run_cwt(const CwtArgs& a) {
  prepare(a.common);
  const TimeSeries x = load(a.input, a.common);
  const Wavelet w = make_wavelet(a.wavelet);
  const std::optional<Eigen::VectorXd> grid =
      a.scales.empty() ? std::nullopt : std::optional<Eigen::VectorXd>(log_grid(a.scales, "--scales"));
  const WaveletField f = cwt(x, w, grid);
  emit(matrix_table("scale", f.scales, f.coefficients, true), a.common, "cwt");
  Table coi{{"location", "time", "coi"}, Eigen::MatrixXd(x.size(), 3)};
  coi.rows << Eigen::VectorXd::LinSpaced(x.size(), 0, static_cast<double>(x.size() - 1)), times_of(x), f.coi;
  emit(coi, a.common, "coi");
  if (a.common.plot) {
    auto h = field_heatmap("Scalogram |W|, " + std::string(w.name()), x, f.scales, scalogram(f, ScalogramKind::modulus));
    h.coi = f.coi;
    emit_plot(a.common, "cwt", svg::render(h));
  }
  return 0;
}

struct XwtArgs {
  fs::path x, y;
  std::string wavelet = "morlet";
  std::string metric = "crwt";
  std::string scales;
  bool arrows = false;
  Common common;
};

int run_xwt(const XwtArgs& a) {
  prepare(a.common);
  const TimeSeries x = load(a.x, a.common);
  const TimeSeries y = load(a.y, a.common);
  if (x.size() != y.size()) throw Error("inputs differ in length: " + std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  const Wavelet w = make_wavelet(a.wavelet);
  const std::optional<Eigen::VectorXd> grid =
      a.scales.empty() ? std::nullopt : std::optional<Eigen::VectorXd>(log_grid(a.scales, "--scales"));
  const WaveletField wx = cwt(x, w, grid);
  const WaveletField wy = cwt(y, w, grid);
  const CrossField c = a.metric == "diffmod" ? diffmod(wx, wy) : a.metric == "phase" ? phase_diff(wx, wy) : crwt(wx, wy);
  emit(matrix_table("scale", c.scales, c.values, a.metric == "crwt"), a.common, "xwt");
  if (a.common.plot) {
    const Eigen::MatrixXd shown = a.metric == "phase" ? Eigen::MatrixXd(c.values.real()) : Eigen::MatrixXd(c.values.cwiseAbs());
    auto h = field_heatmap(a.metric + " " + x.label() + " / " + y.label(), x, c.scales, shown);
    h.coi = wx.coi;
    if (a.arrows && w.is_complex()) {
      const Eigen::Index stride_l = std::max<Eigen::Index>(1, x.size() / 32);
      const Eigen::Index stride_s = std::max<Eigen::Index>(1, c.scales.size() / 12);
      for (Eigen::Index k = 0; k < c.scales.size(); k += stride_s) {
        for (Eigen::Index l = stride_l / 2; l < x.size(); l += stride_l) {
          if (!wx.trusted(k, l)) continue;
          const double angle = wrap_phase(std::arg(wx.coefficients(k, l)) - std::arg(wy.coefficients(k, l)));
          h.arrows.push_back({x.time_at(l), c.scales[k], angle});
        }
      }
    }
    emit_plot(a.common, "xwt", svg::render(h));
  }
  return 0;
}

struct DeltaLArgs {
  fs::path input;
  bool raw = false;
  int min_size = 2;
  std::optional<int> max_size;
  bool no_matrix = false;
  Common common;
};

int run_deltal(const DeltaLArgs& a) {
  prepare(a.common);
  const TimeSeries x = load(a.input, a.common);
  DeltaLOptions o;
  o.on_profile = !a.raw;
  o.min_size = a.min_size;
  o.max_size = a.max_size;
  const DeltaLDiagram d = delta_l(x, o);
  emit(two_columns("s", d.sizes.cast<double>(), "F", d.F), a.common, "deltal");
  if (!a.no_matrix) {
    Table e;
    e.header.push_back("location");
    for (Eigen::Index k = 0; k < d.sizes.size(); ++k) e.header.push_back("s_" + std::to_string(d.sizes[k]));
    e.rows.resize(x.size(), 1 + d.sizes.size());
    e.rows.col(0) = Eigen::VectorXd::LinSpaced(x.size(), 0, static_cast<double>(x.size() - 1));
    e.rows.rightCols(d.sizes.size()) = d.E;
    emit(e, a.common, "deltal_E");
  }
  if (a.common.plot) {
    svg::LinePlot f{"Delta-L fluctuation F(s)", "s", "F(s)", true, true,
                    {{d.sizes.cast<double>(), d.F, x.label(), true, false}}, {}};
    emit_plot(a.common, "deltal", svg::render(f));
    svg::Heatmap h;
    h.title = "Delta-L diagram E(j, s)";
    h.x_label = "time";
    h.y_label = "s";
    h.values = d.E.transpose();
    h.x_min = x.time_at(0);
    h.x_max = x.time_at(x.size() - 1);
    h.y = d.sizes.cast<double>();
    emit_plot(a.common, "deltal_E", svg::render(h));
  }
  return 0;
}

struct HurstArgs {
  fs::path input;
  std::vector<int> windows;
  int min_prefix = 64;
  double threshold = 0.05;
  bool no_rolling = false;
  Common common;
};

int run_hurst(const HurstArgs& a) {
  prepare(a.common);
  const TimeSeries x = load(a.input, a.common);
  std::optional<Eigen::VectorXi> windows;
  if (!a.windows.empty())
    windows = Eigen::Map<const Eigen::VectorXi>(a.windows.data(), static_cast<Eigen::Index>(a.windows.size()));
  const RSCurve curve = rs_curve(x, windows);
  const HurstFit fit = fit_hurst(curve);
  if (fit.warning) warn(*fit.warning);

  nlohmann::json summary = {{"H", fit.H},
                            {"intercept", fit.intercept},
                            {"r_squared", fit.r_squared},
                            {"n_min", fit.n_min},
                            {"n_max", fit.n_max},
                            {"series_length", x.size()},
                            {"warning", fit.warning ? nlohmann::json(*fit.warning) : nlohmann::json(nullptr)}};

  Table c{{"n", "rs", "blocks"}, Eigen::MatrixXd(curve.window_sizes.size(), 3)};
  c.rows << curve.window_sizes.cast<double>(), curve.rs, curve.counts.cast<double>();
  emit(c, a.common, "hurst_curve");

  std::optional<RollingHurst> rolling;
  if (!a.no_rolling && x.size() >= a.min_prefix) {
    rolling = rolling_hurst(x, a.min_prefix, a.threshold);
    const auto n = static_cast<Eigen::Index>(rolling->prefix_lengths.size());
    Table r{{"prefix_length", "t", "H"}, Eigen::MatrixXd(n, 3)};
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index len = rolling->prefix_lengths[static_cast<std::size_t>(i)];
      r.rows(i, 0) = static_cast<double>(len);
      r.rows(i, 1) = x.time_at(len - 1);
      r.rows(i, 2) = rolling->H[i];
    }
    emit(r, a.common, "hurst_rolling");
    if (rolling->regime_break)
      summary["regime_break"] = {{"prefix_length", rolling->regime_break->time},
                                 {"t", x.time_at(rolling->regime_break->time - 1)},
                                 {"drop", rolling->regime_break->drop}};
    else
      summary["regime_break"] = nullptr;
  }
  {
    const fs::path p = a.common.out_dir / "hurst.json";
    std::ofstream out(p);
    if (!out) throw Error("cannot write " + p.string());
    out << summary.dump(1) << '\n';
  }

  if (a.common.plot) {
    const Eigen::VectorXd n = curve.window_sizes.cast<double>();
    Eigen::VectorXd line(n.size());
    for (Eigen::Index i = 0; i < n.size(); ++i) line[i] = std::exp(fit.intercept + fit.H * std::log(n[i]));
    svg::LinePlot p{"R/S, H = " + format_number(std::round(fit.H * 1000) / 1000), "n", "R/S", true, true,
                    {{n, curve.rs, x.label(), true, false}, {n, line, "fit", false, true}}, {}};
    emit_plot(a.common, "hurst_curve", svg::render(p));
    if (rolling) {
      Eigen::VectorXd t(rolling->H.size());
      for (Eigen::Index i = 0; i < t.size(); ++i) t[i] = x.time_at(rolling->prefix_lengths[static_cast<std::size_t>(i)] - 1);
      std::vector<double> marks;
      if (rolling->regime_break) marks.push_back(x.time_at(rolling->regime_break->time - 1));
      svg::LinePlot r{"Hurst exponent over time", "t", "H", false, false, {{t, rolling->H, x.label(), false, false}}, marks};
      emit_plot(a.common, "hurst_rolling", svg::render(r));
    }
  }
  return 0;
}

struct MfArgs {
  fs::path input;
  std::string method = "oscillation";
  std::string q;
  std::string convention = "unnormalized";
  std::optional<int> min_level, max_level;
  std::optional<int> min_scale, max_scale;
  int scale_count = 20;
  int order = 1;
  std::string wavelet = "mexican_hat";
  std::string scales;
  std::optional<double> fit_min, fit_max;
  int resolution = 64;
  Common common;
};

int run_mf(const MfArgs& a) {
  prepare(a.common);
  const TimeSeries x = load(a.input, a.common);
  const Eigen::VectorXd q = a.q.empty() ? default_q_grid() : linear_grid(a.q, "--q");

  ScalingFit fit;
  MultifractalSpectrum spectrum;
  std::optional<WtmmResult> wtmm;
  if (a.method == "oscillation") {
    OscillationOptions o;
    o.q = q;
    if (a.min_level) o.min_level = *a.min_level;
    o.max_level = a.max_level;
    const OscillationFit f = oscillation_structure(x, o);
    const Convention conv = a.convention == "normalized" ? Convention::normalized : Convention::unnormalized;
    fit = conv == Convention::normalized ? f.normalized : f.unnormalized;
    spectrum = legendre_spectrum(fit, conv, SpectrumMethod::oscillation, a.resolution);
  } else if (a.method == "mfdfa") {
    MfdfaOptions o;
    o.q = q;
    if (a.min_scale) o.min_scale = *a.min_scale;
    o.max_scale = a.max_scale;
    o.scale_count = a.scale_count;
    o.poly_order = a.order;
    MfdfaResult r = mfdfa(x, o);
    fit = std::move(r.fit);
    spectrum = std::move(r.spectrum);
  } else {
    WtmmOptions o;
    o.wavelet = make_wavelet(a.wavelet);
    o.q = q;
    if (!a.scales.empty()) o.scales = log_grid(a.scales, "--scales");
    o.fit_min_scale = a.fit_min;
    o.fit_max_scale = a.fit_max;
    wtmm = wtmm_spectrum(x, o);
    fit = wtmm->fit;
    spectrum = legendre_spectrum(fit, Convention::unnormalized, SpectrumMethod::wtmm, a.resolution);
  }
  for (const auto& w : fit.warnings) warn(w);

  const bool has_h = fit.generalized_hurst.size() == fit.q.size();
  Table tau{{"q", "tau", "r_squared"}, Eigen::MatrixXd(fit.q.size(), has_h ? 4 : 3)};
  if (has_h) tau.header.push_back("h");
  tau.rows.col(0) = fit.q;
  tau.rows.col(1) = fit.tau;
  tau.rows.col(2) = fit.r_squared;
  if (has_h) tau.rows.col(3) = fit.generalized_hurst;
  emit(tau, a.common, "mf_tau");

  const auto np = static_cast<Eigen::Index>(spectrum.points.size());
  Table sp{{"h", "d", "q", "boundary_limited"}, Eigen::MatrixXd(np, 4)};
  for (Eigen::Index i = 0; i < np; ++i) {
    const auto& p = spectrum.points[static_cast<std::size_t>(i)];
    sp.rows.row(i) << p.h, p.d, p.q, p.boundary_limited ? 1.0 : 0.0;
  }
  emit(sp, a.common, "mf_spectrum");

  if (wtmm) {
    std::vector<std::array<double, 4>> rows;
    for (std::size_t id = 0; id < wtmm->skeleton.lines.size(); ++id)
      for (const auto& p : wtmm->skeleton.lines[id].points)
        rows.push_back({static_cast<double>(id), wtmm->field.scales[p.scale_index], static_cast<double>(p.location), p.modulus});
    Table sk{{"line", "scale", "location", "modulus"}, Eigen::MatrixXd(static_cast<Eigen::Index>(rows.size()), 4)};
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (int c = 0; c < 4; ++c) sk.rows(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<std::size_t>(c)];
    emit(sk, a.common, "mf_skeleton");
  }

  if (a.common.plot) {
    std::vector<svg::Series> curves{{fit.q, fit.tau, a.method, true, false}};
    if (a.method != "mfdfa") {
      const double shift = a.method == "oscillation" && a.convention == "normalized" ? 0.0 : -1.0;
      curves.push_back({fit.q, Eigen::VectorXd((fit.q.array() * 0.5 + shift).matrix()), "Brownian q/2 reference", false, true});
    }
    emit_plot(a.common, "mf_tau", svg::render(svg::LinePlot{"Scaling function", "q", "tau(q)", false, false, curves, {}}));
    Eigen::VectorXd h(np), d(np);
    for (Eigen::Index i = 0; i < np; ++i) {
      h[i] = spectrum.points[static_cast<std::size_t>(i)].h;
      d[i] = spectrum.points[static_cast<std::size_t>(i)].d;
    }
    emit_plot(a.common, "mf_spectrum",
              svg::render(svg::LinePlot{"Multifractal spectrum", "h", "d(h)", false, false, {{h, d, a.method, true, false}}, {}}));
    if (wtmm) {
      auto hm = field_heatmap("WTMM skeleton", x, wtmm->field.scales, scalogram(wtmm->field, ScalogramKind::modulus));
      hm.coi = wtmm->field.coi;
      for (const auto& line : wtmm->skeleton.lines)
        for (const auto& p : line.points) hm.overlay.emplace_back(x.time_at(p.location), wtmm->field.scales[p.scale_index]);
      emit_plot(a.common, "mf_skeleton", svg::render(hm));
    }
  }
  return 0;
}

struct SynthArgs {
  std::string kind = "white_noise";
  double hurst = 0.5;
  double p = 0.7;
  Eigen::Index length = 4096;
  std::uint64_t seed = 0;
  fs::path output;
  Common common;
};

int run_synth(const SynthArgs& a) {
  prepare(a.common);
  GeneratorSpec g;
  g.kind = parse_generator_kind(a.kind);
  g.hurst = a.hurst;
  g.p = a.p;
  g.length = a.length;
  g.seed = a.seed;
  const TimeSeries s = generate(g);
  fs::path out = a.output.empty() ? a.common.out_dir / (a.common.format == "json" ? "synth.json" : "synth.csv") : a.output;
  if (a.common.format == "json") {
    std::ofstream f(out);
    if (!f) throw Error("cannot write " + out.string());
    f << to_json(s).dump(1) << '\n';
  } else {
    write_csv(s, out);
  }
  if (a.common.plot) {
    svg::LinePlot p{"Synthetic " + to_string(g.kind), "time", "value", false, false, {{times_of(s), s.values(), "", false, false}}, {}};
    svg::write(fs::path(out).replace_extension(".svg"), svg::render(p));
  }
  return 0;
}

std::string active_subcommand(int argc, char** argv, const std::vector<std::string>& names) {
  for (int i = 1; i < argc; ++i)
    for (const auto& n : names)
      if (argv[i] == n) return n;
  return {};
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear time-series analysis for information streams", "streamlens"};
  app.set_version_flag("--version", std::string(STREAMLENS_VERSION));
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  const std::vector<std::string> names{"acf", "ccf", "spectrum", "gabor", "cwt", "xwt", "deltal", "hurst", "mf", "synth"};
  app.config_formatter(std::make_shared<SubcommandConfig>(active_subcommand(argc, argv, names)));

  AcfArgs acf;
  auto* s_acf = app.add_subcommand("acf", "Autocorrelation (or autocovariance) by lag");
  s_acf->add_option("input", acf.input, "Input CSV")->required()->check(CLI::ExistingFile);
  s_acf->add_option("--max-lag", acf.max_lag, "Largest lag (default T/4)")->check(CLI::NonNegativeNumber);
  s_acf->add_flag("--covariance", acf.covariance, "Write autocovariance instead of autocorrelation");
  add_common(s_acf, acf.common);

  CcfArgs ccf;
  auto* s_ccf = app.add_subcommand("ccf", "Cross-correlation over lags -L..L");
  s_ccf->add_option("x", ccf.x, "First input CSV")->required()->check(CLI::ExistingFile);
  s_ccf->add_option("y", ccf.y, "Second input CSV")->required()->check(CLI::ExistingFile);
  s_ccf->add_option("--max-lag", ccf.max_lag, "Largest absolute lag (default T/4)")->check(CLI::NonNegativeNumber);
  s_ccf->add_option("--normalization", ccf.normalization, "standard: s_x s_y; lag0: lag-0 cross-covariance; none: covariance")
      ->check(CLI::IsMember({"standard", "lag0", "none"}))
      ->capture_default_str();
  add_common(s_ccf, ccf.common);

  SpectrumArgs spec;
  auto* s_spec = app.add_subcommand("spectrum", "One-sided Fourier spectrum");
  s_spec->add_option("input", spec.input, "Input CSV")->required()->check(CLI::ExistingFile);
  s_spec->add_option("--scaling", spec.scaling, "raw: |X_m|; display: 2|X_m|/N")
      ->check(CLI::IsMember({"raw", "display"}))
      ->capture_default_str();
  add_common(s_spec, spec.common);

  GaborArgs gab;
  auto* s_gab = app.add_subcommand("gabor", "Gabor transform matrix");
  s_gab->add_option("input", gab.input, "Input CSV")->required()->check(CLI::ExistingFile);
  s_gab->add_option("--window", gab.window, "Window width s in samples (default T/10)")->check(CLI::PositiveNumber);
  s_gab->add_option("--frequencies", gab.frequencies, "Linear grid min:max:count (default DFT bins)");
  s_gab->add_option("--location-step", gab.location_step, "Use every k-th sample as a window centre")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(s_gab, gab.common);

  CwtArgs cw;
  auto* s_cwt = app.add_subcommand("cwt", "Continuous wavelet transform");
  s_cwt->add_option("input", cw.input, "Input CSV")->required()->check(CLI::ExistingFile);
  s_cwt->add_option("--wavelet", cw.wavelet, "gaussian_wave, mexican_hat, haar or morlet")
      ->check(CLI::IsMember({"gaussian_wave", "mexican_hat", "haar", "morlet"}))
      ->capture_default_str();
  s_cwt->add_option("--scales", cw.scales, "Log-spaced grid min:max:count in samples (default 2:T/4:64)");
  add_common(s_cwt, cw.common);

  XwtArgs xw;
  auto* s_xwt = app.add_subcommand("xwt", "Compare two series in wavelet space");
  s_xwt->add_option("x", xw.x, "First input CSV")->required()->check(CLI::ExistingFile);
  s_xwt->add_option("y", xw.y, "Second input CSV")->required()->check(CLI::ExistingFile);
  s_xwt->add_option("--metric", xw.metric, "diffmod, phase or crwt")
      ->check(CLI::IsMember({"diffmod", "phase", "crwt"}))
      ->capture_default_str();
  s_xwt->add_option("--wavelet", xw.wavelet, "gaussian_wave, mexican_hat, haar or morlet")
      ->check(CLI::IsMember({"gaussian_wave", "mexican_hat", "haar", "morlet"}))
      ->capture_default_str();
  s_xwt->add_option("--scales", xw.scales, "Log-spaced grid min:max:count in samples (default 2:T/4:64)");
  s_xwt->add_flag("--arrows", xw.arrows, "Overlay phase-difference arrows on the plot (complex wavelets)");
  add_common(s_xwt, xw.common);

  DeltaLArgs dl;
  auto* s_dl = app.add_subcommand("deltal", "Delta-L deviation diagram");
  s_dl->add_option("input", dl.input, "Input CSV")->required()->check(CLI::ExistingFile);
  s_dl->add_flag("--raw", dl.raw, "Use the series itself instead of its profile");
  s_dl->add_option("--min-size", dl.min_size, "Smallest segment size")->capture_default_str();
  s_dl->add_option("--max-size", dl.max_size, "Largest segment size (default T/4)");
  s_dl->add_flag("--no-matrix", dl.no_matrix, "Skip the E(j, s) matrix file");
  add_common(s_dl, dl.common);

  HurstArgs hu;
  auto* s_hu = app.add_subcommand("hurst", "Rescaled-range Hurst exponent");
  s_hu->add_option("input", hu.input, "Input CSV")->required()->check(CLI::ExistingFile);
  s_hu->add_option("--windows", hu.windows, "Window sizes (default ~20 log-spaced on [8, T/2])")->delimiter(',');
  s_hu->add_option("--min-prefix", hu.min_prefix, "Shortest prefix of the rolling estimate")->capture_default_str();
  s_hu->add_option("--threshold", hu.threshold, "Single-step drop reported as a regime break")->capture_default_str();
  s_hu->add_flag("--no-rolling", hu.no_rolling, "Skip the rolling H(t) trajectory");
  add_common(s_hu, hu.common);

  MfArgs mf;
  auto* s_mf = app.add_subcommand("mf", "Multifractal scaling function and spectrum");
  s_mf->add_option("input", mf.input, "Input CSV")->required()->check(CLI::ExistingFile);
  s_mf->add_option("--method", mf.method, "oscillation, mfdfa or wtmm")
      ->check(CLI::IsMember({"oscillation", "mfdfa", "wtmm"}))
      ->capture_default_str();
  s_mf->add_option("--q", mf.q, "Linear q grid min:max:count (default -5:5:41)");
  s_mf->add_option("--convention", mf.convention, "oscillation: unnormalized or normalized partition sums")
      ->check(CLI::IsMember({"unnormalized", "normalized"}))
      ->capture_default_str();
  s_mf->add_option("--min-level", mf.min_level, "oscillation: first dyadic level (default 3)");
  s_mf->add_option("--max-level", mf.max_level, "oscillation: last dyadic level (default log2 T - 4)");
  s_mf->add_option("--min-scale", mf.min_scale, "mfdfa: smallest segment size (default 16)");
  s_mf->add_option("--max-scale", mf.max_scale, "mfdfa: largest segment size (default T/4)");
  s_mf->add_option("--scale-count", mf.scale_count, "mfdfa: number of segment sizes")->capture_default_str();
  s_mf->add_option("--order", mf.order, "mfdfa: detrending polynomial order")->capture_default_str();
  s_mf->add_option("--wavelet", mf.wavelet, "wtmm: analysing wavelet")
      ->check(CLI::IsMember({"gaussian_wave", "mexican_hat", "haar", "morlet"}))
      ->capture_default_str();
  s_mf->add_option("--scales", mf.scales, "wtmm: CWT grid min:max:count (default 2:T/16:64)");
  s_mf->add_option("--fit-min", mf.fit_min, "wtmm: smallest fitted scale (default 4)");
  s_mf->add_option("--fit-max", mf.fit_max, "wtmm: largest fitted scale (default T/64)");
  s_mf->add_option("--resolution", mf.resolution, "Points on the spectrum h grid")->capture_default_str();
  add_common(s_mf, mf.common);

  SynthArgs sy;
  auto* s_sy = app.add_subcommand("synth", "Generate a synthetic test series");
  s_sy->add_option("--kind", sy.kind, "white_noise, brownian, fbm or binomial_cascade")
      ->check(CLI::IsMember({"white_noise", "brownian", "fbm", "binomial_cascade"}))
      ->capture_default_str();
  s_sy->add_option("--hurst", sy.hurst, "fbm: target Hurst exponent in (0, 1)")->capture_default_str();
  s_sy->add_option("--p", sy.p, "binomial_cascade: weight in (0, 1)")->capture_default_str();
  s_sy->add_option("--length", sy.length, "Number of samples (power of two for fbm and cascade)")->capture_default_str();
  s_sy->add_option("--seed", sy.seed, "PRNG seed")->capture_default_str();
  s_sy->add_option("-o,--output", sy.output, "Output file (default <out-dir>/synth.csv)");
  add_common(s_sy, sy.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    std::cerr << "run with --help for usage\n";
    return exit_usage_error;
  }

  try {
    if (*s_acf) return run_acf(acf);
    if (*s_ccf) return run_ccf(ccf);
    if (*s_spec) return run_spectrum(spec);
    if (*s_gab) return run_gabor(gab);
    if (*s_cwt) return run_cwt(cw);
    if (*s_xwt) return run_xwt(xw);
    if (*s_dl) return run_deltal(dl);
    if (*s_hu) return run_hurst(hu);
    if (*s_mf) return run_mf(mf);
    if (*s_sy) return run_synth(sy);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_data_error;
  }
  return exit_usage_error;
}
