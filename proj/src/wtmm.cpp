#include "streamlens/multifractal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "streamlens/regression.hpp"

namespace streamlens {

std::vector<Eigen::Index> find_modulus_maxima(const WaveletField& field, Eigen::Index scale_index,
                                              double min_modulus) {
  if (scale_index < 0 || scale_index >= field.scale_count()) throw Error("scale index out of range");
  std::vector<Eigen::Index> maxima;
  const Eigen::Index n = field.location_count();
  if (n < 3) return maxima;
  const auto row = field.coefficients.row(scale_index);
  double left = std::abs(row[0]);
  double centre = std::abs(row[1]);
  for (Eigen::Index l = 1; l + 1 < n; ++l) {
    const double right = std::abs(row[l + 1]);
    if (centre > min_modulus && centre >= left && centre >= right && (centre > left || centre > right))
      maxima.push_back(l);
    left = centre;
    centre = right;
  }
  return maxima;
}

Skeleton build_skeleton(const WaveletField& field, const SkeletonOptions& options) {
  if (field.scale_count() == 0 || field.location_count() == 0) throw Error("empty wavelet field");
  const Eigen::Index scales = field.scale_count();
  if (scales < 8) throw Error("skeleton needs at least 8 scales, got " + std::to_string(scales));

  auto maxima_at = [&](Eigen::Index k) {
    const double row_max = field.coefficients.row(k).cwiseAbs().maxCoeff();
    auto found = find_modulus_maxima(field, k, options.relative_floor * row_max);
    if (options.respect_coi)
      std::erase_if(found, [&](Eigen::Index l) { return !field.trusted(k, l); });
    return found;
  };

  std::vector<MaximaLine> finished;
  std::vector<MaximaLine> active;
  for (Eigen::Index k = scales - 1; k >= 0; --k) {
    const auto maxima = maxima_at(k);
    std::vector<char> taken(maxima.size(), 0);
    std::vector<MaximaLine> next;

    // Strongest lines pick first.
    std::sort(active.begin(), active.end(), [](const MaximaLine& a, const MaximaLine& b) {
      return a.points.back().modulus > b.points.back().modulus;
    });
    for (auto& line : active) {
      const LinePoint& tip = line.points.back();
      const double s = field.scales[tip.scale_index];
      const auto window = std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::ceil(0.5 * s)));
      auto it = std::lower_bound(maxima.begin(), maxima.end(), tip.location - window);
      std::ptrdiff_t best = -1;
      Eigen::Index best_distance = window + 1;
      for (; it != maxima.end() && *it <= tip.location + window; ++it) {
        const auto idx = it - maxima.begin();
        if (taken[static_cast<std::size_t>(idx)]) continue;
        const Eigen::Index d = std::abs(*it - tip.location);
        if (d < best_distance) {
          best_distance = d;
          best = idx;
        }
      }
      if (best < 0) {
        finished.push_back(std::move(line));
        continue;
      }
      taken[static_cast<std::size_t>(best)] = 1;
      const Eigen::Index l = maxima[static_cast<std::size_t>(best)];
      line.points.push_back({k, l, std::abs(field.coefficients(k, l))});
      next.push_back(std::move(line));
    }
    for (std::size_t i = 0; i < maxima.size(); ++i) {
      if (taken[i]) continue;
      MaximaLine line;
      line.points.push_back({k, maxima[i], std::abs(field.coefficients(k, maxima[i]))});
      next.push_back(std::move(line));
    }
    active = std::move(next);
  }
  for (auto& line : active) finished.push_back(std::move(line));

  Skeleton skeleton;
  for (auto& line : finished) {
    if (static_cast<int>(line.points.size()) - 1 >= options.min_steps)
      skeleton.lines.push_back(std::move(line));
  }
  // Deterministic order: by starting scale (largest first), then location.
  std::sort(skeleton.lines.begin(), skeleton.lines.end(), [](const MaximaLine& a, const MaximaLine& b) {
    const auto& pa = a.points.front();
    const auto& pb = b.points.front();
    if (pa.scale_index != pb.scale_index) return pa.scale_index > pb.scale_index;
    return pa.location < pb.location;
  });
  return skeleton;
}

namespace {

struct FitWindow {
  std::vector<Eigen::Index> scale_indices;
  Eigen::Index lo = 0; ///< domain of admitted locations
  Eigen::Index hi = 0;
};

FitWindow fit_window(const WaveletField& field, double fit_min_scale, double fit_max_scale) {
  FitWindow w;
  for (Eigen::Index k = 0; k < field.scale_count(); ++k) {
    const double s = field.scales[k];
    if (s >= fit_min_scale * (1 - 1e-12) && s <= fit_max_scale * (1 + 1e-12)) w.scale_indices.push_back(k);
  }
  if (w.scale_indices.empty()) throw Error("no scales inside the WTMM fit range");
  const double s_top = field.scales[w.scale_indices.back()];
  const Wavelet& psi = field.wavelet;
  const Eigen::Index n = field.location_count();
  w.lo = static_cast<Eigen::Index>(std::ceil(std::max(0.0, -psi.support_lower()) * s_top));
  w.hi = n - 1 - static_cast<Eigen::Index>(std::ceil(psi.support_upper() * s_top));
  if (w.hi < w.lo) throw Error("WTMM fit range leaves no trusted locations");
  return w;
}

// For each line, the running sup of |W|/sqrt(s) from the smallest scale up,
// keyed by scale index.
template <typename Visit>
void for_each_live_point(const WaveletField& field, const Skeleton& skeleton, const FitWindow& w,
                         Visit&& visit) {
  for (const auto& line : skeleton.lines) {
    double running = 0.0;
    for (auto it = line.points.rbegin(); it != line.points.rend(); ++it) {
      running = std::max(running, it->modulus / std::sqrt(field.scales[it->scale_index]));
      if (it->location < w.lo || it->location > w.hi) continue;
      visit(it->scale_index, running);
    }
  }
}

} // namespace

Eigen::VectorXi wtmm_line_counts(const WaveletField& field, const Skeleton& skeleton,
                                 double fit_min_scale, double fit_max_scale) {
  const FitWindow w = fit_window(field, fit_min_scale, fit_max_scale);
  Eigen::VectorXi all = Eigen::VectorXi::Zero(field.scale_count());
  for_each_live_point(field, skeleton, w, [&](Eigen::Index k, double) { ++all[k]; });
  Eigen::VectorXi out(static_cast<Eigen::Index>(w.scale_indices.size()));
  for (std::size_t i = 0; i < w.scale_indices.size(); ++i) out[static_cast<Eigen::Index>(i)] = all[w.scale_indices[i]];
  return out;
}

ScalingFit wtmm_structure(const WaveletField& field, const Skeleton& skeleton,
                          const Eigen::VectorXd& q, double fit_min_scale, double fit_max_scale,
                          double floor) {
  if (skeleton.lines.empty()) throw Error("skeleton is empty");
  const FitWindow w = fit_window(field, fit_min_scale, fit_max_scale);
  const Eigen::Index nq = q.size();
  const Eigen::Index scales = field.scale_count();

  // Collect the sups per scale, then reduce in log space.
  std::vector<std::vector<double>> sups(static_cast<std::size_t>(scales));
  for_each_live_point(field, skeleton, w,
                      [&](Eigen::Index k, double sup) { sups[static_cast<std::size_t>(k)].push_back(sup); });

  std::vector<Eigen::Index> alive;
  for (Eigen::Index k : w.scale_indices) {
    if (!sups[static_cast<std::size_t>(k)].empty()) alive.push_back(k);
  }
  if (alive.size() < 5)
    throw Error("only " + std::to_string(alive.size()) + " scales have live maxima lines; need 5");

  ScalingFit fit;
  fit.q = q;
  fit.convention = Convention::unnormalized;
  const auto m = static_cast<Eigen::Index>(alive.size());
  fit.log_scales.resize(m);
  fit.log_z.resize(nq, m);
  bool floored = false;
  for (Eigen::Index c = 0; c < m; ++c) {
    const Eigen::Index k = alive[static_cast<std::size_t>(c)];
    const auto& v = sups[static_cast<std::size_t>(k)];
    const Eigen::ArrayXd values = Eigen::Map<const Eigen::ArrayXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    if ((values < floor).any()) floored = true;
    const Eigen::ArrayXd log_floored = values.max(floor).log();
    const Eigen::ArrayXd log_raw = values.log();
    fit.log_scales[c] = std::log(field.scales[k]);
    for (Eigen::Index i = 0; i < nq; ++i) {
      if (q[i] == 0.0) {
        fit.log_z(i, c) = std::log(static_cast<double>(v.size()));
        continue;
      }
      const Eigen::ArrayXd e = q[i] * (q[i] < 0.0 ? log_floored : log_raw);
      const double top = e.maxCoeff();
      fit.log_z(i, c) = top + std::log((e - top).exp().sum());
    }
  }
  if (floored) fit.warnings.push_back("maxima sups floored at " + std::to_string(floor));

  fit.tau.resize(nq);
  fit.r_squared.resize(nq);
  for (Eigen::Index i = 0; i < nq; ++i) {
    const auto line = fit_line(fit.log_scales, Eigen::VectorXd(fit.log_z.row(i).transpose()));
    fit.tau[i] = line.slope;
    fit.r_squared[i] = line.r_squared;
  }
  return fit;
}

WtmmResult wtmm_spectrum(const TimeSeries& series, const WtmmOptions& options) {
  const auto n = static_cast<double>(series.size());
  const Eigen::VectorXd scales =
      options.scales ? *options.scales : log_scales(2.0, std::max(4.0, n / 16.0), 64);
  WtmmResult out;
  out.field = cwt(series, options.wavelet, scales);
  out.skeleton = build_skeleton(out.field, options.skeleton);
  const double lo = options.fit_min_scale.value_or(4.0);
  const double hi = options.fit_max_scale.value_or(n / 64.0);
  out.fit = wtmm_structure(out.field, out.skeleton, options.q, lo, hi, options.floor);
  out.spectrum = legendre_spectrum(out.fit, Convention::unnormalized, SpectrumMethod::wtmm);
  return out;
}

HolderEstimate holder_at_point(const WaveletField& field, Eigen::Index location, int scale_count) {
  const Eigen::Index n = field.location_count();
  if (location < 0 || location >= n) throw Error("location out of range");
  std::vector<Eigen::Index> usable;
  for (Eigen::Index k = 0; k < field.scale_count() && static_cast<int>(usable.size()) < scale_count; ++k) {
    if (field.trusted(k, location)) usable.push_back(k);
  }
  if (usable.size() < 3)
    throw Error("location " + std::to_string(location) + " is inside the cone of influence at all but " +
                std::to_string(usable.size()) + " scales");

  HolderEstimate est;
  est.scales_used = static_cast<int>(usable.size());
  Eigen::VectorXd log_s(est.scales_used);
  Eigen::VectorXd log_w(est.scales_used);
  for (int i = 0; i < est.scales_used; ++i) {
    const Eigen::Index k = usable[static_cast<std::size_t>(i)];
    const double s = field.scales[k];
    const auto radius = static_cast<Eigen::Index>(std::ceil(s));
    const Eigen::Index a = std::max<Eigen::Index>(0, location - radius);
    const Eigen::Index b = std::min<Eigen::Index>(n - 1, location + radius);
    const double sup = field.coefficients.row(k).segment(a, b - a + 1).cwiseAbs().maxCoeff();
    if (!(sup > 0.0)) {
      est.degenerate = true;
      est.h = std::numeric_limits<double>::quiet_NaN();
      return est;
    }
    log_s[i] = std::log(s);
    log_w[i] = std::log(sup);
  }
  const auto line = fit_line(log_s, log_w);
  est.h = line.slope - 0.5;
  est.r_squared = line.r_squared;
  est.moment_saturated = est.h >= field.wavelet.vanishing_moments() - 0.1;
  return est;
}

} // namespace streamlens
