#include "neolith/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "neolith/errors.hpp"
#include "neolith/numerics.hpp"

namespace neolith {

namespace {

double field_value(const FieldState& s, FieldSel f, std::size_t i) {
  switch (f) {
    case FieldSel::F: return s.F[i];
    case FieldSel::C: return s.C[i];
    case FieldSel::H: return 1.0 - s.H[i];  // invasion deficit
    case FieldSel::FplusC: return s.F[i] + s.C[i];
  }
  return 0.0;
}

/// Node index range [lo, hi] covering |x| <= c*t; empty when hi < lo.
std::pair<long, long> zone_nodes(const Grid1D& g, double c, double t) {
  const double r = c * t;
  const long lo = long(std::ceil((-r - g.x_min) / g.dx()));
  const long hi = long(std::floor((r - g.x_min) / g.dx()));
  return {std::max(lo, 0L), std::min(hi, long(g.n) - 1)};
}

}  // namespace

std::optional<double> front_position(const FieldState& state, const Grid1D& grid,
                                     FieldSel field, double level) {
  if (!(level > 0)) throw ValidationError("front_position: level must be positive");
  const long n = grid.n;
  const double last = field_value(state, field, std::size_t(n - 1));
  if (last >= level) return grid.x(int(n - 1));
  for (long i = n - 2; i >= 0; --i) {
    const double vi = field_value(state, field, std::size_t(i));
    if (vi >= level) {
      const double vr = field_value(state, field, std::size_t(i + 1));
      return grid.x(int(i)) + grid.dx() * (vi - level) / (vi - vr);
    }
  }
  return std::nullopt;
}

SpeedFit estimate_speed(const FrontSeries& fs, double t1, double t2) {
  std::vector<double> ts, xs;
  for (const auto& s : fs.samples)
    if (s.t >= t1 && s.t <= t2) {
      ts.push_back(s.t);
      xs.push_back(s.x);
    }
  if (ts.size() < 10)
    throw ValidationError("estimate_speed: need >= 10 front samples in the window");
  const auto f = fit_line(ts, xs);
  return {f.slope, f.slope_stderr, f.n};
}

LogCorrectionFit fit_log_correction(const FrontSeries& fs, double c_fixed, double t1,
                                    double t2) {
  std::vector<double> neg_log_t, y;
  for (const auto& s : fs.samples)
    if (s.t >= std::max(t1, 10.0) && s.t <= t2) {
      neg_log_t.push_back(-std::log(s.t));
      y.push_back(s.x - c_fixed * s.t);
    }
  if (y.size() < 20)
    throw ValidationError("fit_log_correction: need >= 20 samples with t >= 10");
  const auto f = fit_line(neg_log_t, y);
  return {f.slope, f.intercept, f.slope_stderr, f.rss, f.n};
}

BumpFit fit_bump(const SimulationRecord& rec, double t1, double t2) {
  const auto label = classify_regime(rec.params);
  if (label.speed_order != SpeedOrder::ConvertLed || !(rec.params.g > 1.0))
    throw ValidationError(
        "fit_bump: requires the convert-led high-conversion regime (d_c(1+s) > a, g > 1)");
  const Grid1D& g = rec.grid;
  const long center = std::lround((0.0 - g.x_min) / g.dx());
  if (center < 0 || center >= g.n) throw ValidationError("fit_bump: grid does not contain x=0");

  std::vector<double> log_t, log_F;
  std::vector<double> d_estimates;
  std::size_t n_space_total = 0;
  for (const auto& s : rec.snapshots) {
    if (s.t < t1 || s.t > t2 || s.t <= 0) continue;
    const double F0 = s.F[std::size_t(center)];
    if (F0 < 1e-300) throw NumericalError("fit_bump: F(t,0) underflow");
    log_t.push_back(std::log(s.t));
    log_F.push_back(std::log(F0));

    // Spatial Gaussian fit: ln F vs x^2 over |x| <= sqrt(t).
    std::vector<double> x2, lf;
    const auto [lo, hi] = zone_nodes(g, 1.0 / std::sqrt(s.t), s.t);  // |x| <= sqrt(t)
    for (long i = lo; i <= hi; ++i) {
      const double F = s.F[std::size_t(i)];
      if (F < 1e-300) continue;
      const double x = g.x(int(i));
      x2.push_back(x * x);
      lf.push_back(std::log(F));
    }
    if (x2.size() >= 8) {
      const auto sf = fit_line(x2, lf);
      if (sf.slope < 0) {
        d_estimates.push_back(-1.0 / (4.0 * s.t * sf.slope));
        n_space_total += sf.n;
      }
    }
  }
  if (log_t.size() < 20)
    throw ValidationError("fit_bump: need >= 20 snapshots in the time window");
  if (d_estimates.empty()) throw ValidationError("fit_bump: spatial fit failed");

  const auto tf = fit_line(log_t, log_F);
  BumpFit out;
  out.alpha = -tf.slope;
  out.alpha_stderr = tf.slope_stderr;
  out.rss = tf.rss;
  out.n_time = tf.n;
  out.n_space = n_space_total;
  double mean = 0;
  for (double d : d_estimates) mean += d;
  mean /= double(d_estimates.size());
  out.D_fit = mean;
  double lo = *std::min_element(d_estimates.begin(), d_estimates.end());
  double hi = *std::max_element(d_estimates.begin(), d_estimates.end());
  out.D_spread = hi - lo;
  return out;
}

RegimeReport final_zone_report(const SimulationRecord& rec, double c1, double t1, double t2,
                               double tol) {
  const auto& d = rec.derived;
  if (!(c1 < d.c_star))
    throw ValidationError("final_zone_report: require c1 < c_star");
  RegimeReport rep;
  rep.label = classify_regime(rec.params);
  rep.c1 = c1;
  rep.tol = tol;

  const Grid1D& g = rec.grid;
  const FieldState* last = nullptr;
  for (const auto& s : rec.snapshots) {
    if (s.t < t1 || s.t > t2) continue;
    const auto [lo, hi] = zone_nodes(g, c1, s.t);
    if (hi < lo) continue;
    ZoneMeasurement zm;
    zm.t = s.t;
    zm.sup_F = zm.sup_C = zm.sup_H = -std::numeric_limits<double>::infinity();
    zm.inf_F = zm.inf_C = zm.inf_H = zm.inf_FplusC = std::numeric_limits<double>::infinity();
    for (long i = lo; i <= hi; ++i) {
      const std::size_t k = std::size_t(i);
      zm.sup_F = std::max(zm.sup_F, s.F[k]);
      zm.inf_F = std::min(zm.inf_F, s.F[k]);
      zm.sup_C = std::max(zm.sup_C, s.C[k]);
      zm.inf_C = std::min(zm.inf_C, s.C[k]);
      zm.sup_H = std::max(zm.sup_H, s.H[k]);
      zm.inf_H = std::min(zm.inf_H, s.H[k]);
      zm.inf_FplusC = std::min(zm.inf_FplusC, s.F[k] + s.C[k]);
    }
    rep.window.push_back(zm);
    last = &s;
  }
  if (!last) throw ValidationError("final_zone_report: no snapshots in [t1, t2]");

  const bool low = rec.params.g < 1.0;
  rep.C_target = low ? *d.C_star : 1.0;
  rep.H_target = low ? *d.H_star : 0.0;

  const auto [lo, hi] = zone_nodes(g, c1, last->t);
  rep.sup_abs_C_dev = 0;
  rep.sup_abs_H_dev = 0;
  rep.inf_FplusC_zone = std::numeric_limits<double>::infinity();
  rep.sup_H_zone = 0;
  for (long i = lo; i <= hi; ++i) {
    const std::size_t k = std::size_t(i);
    rep.sup_abs_C_dev = std::max(rep.sup_abs_C_dev, std::abs(last->C[k] - rep.C_target));
    rep.sup_abs_H_dev = std::max(rep.sup_abs_H_dev, std::abs(last->H[k] - rep.H_target));
    rep.inf_FplusC_zone = std::min(rep.inf_FplusC_zone, last->F[k] + last->C[k]);
    rep.sup_H_zone = std::max(rep.sup_H_zone, last->H[k]);
  }
  rep.sup_F_all_x = *std::max_element(last->F.begin(), last->F.end());

  rep.speed = estimate_speed(rec.front(FieldSel::C), 2.0 / 3.0 * rec.config.t_end,
                             rec.config.t_end);

  rep.convergence_checked =
      rep.label.speed_order == SpeedOrder::ConvertLed && !rep.label.is_critical();
  if (rep.convergence_checked) {
    rep.ok_CH = rep.sup_abs_C_dev < tol && rep.sup_abs_H_dev < tol;
    rep.ok_F_vanishes = rep.sup_F_all_x < tol;
  }
  rep.ok_hair_trigger = rep.inf_FplusC_zone >= 1.0 - tol;
  rep.ok_H_ceiling = rep.sup_H_zone <= std::max(0.0, 1.0 - rec.params.g) + tol;
  rep.pass = rep.ok_CH && rep.ok_F_vanishes && rep.ok_hair_trigger && rep.ok_H_ceiling;
  return rep;
}

double FrontPeakSeries::infimum_over(double t1, double t2) const {
  double inf = std::numeric_limits<double>::infinity();
  for (const auto& s : samples)
    if (s.t >= t1 && s.t <= t2) inf = std::min(inf, s.peak);
  if (!std::isfinite(inf))
    throw ValidationError("FrontPeakSeries: no samples in the requested window");
  return inf;
}

FrontPeakSeries front_peak_series(const SimulationRecord& rec) {
  if (!(rec.params.a > 1.0 + rec.params.s))
    throw ValidationError("front_peak_series: requires a > 1+s");
  const Grid1D& g = rec.grid;
  FrontPeakSeries out;
  for (const auto& s : rec.snapshots) {
    const auto xc = front_position(s, g, FieldSel::C, 0.1);
    const auto xf = front_position(s, g, FieldSel::F, 0.01);
    if (!xc || !xf) continue;
    const long lo = std::max(0L, long(std::ceil((*xc - 30.0 - g.x_min) / g.dx())));
    const long hi = std::min(long(g.n) - 1, long(std::floor((*xf + 30.0 - g.x_min) / g.dx())));
    if (hi < lo) continue;
    PeakSample ps;
    ps.t = s.t;
    ps.peak = -std::numeric_limits<double>::infinity();
    for (long i = lo; i <= hi; ++i) {
      if (s.F[std::size_t(i)] > ps.peak) {
        ps.peak = s.F[std::size_t(i)];
        ps.x_peak = g.x(int(i));
      }
    }
    out.samples.push_back(ps);
  }
  if (out.samples.empty())
    throw ValidationError("front_peak_series: insufficient data (no snapshot has both fronts)");
  return out;
}

LeadingEdgeReport leading_edge_report(const SimulationRecord& rec, double c2, double c1) {
  const auto& d = rec.derived;
  if (!(c2 > d.c_star)) throw ValidationError("leading_edge_report: require c2 > c_star");
  if (!(c1 > d.c_f)) throw ValidationError("leading_edge_report: require c1 > 2 sqrt(a)");
  const Grid1D& g = rec.grid;

  LeadingEdgeReport out;
  std::vector<double> ts_ch, ln_ch, ts_f, ln_f;
  for (const auto& s : rec.snapshots) {
    if (c2 * s.t >= g.x_max || c1 * s.t >= g.x_max)
      throw ValidationError("leading_edge_report: region outside grid coverage at t=" +
                            std::to_string(s.t));
    LeadingEdgeReport::Sample smp;
    smp.t = s.t;
    for (long i = 0; i < g.n; ++i) {
      const double ax = std::abs(g.x(int(i)));
      const std::size_t k = std::size_t(i);
      if (ax >= c2 * s.t)
        smp.sup_CH = std::max(smp.sup_CH, s.C[k] + std::abs(1.0 - s.H[k]));
      if (ax >= c1 * s.t) smp.sup_F = std::max(smp.sup_F, s.F[k]);
    }
    out.samples.push_back(smp);
    if (s.t > 0 && smp.sup_CH > 1e-300) {
      ts_ch.push_back(s.t);
      ln_ch.push_back(std::log(smp.sup_CH));
    }
    if (s.t > 0 && smp.sup_F > 1e-300) {
      ts_f.push_back(s.t);
      ln_f.push_back(std::log(smp.sup_F));
    }
  }
  if (ts_ch.size() >= 3) out.rate_CH = fit_line(ts_ch, ln_ch).slope;
  if (ts_f.size() >= 3) out.rate_F = fit_line(ts_f, ln_f).slope;
  return out;
}

DecayFit exponential_decay_check(const SimulationRecord& rec, DecayQuantity q, double c0,
                                 double t1, double t2) {
  const auto label = classify_regime(rec.params);
  if (!(rec.params.g > 1.0) || label.speed_order != SpeedOrder::ConvertLed)
    throw ValidationError(
        "exponential_decay_check: requires the high-conversion convert-led regime");
  if (!(c0 < rec.derived.c_c))
    throw ValidationError("exponential_decay_check: require c0 < c_c");
  const Grid1D& g = rec.grid;
  std::vector<double> ts, ln_sup;
  for (const auto& s : rec.snapshots) {
    if (s.t < t1 || s.t > t2) continue;
    const auto [lo, hi] = zone_nodes(g, c0, s.t);
    if (hi < lo) continue;
    double sup = 0;
    for (long i = lo; i <= hi; ++i) {
      const std::size_t k = std::size_t(i);
      const double v = q == DecayQuantity::HFinalZone ? s.H[k] : std::abs(s.C[k] - 1.0);
      sup = std::max(sup, v);
    }
    if (sup > 1e-300) {
      ts.push_back(s.t);
      ln_sup.push_back(std::log(sup));
    }
  }
  if (ts.size() < 3) throw ValidationError("exponential_decay_check: too few samples");
  const auto f = fit_line(ts, ln_sup);
  return {f.slope, f.slope_stderr, f.n, f.slope < 0};
}

LyapunovSeries lyapunov_series(const SimulationRecord& rec, const ModelParams& m, double c1) {
  if (!(m.g < 1.0)) throw ValidationError("lyapunov_series: unsupported for g >= 1");
  if (!(c1 < rec.derived.c_star))
    throw ValidationError("lyapunov_series: require c1 < c_star");
  const Grid1D& g = rec.grid;
  const double eps = 1e-12;
  LyapunovSeries out;
  for (const auto& s : rec.snapshots) {
    const auto [lo, hi] = zone_nodes(g, c1, s.t);
    if (hi < lo) continue;
    double sum = 0;
    for (long i = lo; i <= hi; ++i) {
      const std::size_t k = std::size_t(i);
      const double C = std::clamp(s.C[k], eps, 1.0 + m.s - eps);
      const double H = std::clamp(s.H[k], eps, 1.0 - eps);
      sum += lyapunov(C, H, m);
    }
    out.samples.push_back({s.t, sum / double(hi - lo + 1)});
  }
  if (out.samples.empty()) throw ValidationError("lyapunov_series: no zone samples");
  out.final_value = out.samples.back().phi;
  out.nonincreasing_late = true;
  const std::size_t half = out.samples.size() / 2;
  for (std::size_t i = half + 1; i < out.samples.size(); ++i)
    if (out.samples[i].phi > out.samples[i - 1].phi + 1e-12) out.nonincreasing_late = false;
  return out;
}

}  // namespace neolith
