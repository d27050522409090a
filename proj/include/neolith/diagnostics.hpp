#pragma once

#include <optional>
#include <vector>

#include "neolith/model.hpp"
#include "neolith/solver.hpp"

namespace neolith {

/// Rightmost x where the selected field crosses `level` (linear interpolation
/// between bracketing nodes). For H the crossing is of the deficit 1 - H.
/// Absent when the field lies below the level everywhere.
std::optional<double> front_position(const FieldState& state, const Grid1D& grid,
                                     FieldSel field, double level);

struct SpeedFit {
  double speed = 0;
  double stderr = 0;
  std::size_t n = 0;
};

/// Least-squares slope of x_front versus t over [t1, t2]; needs >= 10 samples.
SpeedFit estimate_speed(const FrontSeries& fs, double t1, double t2);

struct LogCorrectionFit {
  double m = 0;         // coefficient of -ln t
  double k = 0;         // intercept
  double m_stderr = 0;
  double rss = 0;
  std::size_t n = 0;
};

/// Fits x_front - c_fixed*t = -m ln t + k over [t1, t2]; needs >= 20 samples
/// with times >= 10.
LogCorrectionFit fit_log_correction(const FrontSeries& fs, double c_fixed, double t1,
                                    double t2);

struct BumpFit {
  double alpha = 0;        // temporal exponent of F(t,0) ~ t^-alpha
  double alpha_stderr = 0;
  double D_fit = 0;        // Gaussian diffusivity of the spatial profile
  double D_spread = 0;     // spread of the per-snapshot D estimates
  double rss = 0;
  std::size_t n_time = 0;
  std::size_t n_space = 0;
};

/// Center-decay and Gaussian-profile fit of F in the final zone over the
/// window [t1, t2]. Requires the convert-led high-conversion regime.
BumpFit fit_bump(const SimulationRecord& rec, double t1, double t2);

struct ZoneMeasurement {
  double t = 0;
  double sup_F = 0, inf_F = 0;
  double sup_C = 0, inf_C = 0;
  double sup_H = 0, inf_H = 0;
  double inf_FplusC = 0;
};

struct RegimeReport {
  RegimeLabel label;
  double c1 = 0;    // zone opening speed used
  double tol = 0;   // finite-time acceptance band
  std::vector<ZoneMeasurement> window;

  // Headline values at the last snapshot of the window.
  double C_target = 1, H_target = 0;
  double sup_abs_C_dev = 0;   // sup |C - C_target| over the zone
  double sup_abs_H_dev = 0;   // sup |H - H_target| over the zone
  double sup_F_all_x = 0;     // sup F over the whole grid
  double inf_FplusC_zone = 0;
  double sup_H_zone = 0;
  SpeedFit speed;             // C-front speed over the last third of the run

  bool convergence_checked = false;  // theorem clause applies (convert-led)
  bool ok_CH = true;
  bool ok_F_vanishes = true;
  bool ok_hair_trigger = true;
  bool ok_H_ceiling = true;
  bool pass = true;
};

/// Final-zone measurements over {|x| <= c1 t} for snapshots in [t1, t2],
/// with verdicts against the asymptotic predictions at tolerance `tol`.
RegimeReport final_zone_report(const SimulationRecord& rec, double c1, double t1, double t2,
                               double tol = 0.05);

struct PeakSample {
  double t = 0, x_peak = 0, peak = 0;
};

struct FrontPeakSeries {
  std::vector<PeakSample> samples;
  /// Smallest near-front maximum of F over snapshots in [t1, t2].
  double infimum_over(double t1, double t2) const;
};

/// Max of F over the moving window [x_front(C,0.1)-30, x_front(F,0.01)+30]
/// per snapshot. Requires a > 1+s (the front-peak hypothesis).
FrontPeakSeries front_peak_series(const SimulationRecord& rec);

struct LeadingEdgeReport {
  struct Sample {
    double t = 0;
    double sup_CH = 0;  // sup over |x| >= c2 t of C + |1-H|
    double sup_F = 0;   // sup over |x| >= c1 t of F
  };
  std::vector<Sample> samples;
  std::optional<double> rate_CH;  // fitted exponential decay rates
  std::optional<double> rate_F;
};

LeadingEdgeReport leading_edge_report(const SimulationRecord& rec, double c2, double c1);

enum class DecayQuantity { HFinalZone, CMinusOneFinalZone };

struct DecayFit {
  double rate = 0;  // slope of ln(sup) vs t; negative means decay
  double stderr = 0;
  std::size_t n = 0;
  bool decaying = false;
};

/// Exponential-decay fit of a final-zone quantity over {|x| <= c0 t} for
/// snapshots in [t1, t2]. Requires the high-conversion convert-led regime.
DecayFit exponential_decay_check(const SimulationRecord& rec, DecayQuantity q, double c0,
                                 double t1, double t2);

struct LyapunovSeries {
  struct Sample {
    double t = 0, phi = 0;
  };
  std::vector<Sample> samples;
  double final_value = 0;
  bool nonincreasing_late = false;  // over the last half of the samples
};

/// Spatial average of the relative-entropy functional over {|x| <= c1 t},
/// with C, H clamped into the interior of Sigma by 1e-12. Requires g < 1.
LyapunovSeries lyapunov_series(const SimulationRecord& rec, const ModelParams& m, double c1);

}  // namespace neolith
