#pragma once

#include <array>
#include <optional>
#include <vector>

namespace neolith {

/// Dimensional parameters of the original nine-parameter system.
struct OriginalParams {
  double D_f = 1, D_c = 1, D_h = 1;  // diffusion coefficients
  double r_f = 1, r_c = 1, r_h = 1;  // intrinsic growth rates
  double K = 1, L = 1;               // carrying capacities
  double e = 1;                      // conversion rate

  void validate() const;  // all nine strictly positive
};

/// Dimensionless parameters (a, b, s, g, d_c, d_h), all strictly positive.
struct ModelParams {
  double a = 1, b = 1, s = 1, g = 1, d_c = 1, d_h = 1;

  void validate() const;
  /// a == d_c(1+s) within relative tolerance; the asymptotic results exclude
  /// this case.
  bool critical_speed(double rel_tol = 1e-9) const;
  /// g == 1 within tolerance; the coexistence state degenerates here.
  bool critical_conversion(double tol = 1e-9) const;
};

/// Speeds, steady-state levels and decay exponents implied by ModelParams.
/// C_star/H_star/nu exist only in the low conversion case g < 1.
struct DerivedConstants {
  double c_f = 0;      // 2 sqrt(a)
  double c_c = 0;      // 2 sqrt(d_c (1+s))
  double c_star = 0;   // max(c_f, c_c)
  double k_star = 0;   // min(1/(2 d_c), d_c/2)
  double d_star = 0;   // max(1, d_c)
  std::optional<double> C_star, H_star, nu;
};

enum class Conversion { High, Low, Critical };
enum class SpeedOrder { FarmerLed, ConvertLed, Critical };

struct RegimeLabel {
  Conversion conversion = Conversion::High;
  SpeedOrder speed_order = SpeedOrder::FarmerLed;
  bool is_critical() const {
    return conversion == Conversion::Critical || speed_order == SpeedOrder::Critical;
  }
};

const char* to_string(Conversion c);
const char* to_string(SpeedOrder s);

ModelParams nondimensionalize(const OriginalParams& p);
DerivedConstants derived_constants(const ModelParams& m);
RegimeLabel classify_regime(const ModelParams& m, double rel_tol = 1e-9);

struct ReactionRates {
  double dF = 0, dC = 0, dH = 0;
};

/// Reaction terms of the three-component system at one point.
ReactionRates reaction_rhs(double F, double C, double H, const ModelParams& m);

/// The steady states: two isolated points, the neutral segment F+C = 1
/// (represented by its endpoints), and the coexistence state iff g < 1.
struct SteadyStateSet {
  std::array<double, 3> extinct{0, 0, 0};
  std::array<double, 3> hunters_only{0, 0, 1};
  std::array<double, 3> segment_farmer_end{1, 0, 0};
  std::array<double, 3> segment_convert_end{0, 1, 0};
  std::optional<std::array<double, 3>> coexistence;
};

SteadyStateSet steady_states(const ModelParams& m);

struct OdeSample {
  double t = 0, C = 0, H = 0;
};

/// RK4 integration of C' = C(1-C) + sCH, H' = bH(1-H-gC) with raw
/// coefficients (no parameter validation; used by tests with degenerate
/// couplings).
std::vector<OdeSample> integrate_ode_raw(double C0, double H0, double b, double s,
                                         double g, double dt, double T);

/// Classical 4th-order integration of the spatially homogeneous system on
/// Sigma = {0 < C < 1+s, 0 < H < 1}. Samples every step including t = 0.
std::vector<OdeSample> ode_trajectory(double C0, double H0, const ModelParams& m,
                                      double dt, double T);

/// Relative entropy functional
///   Phi = b g (C - C* - C* ln(C/C*)) + s (H - H* - H* ln(H/H*)),
/// zero exactly at (C*, H*), positive elsewhere on Sigma. Requires g < 1.
double lyapunov(double C, double H, const ModelParams& m);

/// d/dt of lyapunov along the homogeneous flow: -bg(C-C*)^2 - bs(H-H*)^2.
double lyapunov_dissipation(double C, double H, const ModelParams& m);

}  // namespace neolith
