#include "neolith/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "neolith/errors.hpp"

namespace neolith {

void OriginalParams::validate() const {
  const double vals[] = {D_f, D_c, D_h, r_f, r_c, r_h, K, L, e};
  const char* names[] = {"D_f", "D_c", "D_h", "r_f", "r_c", "r_h", "K", "L", "e"};
  for (int i = 0; i < 9; ++i)
    if (!(vals[i] > 0.0) || !std::isfinite(vals[i]))
      throw ValidationError(std::string("OriginalParams: ") + names[i] +
                            " must be strictly positive");
}

void ModelParams::validate() const {
  const double vals[] = {a, b, s, g, d_c, d_h};
  const char* names[] = {"a", "b", "s", "g", "d_c", "d_h"};
  for (int i = 0; i < 6; ++i)
    if (!(vals[i] > 0.0) || !std::isfinite(vals[i]))
      throw ValidationError(std::string("ModelParams: ") + names[i] +
                            " must be strictly positive");
}

bool ModelParams::critical_speed(double rel_tol) const {
  const double rhs = d_c * (1.0 + s);
  return std::abs(a - rhs) < rel_tol * std::max(a, rhs);
}

bool ModelParams::critical_conversion(double tol) const {
  return std::abs(g - 1.0) < tol;
}

const char* to_string(Conversion c) {
  switch (c) {
    case Conversion::High: return "High";
    case Conversion::Low: return "Low";
    case Conversion::Critical: return "Critical";
  }
  return "?";
}

const char* to_string(SpeedOrder s) {
  switch (s) {
    case SpeedOrder::FarmerLed: return "FarmerLed";
    case SpeedOrder::ConvertLed: return "ConvertLed";
    case SpeedOrder::Critical: return "Critical";
  }
  return "?";
}

ModelParams nondimensionalize(const OriginalParams& p) {
  p.validate();
  ModelParams m;
  m.a = p.r_f / p.r_c;
  m.b = p.r_h / p.r_c;
  m.s = p.e * p.L / p.r_c;
  m.g = p.e * p.K / p.r_h;
  m.d_c = p.D_c / p.D_f;
  m.d_h = p.D_h / p.D_f;
  return m;
}

DerivedConstants derived_constants(const ModelParams& m) {
  m.validate();
  DerivedConstants d;
  d.c_f = 2.0 * std::sqrt(m.a);
  d.c_c = 2.0 * std::sqrt(m.d_c * (1.0 + m.s));
  d.c_star = std::max(d.c_f, d.c_c);
  d.k_star = std::min(1.0 / (2.0 * m.d_c), m.d_c / 2.0);
  d.d_star = std::max(1.0, m.d_c);
  if (m.g < 1.0) {
    d.C_star = (1.0 + m.s) / (1.0 + m.s * m.g);
    d.H_star = (1.0 - m.g) / (1.0 + m.s * m.g);
    d.nu = std::min(*d.C_star, m.b * *d.H_star);
  }
  return d;
}

RegimeLabel classify_regime(const ModelParams& m, double rel_tol) {
  m.validate();
  if (rel_tol < 0) throw ValidationError("classify_regime: tol must be >= 0");
  RegimeLabel r;
  if (m.critical_conversion(rel_tol))
    r.conversion = Conversion::Critical;
  else
    r.conversion = m.g >= 1.0 ? Conversion::High : Conversion::Low;
  if (m.critical_speed(rel_tol))
    r.speed_order = SpeedOrder::Critical;
  else
    r.speed_order = m.a > m.d_c * (1.0 + m.s) ? SpeedOrder::FarmerLed
                                              : SpeedOrder::ConvertLed;
  return r;
}

ReactionRates reaction_rhs(double F, double C, double H, const ModelParams& m) {
  ReactionRates r;
  const double niche = 1.0 - F - C;
  r.dF = m.a * F * niche;
  r.dC = C * niche + m.s * H * (F + C);
  r.dH = m.b * H * (1.0 - H - m.g * (F + C));
  return r;
}

SteadyStateSet steady_states(const ModelParams& m) {
  m.validate();
  SteadyStateSet set;
  if (m.g < 1.0) {
    const double C = (1.0 + m.s) / (1.0 + m.s * m.g);
    const double H = (1.0 - m.g) / (1.0 + m.s * m.g);
    set.coexistence = std::array<double, 3>{0.0, C, H};
  }
  return set;
}

namespace {
struct OdeRhs {
  double b, s, g;
  void operator()(double C, double H, double& dC, double& dH) const {
    dC = C * (1.0 - C) + s * C * H;
    dH = b * H * (1.0 - H - g * C);
  }
};
}  // namespace

std::vector<OdeSample> integrate_ode_raw(double C0, double H0, double b, double s,
                                         double g, double dt, double T) {
  if (!(dt > 0) || !(T >= 0)) throw ValidationError("integrate_ode_raw: dt > 0, T >= 0 required");
  const OdeRhs f{b, s, g};
  const long n_steps = std::lround(T / dt);
  std::vector<OdeSample> out;
  out.reserve(std::size_t(n_steps) + 1);
  double C = C0, H = H0;
  out.push_back({0.0, C, H});
  for (long i = 0; i < n_steps; ++i) {
    double k1C, k1H, k2C, k2H, k3C, k3H, k4C, k4H;
    f(C, H, k1C, k1H);
    f(C + 0.5 * dt * k1C, H + 0.5 * dt * k1H, k2C, k2H);
    f(C + 0.5 * dt * k2C, H + 0.5 * dt * k2H, k3C, k3H);
    f(C + dt * k3C, H + dt * k3H, k4C, k4H);
    C += dt / 6.0 * (k1C + 2.0 * k2C + 2.0 * k3C + k4C);
    H += dt / 6.0 * (k1H + 2.0 * k2H + 2.0 * k3H + k4H);
    out.push_back({double(i + 1) * dt, C, H});
  }
  return out;
}

std::vector<OdeSample> ode_trajectory(double C0, double H0, const ModelParams& m,
                                      double dt, double T) {
  m.validate();
  if (!(dt > 0) || dt > 0.01) throw ValidationError("ode_trajectory: require 0 < dt <= 0.01");
  if (!(T > 0)) throw ValidationError("ode_trajectory: require T > 0");
  if (!(C0 > 0 && C0 < 1.0 + m.s && H0 > 0 && H0 < 1.0))
    throw std::domain_error("ode_trajectory: initial point outside Sigma");
  auto path = integrate_ode_raw(C0, H0, m.b, m.s, m.g, dt, T);
  for (const auto& p : path) {
    if (!(p.C > 0 && p.C < 1.0 + m.s && p.H > 0 && p.H < 1.0))
      throw NumericalError("ode_trajectory: sample left Sigma at t=" + std::to_string(p.t));
  }
  return path;
}

namespace {
void require_interior(double C, double H, const ModelParams& m) {
  if (!(m.g < 1.0))
    throw ValidationError("lyapunov: unsupported for g >= 1 (no coexistence state)");
  if (!(C > 0) || !(H > 0)) throw std::domain_error("lyapunov: require C > 0 and H > 0");
}
}  // namespace

double lyapunov(double C, double H, const ModelParams& m) {
  require_interior(C, H, m);
  const auto d = derived_constants(m);
  const double Cs = *d.C_star, Hs = *d.H_star;
  const double termC = C - Cs - Cs * std::log(C / Cs);
  const double termH = H - Hs - Hs * std::log(H / Hs);
  return m.b * m.g * termC + m.s * termH;
}

double lyapunov_dissipation(double C, double H, const ModelParams& m) {
  require_interior(C, H, m);
  const auto d = derived_constants(m);
  const double dC = C - *d.C_star, dH = H - *d.H_star;
  return -m.b * m.g * dC * dC - m.b * m.s * dH * dH;
}

}  // namespace neolith
