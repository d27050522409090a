#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "neolith/model.hpp"

namespace neolith {

/// Uniform node-centered 1D grid including both endpoints.
struct Grid1D {
  double x_min = -100, x_max = 100;
  int n = 2001;

  double dx() const { return (x_max - x_min) / double(n - 1); }
  double x(int i) const { return x_min + dx() * double(i); }
  void validate() const;  // x_min < x_max, n >= 16
};

/// Time-stamped discrete fields on the grid nodes.
struct FieldState {
  double t = 0;
  std::vector<double> F, C, H;
};

enum class InitialShape { Indicator, SmoothBump };

/// Compactly supported farmer seed; C starts at 0 and H at 1 everywhere.
struct InitialSpec {
  InitialShape shape = InitialShape::Indicator;
  double center = 0;
  double radius = 1;
  double amplitude = 1;

  void validate() const;
  double sample(double x) const;  // F0 at one point
};

enum class Scheme { Imex, Explicit };

struct SolverConfig {
  double dt = 0.02;
  Scheme scheme = Scheme::Imex;
  double t_end = 0;
  std::vector<double> snapshot_times;  // sorted, within [0, t_end]
  double front_interval = 0.5;         // front sampling cadence
  double reaction_scale = 1.0;         // test hook: 0 disables all reaction terms
  // Boundary is always reflecting (zero-flux).

  void validate(const Grid1D& grid, const ModelParams& m) const;
};

enum class FieldSel : std::uint8_t { F, C, H, FplusC };
const char* to_string(FieldSel f);

struct FrontSample {
  double t = 0, x = 0;
};

/// Rightmost level crossings of one field over time. For H the level applies
/// to the deficit 1 - H (the invasion front of the hunter decline).
struct FrontSeries {
  FieldSel field = FieldSel::C;
  double level = 0.5;
  std::vector<FrontSample> samples;
};

struct InvariantSummary {
  double min_F = 0, min_C = 0, min_H = 0, max_H = 0;
  long clamped_values = 0;  // count of roundoff clamps applied while stepping
  bool bounds_ok = true;    // F,C >= 0 and 0 <= H <= 1 at all snapshots
};

struct SimulationRecord {
  ModelParams params;
  DerivedConstants derived;
  Grid1D grid;
  InitialSpec initial;
  SolverConfig config;
  std::vector<FieldState> snapshots;
  std::vector<FrontSeries> fronts;
  InvariantSummary invariants;
  double wall_seconds = 0;

  const FrontSeries& front(FieldSel f) const;
  const FieldState& snapshot_at(double t) const;  // nearest by time
};

/// F sampled from the spec, C identically zero, H identically one, t = 0.
FieldState init_state(const Grid1D& grid, const InitialSpec& spec);

/// Advance the state by one dt in place (used by run(); cheapest path).
class Stepper {
 public:
  Stepper(const ModelParams& m, const Grid1D& grid, const SolverConfig& cfg);
  void advance(FieldState& state) const;
  long clamped() const { return clamped_; }

 private:
  void react(const FieldState& s, std::vector<double>& rF, std::vector<double>& rC,
             std::vector<double>& rH) const;
  void clamp_field(std::vector<double>& u, const char* name, double lo, double hi,
                   double t) const;

  ModelParams m_;
  Grid1D grid_;
  SolverConfig cfg_;
  // Pre-factored (I - dt*d*L) per field for the imex scheme.
  struct Impl;
  std::shared_ptr<Impl> impl_;
  mutable long clamped_ = 0;
};

/// Pure single-step operation: returns the advanced copy.
FieldState step(const FieldState& state, const ModelParams& m, const Grid1D& grid,
                const SolverConfig& cfg);

/// Full experiment: repeated stepping with snapshot capture, front recording
/// every cfg.front_interval, and a pre-flight boundary-contamination guard.
SimulationRecord run(const ModelParams& m, const Grid1D& grid, const InitialSpec& spec,
                     const SolverConfig& cfg);

struct KppResult {
  std::optional<double> speed;  // absent when no front ever forms
  double stderr = 0;
  FrontSeries front;
};

/// Scalar KPP calibration: integrates u_t = d u_xx + r u(1-u) from a compact
/// seed and fits the front speed on the last third of [0, t_end].
KppResult scalar_kpp_run(double d, double r, const Grid1D& grid, const InitialSpec& spec,
                         const SolverConfig& cfg);

}  // namespace neolith
