#include "neolith/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "neolith/diagnostics.hpp"
#include "neolith/errors.hpp"
#include "neolith/numerics.hpp"

namespace neolith {

namespace {
constexpr double kClampThreshold = 1e-14;
}

void Grid1D::validate() const {
  if (!(x_min < x_max)) throw ValidationError("Grid1D: x_min < x_max required");
  if (n < 16) throw ValidationError("Grid1D: n >= 16 required");
}

void InitialSpec::validate() const {
  if (!(radius > 0)) throw ValidationError("InitialSpec: radius > 0 required");
  if (!(amplitude > 0 && amplitude <= 1))
    throw ValidationError("InitialSpec: amplitude in (0,1] required");
}

double InitialSpec::sample(double x) const {
  const double r = std::abs(x - center);
  if (r > radius) return 0.0;
  switch (shape) {
    case InitialShape::Indicator:
      return amplitude;
    case InitialShape::SmoothBump: {
      const double c = std::cos(0.5 * std::numbers::pi * r / radius);
      return amplitude * c * c;
    }
  }
  return 0.0;
}

const char* to_string(FieldSel f) {
  switch (f) {
    case FieldSel::F: return "F";
    case FieldSel::C: return "C";
    case FieldSel::H: return "H";
    case FieldSel::FplusC: return "F+C";
  }
  return "?";
}

void SolverConfig::validate(const Grid1D& grid, const ModelParams& m) const {
  if (!(dt > 0)) throw ValidationError("SolverConfig: dt > 0 required");
  if (!(t_end >= 0)) throw ValidationError("SolverConfig: t_end >= 0 required");
  if (!(front_interval > 0)) throw ValidationError("SolverConfig: front_interval > 0");
  if (!(reaction_scale >= 0 && reaction_scale <= 1))
    throw ValidationError("SolverConfig: reaction_scale in [0,1]");
  if (scheme == Scheme::Imex) {
    if (dt > 0.25) throw ValidationError("SolverConfig: imex requires dt <= 0.25");
  } else {
    const double dmax = std::max({1.0, m.d_c, m.d_h});
    const double cap = grid.dx() * grid.dx() / (2.0 * dmax);
    if (dt > cap)
      throw ValidationError("SolverConfig: explicit scheme requires dt <= dx^2/(2 max d) = " +
                            std::to_string(cap));
  }
  double prev = 0.0;
  for (double t : snapshot_times) {
    if (t < 0 || t > t_end + 1e-12)
      throw ValidationError("SolverConfig: snapshot time outside [0, t_end]");
    if (t < prev) throw ValidationError("SolverConfig: snapshot_times must be sorted");
    prev = t;
  }
}

FieldState init_state(const Grid1D& grid, const InitialSpec& spec) {
  grid.validate();
  spec.validate();
  if (!(spec.center - spec.radius > grid.x_min && spec.center + spec.radius < grid.x_max))
    throw ValidationError("init_state: initial support touches the domain boundary");
  FieldState s;
  s.t = 0;
  s.F.resize(std::size_t(grid.n));
  s.C.assign(std::size_t(grid.n), 0.0);
  s.H.assign(std::size_t(grid.n), 1.0);
  for (int i = 0; i < grid.n; ++i) s.F[std::size_t(i)] = spec.sample(grid.x(i));
  return s;
}

// ---------------------------------------------------------------------------
// Stepper
// ---------------------------------------------------------------------------

struct Stepper::Impl {
  ReflectedDiffusionSolve solveF, solveC, solveH;
  mutable std::vector<double> rF, rC, rH, lap;
};

Stepper::Stepper(const ModelParams& m, const Grid1D& grid, const SolverConfig& cfg)
    : m_(m), grid_(grid), cfg_(cfg), impl_(std::make_shared<Impl>()) {
  m.validate();
  grid.validate();
  cfg.validate(grid, m);
  const std::size_t n = std::size_t(grid.n);
  impl_->rF.assign(n, 0.0);
  impl_->rC.assign(n, 0.0);
  impl_->rH.assign(n, 0.0);
  if (cfg.scheme == Scheme::Imex) {
    const double h2 = grid.dx() * grid.dx();
    impl_->solveF = ReflectedDiffusionSolve(n, cfg.dt * 1.0 / h2);
    impl_->solveC = ReflectedDiffusionSolve(n, cfg.dt * m.d_c / h2);
    impl_->solveH = ReflectedDiffusionSolve(n, cfg.dt * m.d_h / h2);
  } else {
    impl_->lap.assign(n, 0.0);
  }
}

void Stepper::react(const FieldState& s, std::vector<double>& rF, std::vector<double>& rC,
                    std::vector<double>& rH) const {
  const std::size_t n = s.F.size();
  const double scale = cfg_.reaction_scale * cfg_.dt;
  const double a = m_.a, b = m_.b, sc = m_.s, g = m_.g;
  for (std::size_t i = 0; i < n; ++i) {
    const double F = s.F[i], C = s.C[i], H = s.H[i];
    const double niche = 1.0 - F - C;
    rF[i] = scale * (a * F * niche);
    rC[i] = scale * (C * niche + sc * H * (F + C));
    rH[i] = scale * (b * H * (1.0 - H - g * (F + C)));
  }
}

void Stepper::clamp_field(std::vector<double>& u, const char* name, double lo, double hi,
                          double t) const {
  const std::size_t n = u.size();
  for (std::size_t i = 0; i < n; ++i) {
    double v = u[i];
    if (v >= lo && v <= hi) continue;
    if (!std::isfinite(v))
      throw NumericalError(std::string("numerical instability: field ") + name +
                           " non-finite at node " + std::to_string(i) +
                           " t=" + std::to_string(t));
    if (v < lo) {
      if (lo - v < kClampThreshold) {
        u[i] = lo;
        ++clamped_;
        continue;
      }
    } else if (v - hi < kClampThreshold) {
      u[i] = hi;
      ++clamped_;
      continue;
    }
    throw NumericalError(std::string("numerical instability: field ") + name + " at node " +
                         std::to_string(i) + " value " + std::to_string(v) +
                         " t=" + std::to_string(t));
  }
}

void Stepper::advance(FieldState& s) const {
  auto& im = *impl_;
  react(s, im.rF, im.rC, im.rH);
  const std::size_t n = s.F.size();
  if (cfg_.scheme == Scheme::Imex) {
    for (std::size_t i = 0; i < n; ++i) s.F[i] += im.rF[i];
    for (std::size_t i = 0; i < n; ++i) s.C[i] += im.rC[i];
    for (std::size_t i = 0; i < n; ++i) s.H[i] += im.rH[i];
    im.solveF.solve_inplace(s.F);
    im.solveC.solve_inplace(s.C);
    im.solveH.solve_inplace(s.H);
  } else {
    const double h2 = grid_.dx() * grid_.dx();
    auto explicit_diffuse = [&](std::vector<double>& u, double d) {
      auto& lap = im.lap;
      lap[0] = 2.0 * (u[1] - u[0]);
      for (std::size_t i = 1; i + 1 < n; ++i) lap[i] = u[i - 1] - 2.0 * u[i] + u[i + 1];
      lap[n - 1] = 2.0 * (u[n - 2] - u[n - 1]);
      const double c = cfg_.dt * d / h2;
      for (std::size_t i = 0; i < n; ++i) u[i] += c * lap[i];
    };
    explicit_diffuse(s.F, 1.0);
    explicit_diffuse(s.C, m_.d_c);
    explicit_diffuse(s.H, m_.d_h);
    for (std::size_t i = 0; i < n; ++i) s.F[i] += im.rF[i];
    for (std::size_t i = 0; i < n; ++i) s.C[i] += im.rC[i];
    for (std::size_t i = 0; i < n; ++i) s.H[i] += im.rH[i];
  }
  const double t_next = s.t + cfg_.dt;
  clamp_field(s.F, "F", 0.0, std::numeric_limits<double>::infinity(), t_next);
  clamp_field(s.C, "C", 0.0, std::numeric_limits<double>::infinity(), t_next);
  clamp_field(s.H, "H", 0.0, 1.0, t_next);
  s.t = t_next;
}

FieldState step(const FieldState& state, const ModelParams& m, const Grid1D& grid,
                const SolverConfig& cfg) {
  Stepper st(m, grid, cfg);
  FieldState out = state;
  st.advance(out);
  return out;
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

const FrontSeries& SimulationRecord::front(FieldSel f) const {
  for (const auto& fs : fronts)
    if (fs.field == f) return fs;
  throw ValidationError(std::string("SimulationRecord: no front series for field ") +
                        to_string(f));
}

const FieldState& SimulationRecord::snapshot_at(double t) const {
  if (snapshots.empty()) throw ValidationError("SimulationRecord: no snapshots");
  const FieldState* best = &snapshots.front();
  for (const auto& s : snapshots)
    if (std::abs(s.t - t) < std::abs(best->t - t)) best = &s;
  return *best;
}

namespace {

void guard_boundary(const Grid1D& grid, const InitialSpec& spec, double c_star, double t_end) {
  const double margin = 0.1 * 0.5 * (grid.x_max - grid.x_min);
  const double reach_r = spec.center + spec.radius + c_star * t_end;
  const double reach_l = spec.center - spec.radius - c_star * t_end;
  if (reach_r > grid.x_max - margin || reach_l < grid.x_min + margin)
    throw ValidationError(
        "run: fronts projected to reach within 10% of the boundary by t_end; "
        "enlarge the domain (need roughly |x| <= " +
        std::to_string(std::max(reach_r, -reach_l) / 0.9) + ")");
}

void record_fronts(std::vector<FrontSeries>& fronts, const FieldState& s, const Grid1D& grid) {
  for (auto& fs : fronts) {
    if (auto x = front_position(s, grid, fs.field, fs.level))
      fs.samples.push_back({s.t, *x});
  }
}

}  // namespace

SimulationRecord run(const ModelParams& m, const Grid1D& grid, const InitialSpec& spec,
                     const SolverConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  SimulationRecord rec;
  rec.params = m;
  rec.derived = derived_constants(m);
  rec.grid = grid;
  rec.initial = spec;
  rec.config = cfg;

  guard_boundary(grid, spec, rec.derived.c_star, cfg.t_end);

  FieldState state = init_state(grid, spec);
  Stepper st(m, grid, cfg);

  rec.fronts = {FrontSeries{FieldSel::F, 0.5, {}},
                FrontSeries{FieldSel::C, 0.5, {}},
                FrontSeries{FieldSel::FplusC, 0.5, {}},
                FrontSeries{FieldSel::H, 0.5, {}}};

  auto& inv = rec.invariants;
  inv.min_F = inv.min_C = inv.min_H = std::numeric_limits<double>::infinity();
  inv.max_H = -std::numeric_limits<double>::infinity();
  auto note_snapshot = [&](const FieldState& s) {
    for (double v : s.F) inv.min_F = std::min(inv.min_F, v);
    for (double v : s.C) inv.min_C = std::min(inv.min_C, v);
    for (double v : s.H) {
      inv.min_H = std::min(inv.min_H, v);
      inv.max_H = std::max(inv.max_H, v);
    }
    rec.snapshots.push_back(s);
  };

  note_snapshot(state);
  record_fronts(rec.fronts, state, grid);

  const long n_steps = std::lround(cfg.t_end / cfg.dt);
  const long stride = std::max(1L, std::lround(cfg.front_interval / cfg.dt));
  std::size_t next_snap = 0;
  while (next_snap < cfg.snapshot_times.size() && cfg.snapshot_times[next_snap] <= cfg.dt * 0.5)
    ++next_snap;  // t = 0 is always captured above

  for (long i = 1; i <= n_steps; ++i) {
    st.advance(state);
    state.t = cfg.dt * double(i);  // avoid accumulated roundoff in timestamps
    if (i % stride == 0) record_fronts(rec.fronts, state, grid);
    while (next_snap < cfg.snapshot_times.size() &&
           cfg.snapshot_times[next_snap] <= state.t + 0.5 * cfg.dt) {
      note_snapshot(state);
      ++next_snap;
    }
  }

  inv.clamped_values = st.clamped();
  inv.bounds_ok = inv.min_F >= 0 && inv.min_C >= 0 && inv.min_H >= 0 && inv.max_H <= 1.0;
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

// ---------------------------------------------------------------------------
// scalar KPP calibration
// ---------------------------------------------------------------------------

KppResult scalar_kpp_run(double d, double r, const Grid1D& grid, const InitialSpec& spec,
                         const SolverConfig& cfg) {
  grid.validate();
  if (!(d > 0) || !(r >= 0)) throw ValidationError("scalar_kpp_run: d > 0 and r >= 0 required");
  if (!(cfg.dt > 0) || (cfg.scheme == Scheme::Imex && cfg.dt > 0.25))
    throw ValidationError("scalar_kpp_run: invalid dt");
  if (!(spec.amplitude >= 0 && spec.amplitude <= 1))
    throw ValidationError("scalar_kpp_run: amplitude in [0,1]");

  const double c_star = 2.0 * std::sqrt(d * r);
  guard_boundary(grid, spec, c_star, cfg.t_end);

  const std::size_t n = std::size_t(grid.n);
  std::vector<double> u(n);
  for (int i = 0; i < grid.n; ++i)
    u[std::size_t(i)] = spec.amplitude > 0 ? spec.sample(grid.x(i)) : 0.0;

  const double h2 = grid.dx() * grid.dx();
  ReflectedDiffusionSolve solve(n, cfg.dt * d / h2);

  KppResult res;
  res.front.field = FieldSel::F;
  res.front.level = 0.5;

  FieldState probe;  // front_position works on FieldState; reuse F slot
  probe.C.assign(n, 0.0);
  probe.H.assign(n, 1.0);

  const long n_steps = std::lround(cfg.t_end / cfg.dt);
  const long stride = std::max(1L, std::lround(cfg.front_interval / cfg.dt));
  auto record = [&](double t) {
    probe.t = t;
    probe.F = u;
    if (auto x = front_position(probe, grid, FieldSel::F, res.front.level))
      res.front.samples.push_back({t, *x});
  };
  record(0.0);
  for (long i = 1; i <= n_steps; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = u[j];
      u[j] = v + cfg.dt * cfg.reaction_scale * r * v * (1.0 - v);
    }
    solve.solve_inplace(u);
    for (std::size_t j = 0; j < n; ++j)
      if (u[j] < 0 && u[j] > -kClampThreshold) u[j] = 0;
    if (i % stride == 0) record(cfg.dt * double(i));
  }

  // Fit the speed over the last third of the horizon.
  std::vector<double> ts, xs;
  for (const auto& sm : res.front.samples)
    if (sm.t >= 2.0 / 3.0 * cfg.t_end) {
      ts.push_back(sm.t);
      xs.push_back(sm.x);
    }
  if (ts.size() >= 10) {
    const auto fit = fit_line(ts, xs);
    res.speed = fit.slope;
    res.stderr = fit.slope_stderr;
  }
  return res;
}

}  // namespace neolith
