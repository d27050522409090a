#pragma once

#include <vector>

namespace neolith {

/// G(t,x) = exp(-x^2/(4t)) / sqrt(4 pi t); unit mass for every t > 0.
double heat_kernel(double t, double x);

/// Two-sided exponential initial profile B1 e^{-q|x|} evolved by u_t = D u_xx.
struct HeatProfileSpec {
  double B1 = 1;
  double q = 0.5;
  double diffusivity = 1;

  void validate() const;
};

struct HeatEval {
  double value = 0, dt = 0, dx = 0, dxx = 0;
};

/// Closed form via the scaled complementary error function; stable for large
/// q^2 t where the literal e^{q^2 t} expression overflows.
HeatEval heat_solution_alpha_eval(double t, double x, const HeatProfileSpec& spec);
double heat_solution_alpha(double t, double x, const HeatProfileSpec& spec);

/// Heat evolution (unit diffusivity) of B2 * indicator(-1,1).
HeatEval heat_solution_indicator_eval(double t, double x, double B2);

/// Principal Dirichlet eigenfunction of -d^2/dx^2 on (-R, R), sup-normalized:
/// cos(pi x/(2R)) inside, 0 outside. Eigenvalue pi^2/(4R^2).
double eigenfunction_phi(double R, double x);
double eigenvalue_mu(double R);

/// Monotone traveling front of d_c V'' + c1 V' + V(1-V) = 0 with V(-inf)=1,
/// V(inf)=0, phase pinned by V(0) = 1/2. Outside the sampled interval the
/// tails continue by their exponential asymptotics.
struct TravelingWave {
  double d_c = 1, c1 = 3;
  double lambda1 = 0;            // characteristic root at the V=1 tail
  double lambda_plus = 0;        // characteristic root at the V=0 tail
  double lambda1_fitted = 0;     // log-slope regressions on the computed tails
  double lambda_plus_fitted = 0;
  double M1 = 0;                 // tail prefactor 1-V ~ M1 e^{lambda1 xi}
  double M_plus = 0;             // V ~ M_plus e^{-lambda_plus xi}
  double xi0 = 0, h = 0;
  std::vector<double> V, Vp;

  double xi_min() const { return xi0; }
  double xi_max() const { return xi0 + h * double(V.size() - 1); }
  double value(double xi) const;
  double derivative(double xi) const;
  double second_derivative(double xi) const;  // through the profile equation
};

/// Newton collocation on [-L, L] from a logistic initial guess. The left tail
/// carries a Robin condition from the linearization at V=1; the V=0 tail needs
/// none (both of its modes decay) and its equation slot pins the phase.
/// half_width = 0 selects L = 40 / min(lambda1, lambda_plus).
TravelingWave solve_traveling_wave(double d_c, double c1, double half_width = 0,
                                   double tol = 1e-12);

}  // namespace neolith
