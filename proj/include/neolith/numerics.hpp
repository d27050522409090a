#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace neolith {

/// Scaled complementary error function e^{z^2} erfc(z), overflow-safe for
/// large positive z. Callers handle negative arguments via erfc directly.
double erfcx(double z);

/// Ordinary least squares y = slope*x + intercept.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double rss = 0.0;  // residual sum of squares
  std::size_t n = 0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Solver for (I - mu*L) u = rhs where L is the zero-flux second-difference
/// operator on a uniform grid (ghost-node reflection at both ends). The
/// matrix is factored once; solve() is O(n) per right-hand side.
///
/// Elimination runs from both ends toward the middle, so a symmetric
/// right-hand side produces a bitwise symmetric solution.
class ReflectedDiffusionSolve {
 public:
  ReflectedDiffusionSolve() = default;
  ReflectedDiffusionSolve(std::size_t n, double mu);

  void solve_inplace(std::span<double> u) const;

  double mu() const { return mu_; }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_ = 0;
  double mu_ = 0.0;
  std::size_t kl_ = 0, kr_ = 0;   // meeting indices (equal when n is odd)
  std::vector<double> bl_, br_;   // eliminated diagonals from each end
  std::vector<double> wl_, wr_;   // elimination multipliers
  mutable std::vector<double> dl_, dr_;
};

/// Banded LU with partial pivoting, lower bandwidth `kl`, upper `ku`.
/// Row-major band storage: band[i*(kl+2*ku+1) + (j - i + kl + ku)] = A(i,j).
class BandedLU {
 public:
  BandedLU(std::size_t n, int kl, int ku);

  double& at(std::size_t i, std::size_t j);
  void factor();
  void solve_inplace(std::span<double> rhs) const;

 private:
  std::size_t n_;
  int kl_, ku_, width_;
  std::vector<double> band_;
  std::vector<int> piv_;
  bool factored_ = false;
};

}  // namespace neolith
