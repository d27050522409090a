#include "neolith/numerics.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace neolith {

double erfcx(double z) {
  if (z < 0.0) throw std::domain_error("erfcx: negative argument not supported");
  if (z < 25.0) return std::exp(z * z) * std::erfc(z);
  // Asymptotic series 1/(z*sqrt(pi)) * sum (-1)^k (2k-1)!!/(2 z^2)^k.
  const double inv2z2 = 1.0 / (2.0 * z * z);
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 6; ++k) {
    term *= -(2 * k - 1) * inv2z2;
    sum += term;
  }
  return sum / (z * 1.7724538509055160273);
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("fit_line: need at least 2 points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
  mx /= double(n); my /= double(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LinearFit f;
  f.n = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    f.rss += r * r;
  }
  f.slope_stderr = (n > 2) ? std::sqrt(f.rss / double(n - 2) / sxx) : 0.0;
  return f;
}

// ---------------------------------------------------------------------------
// ReflectedDiffusionSolve
//
// Matrix rows for (I - mu*L):
//   row 0:     (1+2mu) u0 - 2mu u1
//   interior:  -mu u_{i-1} + (1+2mu) u_i - mu u_{i+1}
//   row n-1:   -2mu u_{n-2} + (1+2mu) u_{n-1}
// ---------------------------------------------------------------------------

namespace {
inline double upper_of(std::size_t i, double mu) { return i == 0 ? -2.0 * mu : -mu; }
inline double lower_of(std::size_t i, std::size_t n, double mu) {
  return i == n - 1 ? -2.0 * mu : -mu;
}
}  // namespace

ReflectedDiffusionSolve::ReflectedDiffusionSolve(std::size_t n, double mu)
    : n_(n), mu_(mu) {
  if (n < 3) throw std::invalid_argument("ReflectedDiffusionSolve: n < 3");
  const double diag = 1.0 + 2.0 * mu;
  bl_.assign(n, 0.0);
  br_.assign(n, 0.0);
  wl_.assign(n, 0.0);
  wr_.assign(n, 0.0);
  dl_.assign(n, 0.0);
  dr_.assign(n, 0.0);
  if (n % 2 == 1) {
    kl_ = kr_ = (n - 1) / 2;
  } else {
    kl_ = n / 2 - 1;
    kr_ = n / 2;
  }
  bl_[0] = diag;
  for (std::size_t i = 1; i < kl_; ++i) {
    wl_[i] = lower_of(i, n, mu) / bl_[i - 1];
    bl_[i] = diag - wl_[i] * upper_of(i - 1, mu);
  }
  br_[n - 1] = diag;
  for (std::size_t i = n - 2; i > kr_; --i) {
    wr_[i] = upper_of(i, mu) / br_[i + 1];
    br_[i] = diag - wr_[i] * lower_of(i + 1, n, mu);
  }
  if (kl_ == kr_) {
    const std::size_t k = kl_;
    wl_[k] = lower_of(k, n, mu) / bl_[k - 1];
    wr_[k] = upper_of(k, mu) / br_[k + 1];
    bl_[k] = diag - wl_[k] * upper_of(k - 1, mu) - wr_[k] * lower_of(k + 1, n, mu);
  } else {
    wl_[kl_] = lower_of(kl_, n, mu) / bl_[kl_ - 1];
    bl_[kl_] = diag - wl_[kl_] * upper_of(kl_ - 1, mu);
    wr_[kr_] = upper_of(kr_, mu) / br_[kr_ + 1];
    br_[kr_] = diag - wr_[kr_] * lower_of(kr_ + 1, n, mu);
  }
}

void ReflectedDiffusionSolve::solve_inplace(std::span<double> u) const {
  assert(u.size() == n_);
  const std::size_t n = n_;
  const double mu = mu_;
  double* dl = dl_.data();
  double* dr = dr_.data();
  dl[0] = u[0];
  for (std::size_t i = 1; i < kl_; ++i) dl[i] = u[i] - wl_[i] * dl[i - 1];
  dr[n - 1] = u[n - 1];
  for (std::size_t i = n - 2; i > kr_; --i) dr[i] = u[i] - wr_[i] * dr[i + 1];

  if (kl_ == kr_) {
    const std::size_t k = kl_;
    const double dk = u[k] - wl_[k] * dl[k - 1] - wr_[k] * dr[k + 1];
    u[k] = dk / bl_[k];
    for (std::size_t i = k; i-- > 0;) u[i] = (dl[i] - upper_of(i, mu) * u[i + 1]) / bl_[i];
    for (std::size_t i = k + 1; i < n; ++i) u[i] = (dr[i] - lower_of(i, n, mu) * u[i - 1]) / br_[i];
  } else {
    const double dcl = u[kl_] - wl_[kl_] * dl[kl_ - 1];
    const double dcr = u[kr_] - wr_[kr_] * dr[kr_ + 1];
    const double cu = upper_of(kl_, mu), clw = lower_of(kr_, n, mu);
    const double det = bl_[kl_] * br_[kr_] - cu * clw;
    u[kl_] = (dcl * br_[kr_] - cu * dcr) / det;
    u[kr_] = (bl_[kl_] * dcr - clw * dcl) / det;
    for (std::size_t i = kl_; i-- > 0;) u[i] = (dl[i] - upper_of(i, mu) * u[i + 1]) / bl_[i];
    for (std::size_t i = kr_ + 1; i < n; ++i) u[i] = (dr[i] - lower_of(i, n, mu) * u[i - 1]) / br_[i];
  }
}

// ---------------------------------------------------------------------------
// BandedLU
// ---------------------------------------------------------------------------

BandedLU::BandedLU(std::size_t n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), width_(2 * kl + ku + 1) {
  // Row i stores columns i-kl .. i+ku+kl; the extra kl upper diagonals absorb
  // fill-in from pivot row swaps.
  band_.assign(n_ * std::size_t(width_), 0.0);
  piv_.assign(n_, 0);
}

double& BandedLU::at(std::size_t i, std::size_t j) {
  const long off = long(j) - long(i) + kl_;
  assert(off >= 0 && off < width_);
  return band_[i * std::size_t(width_) + std::size_t(off)];
}

void BandedLU::factor() {
  // Row-oriented banded LU with partial pivoting (row swaps within the band).
  const long n = long(n_);
  auto entry = [&](long i, long j) -> double& {
    return band_[std::size_t(i) * std::size_t(width_) + std::size_t(j - i + kl_)];
  };
  for (long col = 0; col < n; ++col) {
    long last = std::min(n - 1, col + kl_);
    long p = col;
    double best = std::abs(entry(col, col));
    for (long r = col + 1; r <= last; ++r) {
      const double v = std::abs(entry(r, col));
      if (v > best) { best = v; p = r; }
    }
    piv_[std::size_t(col)] = int(p);
    if (best == 0.0) throw std::runtime_error("BandedLU: singular matrix");
    if (p != col) {
      for (long j = col; j <= std::min(n - 1, col + kl_ + ku_); ++j)
        std::swap(entry(col, j), entry(p, j));
    }
    const double pivot = entry(col, col);
    for (long r = col + 1; r <= last; ++r) {
      const double m = entry(r, col) / pivot;
      entry(r, col) = m;
      for (long j = col + 1; j <= std::min(n - 1, col + kl_ + ku_); ++j)
        entry(r, j) -= m * entry(col, j);
    }
  }
  factored_ = true;
}

void BandedLU::solve_inplace(std::span<double> rhs) const {
  assert(factored_ && rhs.size() == n_);
  const long n = long(n_);
  auto entry = [&](long i, long j) -> double {
    return band_[std::size_t(i) * std::size_t(width_) + std::size_t(j - i + kl_)];
  };
  for (long col = 0; col < n; ++col) {
    const long p = piv_[std::size_t(col)];
    if (p != col) std::swap(rhs[std::size_t(col)], rhs[std::size_t(p)]);
    const long last = std::min(n - 1, col + kl_);
    for (long r = col + 1; r <= last; ++r)
      rhs[std::size_t(r)] -= entry(r, col) * rhs[std::size_t(col)];
  }
  for (long i = n - 1; i >= 0; --i) {
    double v = rhs[std::size_t(i)];
    const long last = std::min(n - 1, i + kl_ + ku_);
    for (long j = i + 1; j <= last; ++j) v -= entry(i, j) * rhs[std::size_t(j)];
    rhs[std::size_t(i)] = v / entry(i, i);
  }
}

}  // namespace neolith
