// Test-only oracles, independent of the implementation paths they check.
#ifndef CONELAB_TEST_ORACLES_HPP
#define CONELAB_TEST_ORACLES_HPP

#include <cmath>
#include <functional>
#include <random>

#include "conelab/dft.hpp"

namespace conelab::oracle {

/// Adaptive Simpson quadrature (test-side independent 1-D integrator).
inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                                   double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-10, int depth = 40) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// Closed-form transform of exp(-pi |x-c|^2 / sigma^2) under the
/// e^{-2 pi i x.xi} convention: sigma^2 exp(-pi sigma^2 |xi|^2) e^{-2 pi i c.xi}.
inline cplx gaussian_hat(double sigma, double c1, double c2, double xi1, double xi2) {
  const double pi = 3.14159265358979323846;
  const double mag = sigma * sigma * std::exp(-pi * sigma * sigma * (xi1 * xi1 + xi2 * xi2));
  return mag * std::polar(1.0, -2.0 * pi * (c1 * xi1 + c2 * xi2));
}

inline Field gaussian_field(const GridSpec& g, double sigma, double c1, double c2) {
  Field f(g, Rep::space);
  const double pi = 3.14159265358979323846;
  const double L = g.period;
  for (std::uint32_t i1 = 0; i1 < g.n; ++i1) {
    double d1 = g.coord_of_index(i1) - c1;
    d1 -= L * std::round(d1 / L);
    for (std::uint32_t i2 = 0; i2 < g.n; ++i2) {
      double d2 = g.coord_of_index(i2) - c2;
      d2 -= L * std::round(d2 / L);
      f.at(i1, i2) = cplx(std::exp(-pi * (d1 * d1 + d2 * d2) / (sigma * sigma)), 0.0);
    }
  }
  return f;
}

inline Field random_bandlimited(const GridSpec& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Field F(g, Rep::frequency);
  const int cap = int(g.n) / 4;
  for (std::uint32_t i1 = 0; i1 < g.n; ++i1) {
    const int k1 = int(i1) - int(g.n) / 2;
    for (std::uint32_t i2 = 0; i2 < g.n; ++i2) {
      const int k2 = int(i2) - int(g.n) / 2;
      if (std::abs(k1) <= cap && std::abs(k2) <= cap) F.at(i1, i2) = cplx(nd(rng), nd(rng));
    }
  }
  return dft_inverse(F);
}

inline double rel_l2_diff(const Field& a, const Field& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    num += std::norm(a.samples[i] - b.samples[i]);
    den += std::norm(b.samples[i]);
  }
  return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace conelab::oracle

#endif
