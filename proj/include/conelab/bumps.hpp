#ifndef CONELAB_BUMPS_HPP
#define CONELAB_BUMPS_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace conelab {

/// beta(u) = exp(-1/u) for u > 0, else 0. The C-infinity glue everything
/// below is built from.
inline double bump_beta(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

/// chi(s) = 1 for s <= 1, 0 for s >= 2, strictly decreasing in between:
/// chi(s) = beta(2-s) / (beta(2-s) + beta(s-1)).
inline double chi_cutoff(double s) {
  if (s <= 1.0) return 1.0;
  if (s >= 2.0) return 0.0;
  const double a = bump_beta(2.0 - s);
  const double b = bump_beta(s - 1.0);
  return a / (a + b);
}

enum class BumpName { psi, psi1, phi, phiTilde, psi11, psi12, chi };

/// A compactly supported smooth cutoff with its support interval recorded.
struct SmoothBump {
  double lo = 0.0, hi = 0.0;
  BumpName name = BumpName::chi;
  std::function<double(double)> evaluator;

  double operator()(double s) const { return evaluator(s); }
};

inline SmoothBump build_base_cutoff() {
  // chi is 1 on (-inf,1]; the recorded interval is where it varies/lives
  // as a cutoff profile. Callers treat it as a profile, not a bump.
  return SmoothBump{-1e300, 2.0, BumpName::chi, [](double s) { return chi_cutoff(s); }};
}

/// The cutoff family of the dyadic decomposition:
///   psi(s)      = chi(s) - chi(2s)            supp in [1/2, 2]
///   psi1(t)     = 1 - chi(4(1-t)) for t >= 0  supp in [0, 3/4], = 1 on [0, 1/2]
///   phi         = psi
///   phiTilde(s) = chi(s/2) (1 - chi(4s))      supp in [1/4, 4], = 1 on [1/2, 2]
///   rho(t)      = chi(16 t)
///   psi11       = psi1 * rho                  supp in [0, 1/8]
///   psi12       = psi1 * (1 - rho)            supp in [1/16, 3/4]
/// Telescoping gives sum_{j>=2} psi(2^j (1-t)) + psi1(t) = 1 on [0, 1).
/// psi1 is read one-sided at 0 (it equals 1 there); its evaluator returns 0
/// for negative arguments.
struct PartitionFamily {
  SmoothBump psi, psi1, phi, phiTilde, psi11, psi12;
};

inline double psi_eval(double s) { return chi_cutoff(s) - chi_cutoff(2.0 * s); }
inline double psi1_eval(double t) { return t >= 0.0 ? 1.0 - chi_cutoff(4.0 * (1.0 - t)) : 0.0; }
inline double phi_tilde_eval(double s) { return chi_cutoff(0.5 * s) * (1.0 - chi_cutoff(4.0 * s)); }
inline double psi11_eval(double t) { return psi1_eval(t) * chi_cutoff(16.0 * t); }
inline double psi12_eval(double t) { return psi1_eval(t) * (1.0 - chi_cutoff(16.0 * t)); }

inline PartitionFamily build_partition() {
  PartitionFamily p;
  p.psi = SmoothBump{0.5, 2.0, BumpName::psi, [](double s) { return psi_eval(s); }};
  p.psi1 = SmoothBump{0.0, 0.75, BumpName::psi1, [](double t) { return psi1_eval(t); }};
  p.phi = SmoothBump{0.5, 2.0, BumpName::phi, [](double s) { return psi_eval(s); }};
  p.phiTilde = SmoothBump{0.25, 4.0, BumpName::phiTilde, [](double s) { return phi_tilde_eval(s); }};
  p.psi11 = SmoothBump{0.0, 0.125, BumpName::psi11, [](double t) { return psi11_eval(t); }};
  p.psi12 = SmoothBump{0.0625, 0.75, BumpName::psi12, [](double t) { return psi12_eval(t); }};
  return p;
}

/// Max of |sum_{j=2}^{J} psi(2^j(1-t)) + psi1(t) - 1| over a uniform grid of
/// [0, 1-2^{-J-1}), sampled half-open (t_i = i*b/samples). The truncated sum
/// only reproduces 1 up to the last dyadic sliver below the right endpoint,
/// which the half-open grid at these sample counts never lands in.
inline double verify_partition(int J, std::size_t samples) {
  if (J < 2) throw std::invalid_argument("verify_partition: J >= 2 required");
  if (samples < 1000) throw std::invalid_argument("verify_partition: samples >= 1000 required");
  const double b = 1.0 - std::pow(2.0, -J - 1);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = b * (double(i) / double(samples));
    double s = psi1_eval(t);
    const double u = 1.0 - t;
    for (int j = 2; j <= J; ++j) {
      const double arg = std::ldexp(u, j);  // 2^j (1-t)
      if (arg > 0.5 && arg < 2.0) s += psi_eval(arg);
    }
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

}  // namespace conelab

#endif
