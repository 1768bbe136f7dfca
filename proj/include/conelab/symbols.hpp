#ifndef CONELAB_SYMBOLS_HPP
#define CONELAB_SYMBOLS_HPP

#include <cmath>
#include <stdexcept>

#include "conelab/bumps.hpp"

namespace conelab {

/// Gamma via the Lanczos approximation (g = 7, 9 terms), valid to ~1e-14
/// relative for z > 0, which covers every use here (mu > 0, nu > -1).
inline double lanczos_gamma(double z) {
  if (!(z > 0.0)) throw std::domain_error("lanczos_gamma: z > 0 required");
  static const double g = 7.0;
  static const double c[9] = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z < 0.5) {
    // reflection, only reachable for 0 < z < 1/2
    const double pi = 3.14159265358979323846;
    return pi / (std::sin(pi * z) * lanczos_gamma(1.0 - z));
  }
  const double x = z - 1.0;
  double a = c[0];
  for (int i = 1; i < 9; ++i) a += c[i] / (x + i);
  const double t = x + g + 0.5;
  const double sqrt2pi = 2.5066282746310005;
  return sqrt2pi * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

/// (base)_+^e with the convention 0 for base <= 0 (so e = 0 gives the
/// open indicator of base > 0).
inline double pos_pow(double base, double e) {
  if (base <= 0.0) return 0.0;
  if (e == 0.0) return 1.0;
  if (e == 1.0) return base;
  return std::pow(base, e);
}

/// Exponent bundle (lambda, mu, nu, a, b) with lambda = mu + nu and
/// a + b = 2 nu + 1.
struct ExponentParams {
  double lambda, mu, nu, a, b;

  static ExponentParams make(double lambda, double mu, double nu, double a, double b) {
    ExponentParams p{lambda, mu, nu, a, b};
    p.validate();
    return p;
  }
  /// lambda = mu + nu with a symmetric a = b split.
  static ExponentParams from_mu_nu(double mu, double nu) {
    return make(mu + nu, mu, nu, nu + 0.5, nu + 0.5);
  }
  /// The balanced choice mu = a = 1/2 + lambda/2, nu = b = -1/2 + lambda/2.
  static ExponentParams balanced(double lambda) {
    const double mu = 0.5 + 0.5 * lambda, nu = -0.5 + 0.5 * lambda;
    return make(lambda, mu, nu, mu, nu);
  }

  void validate() const {
    if (!(lambda > 0.0)) throw std::invalid_argument("ExponentParams: lambda > 0 required");
    if (!(mu > 0.0)) throw std::invalid_argument("ExponentParams: mu > 0 required");
    if (!(nu > -1.0)) throw std::invalid_argument("ExponentParams: nu > -1 required");
    if (std::abs(lambda - (mu + nu)) > 1e-14 * std::max(1.0, std::abs(lambda)))
      throw std::invalid_argument("ExponentParams: lambda = mu + nu violated");
    if (std::abs(a + b - (2.0 * nu + 1.0)) > 1e-14 * std::max(1.0, std::abs(2.0 * nu + 1.0)))
      throw std::invalid_argument("ExponentParams: a + b = 2 nu + 1 violated");
  }
};

/// c_{mu,nu} = 2 Gamma(mu+nu+1) / (Gamma(nu+1) Gamma(mu)).
inline double stein_weiss_constant(double mu, double nu) {
  if (!(mu > 0.0) || !(nu > -1.0)) throw std::domain_error("stein_weiss_constant: mu > 0, nu > -1 required");
  return 2.0 * lanczos_gamma(mu + nu + 1.0) / (lanczos_gamma(nu + 1.0) * lanczos_gamma(mu));
}

// ---------------------------------------------------------------------------
// Bilinear symbols
// ---------------------------------------------------------------------------

enum class BilKind { full, dyadic, j1, j1k, j1_11, j1_12 };

struct BilinearSymbolSpec {
  BilKind kind;
  ExponentParams params;
  int j = 0;  // dyadic level for kind dyadic (j >= 2) or k for j1k (k >= 2)

  static BilinearSymbolSpec full(const ExponentParams& p) { return {BilKind::full, p, 0}; }
  static BilinearSymbolSpec dyadic(const ExponentParams& p, int j) {
    if (j < 2) throw std::invalid_argument("BilinearSymbolSpec: dyadic requires j >= 2");
    return {BilKind::dyadic, p, j};
  }
  static BilinearSymbolSpec j1(const ExponentParams& p) { return {BilKind::j1, p, 1}; }
  static BilinearSymbolSpec j1k(const ExponentParams& p, int k) {
    if (k < 2) throw std::invalid_argument("BilinearSymbolSpec: j1k requires k >= 2");
    return {BilKind::j1k, p, k};
  }
  static BilinearSymbolSpec j1_11(const ExponentParams& p) { return {BilKind::j1_11, p, 1}; }
  static BilinearSymbolSpec j1_12(const ExponentParams& p) { return {BilKind::j1_12, p, 1}; }
};

/// m^lambda and its pieces at (xi, eta). Total by the guard: whenever either
/// phi factor vanishes (in particular whenever xi2 <= 0 or eta2 <= 0) the
/// value is 0 without touching the ratios.
inline double eval_bilinear_symbol(const BilinearSymbolSpec& s, double xi1, double xi2, double eta1,
                                   double eta2) {
  const double phix = (xi2 > 0.5 && xi2 < 2.0) ? psi_eval(xi2) : 0.0;
  if (phix == 0.0) return 0.0;
  const double phie = (eta2 > 0.5 && eta2 < 2.0) ? psi_eval(eta2) : 0.0;
  if (phie == 0.0) return 0.0;
  const double rx = (xi1 / xi2) * (xi1 / xi2);
  const double re = (eta1 / eta2) * (eta1 / eta2);
  const double body = pos_pow(1.0 - rx - re, s.params.lambda) * phix * phie;
  if (body == 0.0) return 0.0;
  switch (s.kind) {
    case BilKind::full:
      return body;
    case BilKind::dyadic:
      return psi_eval(std::ldexp(1.0 - rx, s.j)) * body;
    case BilKind::j1:
      return psi1_eval(rx) * body;
    case BilKind::j1k:
      return psi_eval(std::ldexp(1.0 - re, s.j)) * psi1_eval(rx) * body;
    case BilKind::j1_11:
      return psi11_eval(re) * psi1_eval(rx) * body;
    case BilKind::j1_12:
      return psi12_eval(re) * psi1_eval(rx) * body;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Linear factor symbols
// ---------------------------------------------------------------------------

enum class LinKind { T, Tsing, Tnonsing, B, Btilde, cutoff_f1j, cutoff_h };

struct LinearSymbolSpec {
  LinKind kind;
  ExponentParams params;
  double t = 0.0;
  double delta = 0.0;  // Tsing only
  int j = 0;           // B / cutoff_f1j only

  static LinearSymbolSpec T(const ExponentParams& p, double t) {
    if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("LinearSymbolSpec: T requires t in (0,1]");
    return {LinKind::T, p, t, 0.0, 0};
  }
  static LinearSymbolSpec Tsing(const ExponentParams& p, double delta, double t) {
    if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("LinearSymbolSpec: Tsing requires t in (0,1]");
    if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("LinearSymbolSpec: Tsing requires 0 < delta < 1/2");
    return {LinKind::Tsing, p, t, delta, 0};
  }
  static LinearSymbolSpec Tnonsing(const ExponentParams& p, double t) {
    if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("LinearSymbolSpec: Tnonsing requires t in (0,1]");
    return {LinKind::Tnonsing, p, t, 0.0, 0};
  }
  static LinearSymbolSpec B(const ExponentParams& p, int j, double t) {
    if (j < 1) throw std::invalid_argument("LinearSymbolSpec: B requires j >= 1");
    return {LinKind::B, p, t, 0.0, j};
  }
  static LinearSymbolSpec Btilde(const ExponentParams& p, double t) { return {LinKind::Btilde, p, t, 0.0, 0}; }
  static LinearSymbolSpec cutoff_f1j(int j) {
    if (j < 1) throw std::invalid_argument("LinearSymbolSpec: cutoff_f1j requires j >= 1");
    return {LinKind::cutoff_f1j, ExponentParams::balanced(1.0), 0.0, 0.0, j};
  }
  static LinearSymbolSpec cutoff_h() { return {LinKind::cutoff_h, ExponentParams::balanced(1.0), 0.0, 0.0, 0}; }
};

/// Threshold below which a positive power-law base counts as near-singular
/// when its exponent is negative.
constexpr double kNearSingularEps = 1e-12;

/// Pointwise linear symbol value at eta = (eta1, eta2). When the symbol has
/// a negative power of a vanishing base (B/Btilde with mu < 1, T with nu < 0)
/// and the base is within 1e-12 of 0, *near_singular is set; the literal
/// value is still returned.
inline double eval_linear_symbol(const LinearSymbolSpec& s, double eta1, double eta2,
                                 bool* near_singular = nullptr) {
  const double mu = s.params.mu, nu = s.params.nu;
  switch (s.kind) {
    case LinKind::T: {
      const double phi = (eta2 > 0.5 && eta2 < 2.0) ? psi_eval(eta2) : 0.0;
      if (phi == 0.0) return 0.0;
      const double q = eta1 / (s.t * eta2);
      const double base = 1.0 - q * q;
      if (near_singular && nu < 0.0 && base > 0.0 && base < kNearSingularEps) *near_singular = true;
      return phi * pos_pow(base, nu);
    }
    case LinKind::Tsing: {
      const double phi = (eta2 > 0.5 && eta2 < 2.0) ? psi_eval(eta2) : 0.0;
      if (phi == 0.0) return 0.0;
      const double q = eta1 / (s.t * eta2);
      const double arg = (1.0 - q * q) / s.delta;
      const double cut = psi_eval(arg);
      if (cut == 0.0) return 0.0;
      return phi * cut * pos_pow(arg, nu);
    }
    case LinKind::Tnonsing: {
      const double phi = (eta2 > 0.5 && eta2 < 2.0) ? psi_eval(eta2) : 0.0;
      if (phi == 0.0) return 0.0;
      const double q = eta1 / (s.t * eta2);
      const double cut = psi1_eval(q * q);
      if (cut == 0.0) return 0.0;
      return phi * cut * pos_pow(1.0 - q * q, nu);
    }
    case LinKind::B: {
      const double phi = (eta2 > 0.5 && eta2 < 2.0) ? psi_eval(eta2) : 0.0;
      if (phi == 0.0) return 0.0;
      const double r = (eta1 / eta2) * (eta1 / eta2);
      const double shell = psi_eval(std::ldexp(1.0 - r, s.j));
      if (shell == 0.0) return 0.0;
      const double base = 1.0 - r - s.t * s.t;
      if (near_singular && mu < 1.0 && base > 0.0 && base < kNearSingularEps) *near_singular = true;
      return shell * phi * pos_pow(base, mu - 1.0);
    }
    case LinKind::Btilde: {
      const double phi = (eta2 > 0.5 && eta2 < 2.0) ? psi_eval(eta2) : 0.0;
      if (phi == 0.0) return 0.0;
      const double r = (eta1 / eta2) * (eta1 / eta2);
      const double cut = psi12_eval(r);
      if (cut == 0.0) return 0.0;
      const double base = 1.0 - r - s.t * s.t;
      if (near_singular && mu < 1.0 && base > 0.0 && base < kNearSingularEps) *near_singular = true;
      return cut * phi * pos_pow(base, mu - 1.0);
    }
    case LinKind::cutoff_f1j: {
      const double phit = (eta2 > 0.25 && eta2 < 4.0) ? phi_tilde_eval(eta2) : 0.0;
      if (phit == 0.0) return 0.0;
      const double r = (eta1 / eta2) * (eta1 / eta2);
      return phit * psi_eval(std::ldexp(1.0 - r, s.j));
    }
    case LinKind::cutoff_h: {
      const double phit = (eta2 > 0.25 && eta2 < 4.0) ? phi_tilde_eval(eta2) : 0.0;
      if (phit == 0.0) return 0.0;
      const double r = (eta1 / eta2) * (eta1 / eta2);
      return phit * psi1_eval(r);
    }
  }
  return 0.0;
}

}  // namespace conelab

#endif
