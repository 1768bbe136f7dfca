#ifndef CONELAB_DFT_HPP
#define CONELAB_DFT_HPP

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "conelab/field.hpp"

namespace conelab {

namespace detail {

/// The wisdom file keeps measured plans identical across process runs
/// (measured planning is timing-dependent, and reruns must be bit-stable).
inline const std::string& wisdom_path() {
  static const std::string path = [] {
    if (const char* p = std::getenv("CML_FFTW_WISDOM")) return std::string(p);
    if (const char* home = std::getenv("HOME")) return std::string(home) + "/.conelab_fftw_wisdom";
    return std::string("conelab_fftw_wisdom");
  }();
  return path;
}

/// Cached FFTW plan pair per grid size. Planning happens once under a mutex;
/// execution uses fftw's new-array interface on a per-thread scratch buffer,
/// so transforms can run concurrently. The centering shift is fused into the
/// copy in/out of the scratch buffer.
struct FftPlans {
  std::uint32_t n;
  fftw_complex* buf;
  fftw_plan fwd, bwd;

  explicit FftPlans(std::uint32_t n_) : n(n_) {
    static bool imported = [] {
      fftw_import_wisdom_from_filename(wisdom_path().c_str());
      return true;
    }();
    (void)imported;
    buf = fftw_alloc_complex(std::size_t(n) * n);
    fwd = fftw_plan_dft_2d(int(n), int(n), buf, buf, FFTW_FORWARD, FFTW_WISDOM_ONLY | FFTW_MEASURE);
    bwd = fftw_plan_dft_2d(int(n), int(n), buf, buf, FFTW_BACKWARD, FFTW_WISDOM_ONLY | FFTW_MEASURE);
    if (!fwd || !bwd) {
      if (fwd) fftw_destroy_plan(fwd);
      if (bwd) fftw_destroy_plan(bwd);
      fwd = fftw_plan_dft_2d(int(n), int(n), buf, buf, FFTW_FORWARD, FFTW_MEASURE);
      bwd = fftw_plan_dft_2d(int(n), int(n), buf, buf, FFTW_BACKWARD, FFTW_MEASURE);
      fftw_export_wisdom_to_filename(wisdom_path().c_str());
    }
  }
  ~FftPlans() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
  }
  FftPlans(const FftPlans&) = delete;
};

inline FftPlans& plans_for(std::uint32_t n) {
  static std::mutex m;
  static std::map<std::uint32_t, FftPlans*> cache;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, new FftPlans(n)).first;
  return *it->second;
}

/// Per-thread aligned scratch (same allocator as the planning buffer, so the
/// new-array execute sees identical alignment).
inline cplx* scratch_for(std::uint32_t n) {
  thread_local std::map<std::uint32_t, fftw_complex*> bufs;
  auto it = bufs.find(n);
  if (it == bufs.end()) it = bufs.emplace(n, fftw_alloc_complex(std::size_t(n) * n)).first;
  return reinterpret_cast<cplx*>(it->second);
}

}  // namespace detail

/// Forward transform: F(k/L) = (L/n)^2 sum_x f(x) e^{-2 pi i x.k/L}, stored
/// centered. Discrete Parseval holds exactly: (L/n)^2 sum|f|^2 = L^{-2} sum|F|^2.
inline Field dft_forward(const Field& f) {
  f.require(Rep::space, "dft_forward");
  const std::uint32_t n = f.grid.n;
  const std::uint32_t h = n / 2;
  const double scale = (f.grid.period / n) * (f.grid.period / n);
  Field out(f.grid, Rep::frequency);
  auto& P = detail::plans_for(n);
  cplx* X = detail::scratch_for(n);
  std::memcpy(X, f.samples.data(), f.samples.size() * sizeof(cplx));
  fftw_execute_dft(P.fwd, reinterpret_cast<fftw_complex*>(X), reinterpret_cast<fftw_complex*>(X));
  for (std::uint32_t i1 = 0; i1 < n; ++i1) {
    const std::uint32_t s1 = (i1 + h) & (n - 1);
    for (std::uint32_t i2 = 0; i2 < n; ++i2) {
      const std::uint32_t s2 = (i2 + h) & (n - 1);
      out.samples[std::size_t(i1) * n + i2] = scale * X[std::size_t(s1) * n + s2];
    }
  }
  return out;
}

/// Exact inverse of dft_forward: f(x) = L^{-2} sum_k F(k/L) e^{+2 pi i x.k/L}.
inline Field dft_inverse(const Field& F) {
  F.require(Rep::frequency, "dft_inverse");
  const std::uint32_t n = F.grid.n;
  const std::uint32_t h = n / 2;
  const double scale = 1.0 / (F.grid.period * F.grid.period);
  Field out(F.grid, Rep::space);
  auto& P = detail::plans_for(n);
  cplx* B = detail::scratch_for(n);
  for (std::uint32_t i1 = 0; i1 < n; ++i1) {
    const std::uint32_t s1 = (i1 + h) & (n - 1);
    for (std::uint32_t i2 = 0; i2 < n; ++i2) {
      const std::uint32_t s2 = (i2 + h) & (n - 1);
      B[std::size_t(s1) * n + s2] = F.samples[std::size_t(i1) * n + i2];
    }
  }
  fftw_execute_dft(P.bwd, reinterpret_cast<fftw_complex*>(B), reinterpret_cast<fftw_complex*>(B));
  for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] = scale * B[i];
  return out;
}

inline Field to_frequency(const Field& f) { return f.rep == Rep::frequency ? f : dft_forward(f); }
inline Field to_space(const Field& f) { return f.rep == Rep::space ? f : dft_inverse(f); }

/// Riemann-sum L^p norm on the torus; p = infinity gives max |sample|.
inline double norm_lp(const Field& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("norm_lp: p must be in [1, inf]");
  if (f.rep != Rep::space) throw std::logic_error("norm_lp: field must be in space representation");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const cplx& v : f.samples) m = std::max(m, std::abs(v));
    return m;
  }
  const double cell = f.grid.dx() * f.grid.dx();
  double s = 0.0;
  if (p == 2.0) {
    for (const cplx& v : f.samples) s += std::norm(v);
  } else if (p == 1.0) {
    for (const cplx& v : f.samples) s += std::abs(v);
  } else {
    for (const cplx& v : f.samples) s += std::pow(std::abs(v), p);
  }
  return std::pow(cell * s, 1.0 / p);
}

/// Discretely normalized frequency-side l2 norm, equal to the spatial L2 norm.
inline double norm_l2_freq(const Field& F) {
  if (F.rep != Rep::frequency) throw std::logic_error("norm_l2_freq: frequency field expected");
  double s = 0.0;
  for (const cplx& v : F.samples) s += std::norm(v);
  return std::sqrt(s) / F.grid.period;
}

/// The n^2 lattice points k/L in row-major order matching Field layout.
inline std::vector<std::pair<double, double>> frequency_lattice(const GridSpec& g) {
  std::vector<std::pair<double, double>> out;
  out.reserve(g.size());
  for (std::uint32_t i1 = 0; i1 < g.n; ++i1)
    for (std::uint32_t i2 = 0; i2 < g.n; ++i2)
      out.emplace_back(g.freq_of_index(i1), g.freq_of_index(i2));
  return out;
}

}  // namespace conelab

#endif
