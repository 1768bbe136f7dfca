#ifndef CONELAB_MAXIMAL_HPP
#define CONELAB_MAXIMAL_HPP

#include <algorithm>
#include <cmath>
#include <deque>
#include <vector>

#include "conelab/field.hpp"

namespace conelab {

/// Nonnegative real samples of a maximal function on a grid.
struct MaxField {
  GridSpec grid;
  std::vector<double> samples;

  MaxField() = default;
  explicit MaxField(const GridSpec& g) : grid(g), samples(g.size(), 0.0) {}
  double& at(std::uint32_t i1, std::uint32_t i2) { return samples[std::size_t(i1) * grid.n + i2]; }
  double at(std::uint32_t i1, std::uint32_t i2) const { return samples[std::size_t(i1) * grid.n + i2]; }
};

/// Dyadic menu of admitted rectangle side pairs, in grid cells.
struct RectangleMenu {
  std::vector<int> lengths, widths;  // side along axis 1 / axis 2, in cells
  double ecc_lo = 1.0, ecc_hi = 1e300;

  static RectangleMenu dyadic(std::uint32_t n) {
    RectangleMenu m;
    for (int s = 1; s <= int(n); s *= 2) {
      m.lengths.push_back(s);
      m.widths.push_back(s);
    }
    return m;
  }
  bool admitted(int len, int wid) const {
    const double ecc = double(std::max(len, wid)) / double(std::min(len, wid));
    return ecc >= ecc_lo && ecc <= ecc_hi;
  }
};

namespace detail {

/// out[x] = max_{a in [x-w+1, x]} in[a mod n]  (periodic sliding max).
inline void sliding_max_periodic(const std::vector<double>& in, std::size_t n, std::size_t stride,
                                 std::size_t offset, int w, std::vector<double>& out) {
  std::deque<std::pair<int, double>> dq;
  const int total = int(n) + w - 1;
  for (int k = -(w - 1); k < int(n); ++k) {
    const int idx = (k % int(n) + int(n)) % int(n);
    const double v = in[offset + std::size_t(idx) * stride];
    while (!dq.empty() && dq.back().second <= v) dq.pop_back();
    dq.emplace_back(k, v);
    if (dq.front().first <= k - w) dq.pop_front();
    if (k >= 0) out[offset + std::size_t(k) * stride] = dq.front().second;
  }
  (void)total;
}

/// Max over placements of a len x wid (axis1 x axis2) cell rectangle
/// containing each point of the average of `vals` over the rectangle,
/// periodic. Uses a wrapped summed-area table plus two sliding-max passes.
inline void rect_max_accumulate(const std::vector<double>& vals, std::uint32_t n, int len, int wid,
                                std::vector<double>& out) {
  const std::size_t N = std::size_t(n);
  // wrapped prefix sums: S has (n+len) x (n+wid) entries, S(a,b) = sum of
  // vals over wrapped cells [0,a) x [0,b)
  const std::size_t R = N + std::size_t(len), C = N + std::size_t(wid);
  static thread_local std::vector<double> S, A, M1;
  S.assign((R + 1) * (C + 1), 0.0);
  for (std::size_t a = 0; a < R; ++a) {
    const double* row = &vals[(a % N) * N];
    double acc = 0.0;
    for (std::size_t b = 0; b < C; ++b) {
      acc += row[b % N];
      S[(a + 1) * (C + 1) + (b + 1)] = S[a * (C + 1) + (b + 1)] + acc;
    }
  }
  // box averages indexed by top-left corner
  A.assign(N * N, 0.0);
  const double inv = 1.0 / (double(len) * double(wid));
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b)
      A[a * N + b] = inv * (S[(a + len) * (C + 1) + (b + wid)] - S[a * (C + 1) + (b + wid)] -
                            S[(a + len) * (C + 1) + b] + S[a * (C + 1) + b]);
  // sliding max over the window of admissible top-left corners
  M1.assign(N * N, 0.0);
  for (std::size_t a = 0; a < N; ++a) sliding_max_periodic(A, N, 1, a * N, wid, M1);
  static thread_local std::vector<double> tmp;
  tmp = M1;
  for (std::size_t b = 0; b < N; ++b) sliding_max_periodic(tmp, N, N, b, len, M1);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], M1[i]);
}

inline std::vector<double> abs_samples(const Field& f) {
  std::vector<double> v(f.samples.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::abs(f.samples[i]);
  return v;
}

/// Periodic linear interpolation along axis 2: g(i1, i2) = vals(i1, i2 + shift(i1)).
inline std::vector<double> shear_axis2(const std::vector<double>& vals, std::uint32_t n, double slope,
                                       int sign) {
  std::vector<double> out(vals.size());
  for (std::uint32_t i1 = 0; i1 < n; ++i1) {
    const double sh = sign * slope * i1;
    const double fl = std::floor(sh);
    const double frac = sh - fl;
    const long base = long(fl);
    for (std::uint32_t i2 = 0; i2 < n; ++i2) {
      const long p = (long(i2) + base) % long(n);
      const std::uint32_t j0 = std::uint32_t((p + n) % long(n));
      const std::uint32_t j1 = (j0 + 1) & (n - 1);
      out[std::size_t(i1) * n + i2] =
          (1.0 - frac) * vals[std::size_t(i1) * n + j0] + frac * vals[std::size_t(i1) * n + j1];
    }
  }
  return out;
}

inline void transpose(std::vector<double>& v, std::uint32_t n) {
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) std::swap(v[std::size_t(i) * n + j], v[std::size_t(j) * n + i]);
}

/// Strong-maximal core on raw nonnegative samples over the given menu;
/// long_axis1_only keeps pairs with len >= wid.
inline std::vector<double> strong_max_core(const std::vector<double>& vals, std::uint32_t n,
                                           const RectangleMenu& menu, bool long_axis1_only) {
  std::vector<double> out(vals.size(), 0.0);
  for (int len : menu.lengths)
    for (int wid : menu.widths) {
      if (len > int(n) || wid > int(n)) continue;
      if (long_axis1_only && len < wid) continue;
      if (!menu.admitted(len, wid)) continue;
      rect_max_accumulate(vals, n, len, wid, out);
    }
  return out;
}

}  // namespace detail

/// Strong maximal function over axis-parallel dyadic rectangles.
inline MaxField strong_maximal(const Field& f, const RectangleMenu* menu = nullptr) {
  const RectangleMenu m = menu ? *menu : RectangleMenu::dyadic(f.grid.n);
  MaxField out(f.grid);
  out.samples = detail::strong_max_core(detail::abs_samples(f), f.grid.n, m, false);
  return out;
}

/// Directional maximal over rectangles whose long side points along (1, t)
/// or (1, -t), realized by shearing, a long-axis-1 strong maximal, and
/// shearing back. |t| <= 1; larger slopes are handled by the callers through
/// the axis transpose.
inline MaxField directional_maximal(const Field& f, double t, const RectangleMenu* menu = nullptr) {
  if (std::abs(t) > 1.0) throw std::invalid_argument("directional_maximal: |t| <= 1 required");
  const std::uint32_t n = f.grid.n;
  const RectangleMenu m = menu ? *menu : RectangleMenu::dyadic(n);
  const std::vector<double> vals = detail::abs_samples(f);
  // shear in grid units: slope t in physical units equals slope t in index
  // units on a square grid
  MaxField out(f.grid);
  out.samples.assign(vals.begin(), vals.end());  // single-cell lower bound
  for (int sign : {+1, -1}) {
    std::vector<double> sheared = detail::shear_axis2(vals, n, t, sign);
    std::vector<double> ms = detail::strong_max_core(sheared, n, m, true);
    std::vector<double> back = detail::shear_axis2(ms, n, t, -sign);
    for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] = std::max(out.samples[i], back[i]);
    if (t == 0.0) break;
  }
  return out;
}

struct MaximalBase {
  enum Kind { strong, directional, sector } kind = strong;
  double t = 0.0;      // directional
  double alpha = 0.0;  // sector
  int N = 0;           // sector
};

inline MaxField sector_maximal(const Field& f, double alpha, int N, const RectangleMenu* menu = nullptr);

/// (base(|f|^s))^{1/s} for s in (1, 2].
inline MaxField power_maximal(const Field& f, double s, const MaximalBase& base,
                              const RectangleMenu* menu = nullptr) {
  if (!(s > 1.0 && s <= 2.0)) throw std::invalid_argument("power_maximal: s in (1,2] required");
  Field fp(f.grid, Rep::space);
  for (std::size_t i = 0; i < fp.samples.size(); ++i)
    fp.samples[i] = cplx(std::pow(std::abs(f.samples[i]), s), 0.0);
  MaxField m;
  switch (base.kind) {
    case MaximalBase::strong:
      m = strong_maximal(fp, menu);
      break;
    case MaximalBase::directional:
      m = directional_maximal(fp, base.t, menu);
      break;
    case MaximalBase::sector:
      m = sector_maximal(fp, base.alpha, base.N, menu);
      break;
  }
  for (double& v : m.samples) v = std::pow(v, 1.0 / s);
  return m;
}

/// Kakeya-type maximal: directions tan(k pi / direction_count) over menu
/// rectangles with eccentricity in [a, b]. Slopes beyond 1 go through the
/// axis transpose.
inline MaxField kakeya(const Field& f, double a, double b, int direction_count,
                       const RectangleMenu* menu_in = nullptr) {
  if (!(a >= 1.0 && b >= a)) throw std::invalid_argument("kakeya: 1 <= a <= b required");
  if (direction_count < int(std::ceil(b)))
    throw std::invalid_argument("kakeya: direction_count >= ceil(b) required");
  const std::uint32_t n = f.grid.n;
  RectangleMenu m = menu_in ? *menu_in : RectangleMenu::dyadic(n);
  m.ecc_lo = a;
  m.ecc_hi = b;
  MaxField out(f.grid);
  out.samples = detail::abs_samples(f);
  const std::vector<double> vals = out.samples;
  Field tf(f.grid, Rep::space);  // transposed |f|
  {
    std::vector<double> tv = vals;
    detail::transpose(tv, n);
    for (std::size_t i = 0; i < tv.size(); ++i) tf.samples[i] = cplx(tv[i], 0.0);
  }
  Field af(f.grid, Rep::space);
  for (std::size_t i = 0; i < vals.size(); ++i) af.samples[i] = cplx(vals[i], 0.0);
  const double pi = 3.14159265358979323846;
  for (int k = 0; k < direction_count; ++k) {
    const double theta = pi * k / direction_count;
    const double tan_t = std::tan(theta);
    if (std::abs(tan_t) <= 1.0) {
      MaxField d = directional_maximal(af, tan_t, &m);
      for (std::size_t i = 0; i < out.samples.size(); ++i)
        out.samples[i] = std::max(out.samples[i], d.samples[i]);
    } else {
      MaxField d = directional_maximal(tf, 1.0 / tan_t, &m);
      detail::transpose(d.samples, n);
      for (std::size_t i = 0; i < out.samples.size(); ++i)
        out.samples[i] = std::max(out.samples[i], d.samples[i]);
    }
  }
  return out;
}

/// M_N^alpha = sup_{0<=j<=N} m_{t_j}, t_j = tan(j alpha / N), alpha in (0, pi/4].
inline MaxField sector_maximal(const Field& f, double alpha, int N, const RectangleMenu* menu) {
  if (!(alpha > 0.0 && alpha <= 3.14159265358979323846 / 4.0))
    throw std::invalid_argument("sector_maximal: alpha in (0, pi/4] required");
  if (N < 1) throw std::invalid_argument("sector_maximal: N >= 1 required");
  MaxField out(f.grid);
  for (int j = 0; j <= N; ++j) {
    MaxField d = directional_maximal(f, std::tan(alpha * j / N), menu);
    if (j == 0)
      out = d;
    else
      for (std::size_t i = 0; i < out.samples.size(); ++i)
        out.samples[i] = std::max(out.samples[i], d.samples[i]);
  }
  return out;
}

/// Brute-force oracle: directly rasterized rectangles with long axis along
/// (1, t) or (1, -t). O(n^2 . menu . area); n <= 64.
inline MaxField directional_maximal_bruteforce(const Field& f, double t, const RectangleMenu& menu) {
  const std::uint32_t n = f.grid.n;
  if (n > 64) throw std::invalid_argument("directional_maximal_bruteforce: n <= 64 required");
  const std::vector<double> vals = detail::abs_samples(f);
  MaxField out(f.grid);
  out.samples = vals;
  const double norm2 = std::sqrt(1.0 + t * t);
  for (int sign : {+1, -1}) {
    const double ux = 1.0 / norm2, uy = sign * t / norm2;
    for (int len : menu.lengths)
      for (int wid : menu.widths) {
        if (len < wid || !menu.admitted(len, wid)) continue;
        const double hl = len / 2.0, hw = wid / 2.0;
        const int reach = int(std::ceil(std::hypot(hl, hw))) + 1;
        for (std::uint32_t c1 = 0; c1 < n; ++c1)
          for (std::uint32_t c2 = 0; c2 < n; ++c2) {
            double sum = 0.0;
            int count = 0;
            static thread_local std::vector<std::uint32_t> members;
            members.clear();
            for (int d1 = -reach; d1 <= reach; ++d1)
              for (int d2 = -reach; d2 <= reach; ++d2) {
                const double pu = d1 * ux + d2 * uy;
                const double pv = -d1 * uy + d2 * ux;
                if (std::abs(pu) <= hl && std::abs(pv) <= hw) {
                  const std::uint32_t i1 = std::uint32_t((long(c1) + d1 + 4 * n) % n);
                  const std::uint32_t i2 = std::uint32_t((long(c2) + d2 + 4 * n) % n);
                  sum += vals[std::size_t(i1) * n + i2];
                  ++count;
                  members.push_back(i1 * n + i2);
                }
              }
            if (count == 0) continue;
            const double avg = sum / count;
            for (std::uint32_t idx : members)
              out.samples[idx] = std::max(out.samples[idx], avg);
          }
      }
    if (t == 0.0) break;
  }
  return out;
}

}  // namespace conelab

#endif
