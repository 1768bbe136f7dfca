#ifndef CONELAB_REGIONS_HPP
#define CONELAB_REGIONS_HPP

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "conelab/dft.hpp"

namespace conelab {

/// Frequency-region membership predicates for the trapezoid and sector
/// decompositions. Closed-form inequalities throughout; half-open in the
/// slicing coordinate (lower edge in, upper edge out) so families tile the
/// lattice without double counting.
///
/// Trapezoid edge lines: the four vertices of X_n
/// (2^{n-1},1/2),(2^n,1/2),(2^{n+1},2),(2^{n+2},2) all satisfy
/// xi1/xi2 = 2^n (left pair) or 2^{n+1} (right pair), so
/// X_n = {1/2 <= xi2 <= 2, 2^n <= xi1/xi2 < 2^{n+1}}; S_n^j subdivides the
/// ratio range as 2^n [1+(j-1)2^{-l}, 1+j 2^{-l}).
struct FrequencyRegion {
  enum class Kind {
    trapezoid,        // X_n
    trapezoid_slice,  // S_n^j at scale l
    trapezoid_cell,   // S_n^{j,alpha} at scale l (xi2 slice, clipped to xi2 <= 2)
    sector,           // Theta_j^alpha of N subsectors
    sector_cell,      // Theta_{j,gamma}^alpha (xi1 slice of width N^{-1/2})
    dyadic_band,      // Delta_n = {2^n <= xi1 < 2^{n+1}}
    band_cell,        // P_{j,n}^alpha = Theta_j^alpha cap Delta_n
    band_cell_slice,  // P_{j,n,gamma}^alpha (xi1 slice of width 1/N)
    rect,             // [x0,x1) x [y0,y1)
    custom            // arbitrary predicate
  };

  Kind kind = Kind::custom;
  int n = 0, j = 0, ell = 0, alpha_idx = 0, gamma = 0, N = 0;
  double alpha = 0.0;
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  std::function<bool(double, double)> pred;
  std::string id;

  static FrequencyRegion trapezoid(int n) {
    FrequencyRegion r;
    r.kind = Kind::trapezoid;
    r.n = n;
    r.id = "X_" + std::to_string(n);
    return r;
  }
  static FrequencyRegion trapezoid_slice(int n, int j, int ell) {
    FrequencyRegion r;
    r.kind = Kind::trapezoid_slice;
    r.n = n;
    r.j = j;
    r.ell = ell;
    r.id = "S_" + std::to_string(n) + "^" + std::to_string(j);
    return r;
  }
  static FrequencyRegion trapezoid_cell(int n, int j, int ell, int alpha_idx) {
    FrequencyRegion r = trapezoid_slice(n, j, ell);
    r.kind = Kind::trapezoid_cell;
    r.alpha_idx = alpha_idx;
    r.id += ",a" + std::to_string(alpha_idx);
    return r;
  }
  static FrequencyRegion sector(int j, int N, double alpha) {
    FrequencyRegion r;
    r.kind = Kind::sector;
    r.j = j;
    r.N = N;
    r.alpha = alpha;
    r.id = "Th_" + std::to_string(j);
    return r;
  }
  static FrequencyRegion sector_cell(int j, int gamma, int N, double alpha) {
    FrequencyRegion r = sector(j, N, alpha);
    r.kind = Kind::sector_cell;
    r.gamma = gamma;
    r.id += ",g" + std::to_string(gamma);
    return r;
  }
  static FrequencyRegion dyadic_band(int n) {
    FrequencyRegion r;
    r.kind = Kind::dyadic_band;
    r.n = n;
    r.id = "D_" + std::to_string(n);
    return r;
  }
  static FrequencyRegion band_cell(int j, int n, int N, double alpha) {
    FrequencyRegion r = sector(j, N, alpha);
    r.kind = Kind::band_cell;
    r.n = n;
    r.id = "P_" + std::to_string(j) + "," + std::to_string(n);
    return r;
  }
  static FrequencyRegion band_cell_slice(int j, int n, int gamma, int N, double alpha) {
    FrequencyRegion r = band_cell(j, n, N, alpha);
    r.kind = Kind::band_cell_slice;
    r.gamma = gamma;
    r.id += ",g" + std::to_string(gamma);
    return r;
  }
  static FrequencyRegion rectangle(double x0, double x1, double y0, double y1) {
    FrequencyRegion r;
    r.kind = Kind::rect;
    r.x0 = x0;
    r.x1 = x1;
    r.y0 = y0;
    r.y1 = y1;
    r.id = "rect";
    return r;
  }
  static FrequencyRegion custom_region(std::function<bool(double, double)> p, std::string name = "custom") {
    FrequencyRegion r;
    r.kind = Kind::custom;
    r.pred = std::move(p);
    r.id = std::move(name);
    return r;
  }
};

inline bool contains(const FrequencyRegion& r, double xi1, double xi2) {
  using K = FrequencyRegion::Kind;
  switch (r.kind) {
    case K::trapezoid: {
      if (!(xi2 >= 0.5 && xi2 <= 2.0)) return false;
      const double ratio = xi1 / xi2;
      const double lo = std::ldexp(1.0, r.n);
      return ratio >= lo && ratio < 2.0 * lo;
    }
    case K::trapezoid_slice:
    case K::trapezoid_cell: {
      if (!(xi2 >= 0.5 && xi2 <= 2.0)) return false;
      const double ratio = xi1 / xi2;
      const double step = std::ldexp(1.0, -r.ell);
      const double lo = std::ldexp(1.0 + (r.j - 1) * step, r.n);
      const double hi = std::ldexp(1.0 + r.j * step, r.n);
      if (!(ratio >= lo && ratio < hi)) return false;
      if (r.kind == K::trapezoid_slice) return true;
      const double ylo = 0.5 + (r.alpha_idx - 1) * step;
      const double yhi = 0.5 + r.alpha_idx * step;
      return xi2 >= ylo && xi2 < yhi;  // clip at 2 is implied by the strip
    }
    case K::sector:
    case K::sector_cell: {
      if (xi1 == 0.0 && xi2 == 0.0) return false;
      const double ang = std::atan2(xi2, xi1);
      const double lo = (r.j - 1) * r.alpha / r.N, hi = r.j * r.alpha / r.N;
      if (!(ang >= lo && ang < hi)) return false;
      if (r.kind == K::sector) return true;
      const double w = 1.0 / std::sqrt(double(r.N));
      return xi1 >= 1.0 + r.gamma * w && xi1 < 1.0 + (r.gamma + 1) * w;
    }
    case K::dyadic_band: {
      const double lo = std::ldexp(1.0, r.n);
      return xi1 >= lo && xi1 < 2.0 * lo;
    }
    case K::band_cell:
    case K::band_cell_slice: {
      const double lo = std::ldexp(1.0, r.n);
      if (!(xi1 >= lo && xi1 < 2.0 * lo)) return false;
      if (xi1 == 0.0 && xi2 == 0.0) return false;
      const double ang = std::atan2(xi2, xi1);
      if (!(ang >= (r.j - 1) * r.alpha / r.N && ang < r.j * r.alpha / r.N)) return false;
      if (r.kind == K::band_cell) return true;
      const double w = 1.0 / double(r.N);
      return xi1 >= lo + r.gamma * w && xi1 < lo + (r.gamma + 1) * w;
    }
    case K::rect:
      return xi1 >= r.x0 && xi1 < r.x1 && xi2 >= r.y0 && xi2 < r.y1;
    case K::custom:
      return r.pred(xi1, xi2);
  }
  return false;
}

/// Sharp frequency cutoff: spectrum multiplied by 0/1 membership.
inline Field project(const FrequencyRegion& r, const Field& f) {
  Field F = to_frequency(f);
  const GridSpec& g = F.grid;
  for (std::uint32_t i1 = 0; i1 < g.n; ++i1) {
    const double e1 = g.freq_of_index(i1);
    for (std::uint32_t i2 = 0; i2 < g.n; ++i2)
      if (!contains(r, e1, g.freq_of_index(i2))) F.samples[std::size_t(i1) * g.n + i2] = cplx(0.0, 0.0);
  }
  return F;
}

/// Pointwise l2 combination (sum_R |R f|^2)^{1/2} of sharp projections onto
/// pairwise lattice-disjoint regions. Overlap on the lattice is rejected.
inline Field directional_square_function(const Field& f, const std::vector<FrequencyRegion>& regions) {
  Field F = to_frequency(f);
  const GridSpec& g = F.grid;
  const std::uint32_t n = g.n;
  std::vector<int> label(g.size(), -1);
  for (std::uint32_t i1 = 0; i1 < n; ++i1) {
    const double e1 = g.freq_of_index(i1);
    for (std::uint32_t i2 = 0; i2 < n; ++i2) {
      const double e2 = g.freq_of_index(i2);
      for (std::size_t r = 0; r < regions.size(); ++r) {
        if (!contains(regions[r], e1, e2)) continue;
        if (label[std::size_t(i1) * n + i2] >= 0)
          throw std::invalid_argument("directional_square_function: regions overlap on the lattice (" +
                                      regions[label[std::size_t(i1) * n + i2]].id + ", " + regions[r].id + ")");
        label[std::size_t(i1) * n + i2] = int(r);
      }
    }
  }
  std::vector<double> acc(g.size(), 0.0);
  Field H(g, Rep::frequency);
  for (std::size_t r = 0; r < regions.size(); ++r) {
    bool any = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const cplx v = (label[i] == int(r)) ? F.samples[i] : cplx(0.0, 0.0);
      H.samples[i] = v;
      any = any || (v != cplx(0.0, 0.0));
    }
    if (!any) continue;
    Field h = dft_inverse(H);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += std::norm(h.samples[i]);
  }
  Field out(g, Rep::space);
  for (std::size_t i = 0; i < acc.size(); ++i) out.samples[i] = cplx(std::sqrt(acc[i]), 0.0);
  return out;
}

/// Same square function driven by a precomputed lattice labeling
/// (label[i] = region index or -1); used by the harness fast paths.
inline Field square_function_from_labels(const Field& f, const std::vector<int>& label, int region_count) {
  Field F = to_frequency(f);
  const GridSpec& g = F.grid;
  std::vector<double> acc(g.size(), 0.0);
  Field H(g, Rep::frequency);
  for (int r = 0; r < region_count; ++r) {
    bool any = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const cplx v = (label[i] == r) ? F.samples[i] : cplx(0.0, 0.0);
      H.samples[i] = v;
      any = any || (v != cplx(0.0, 0.0));
    }
    if (!any) continue;
    Field h = dft_inverse(H);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += std::norm(h.samples[i]);
  }
  Field out(g, Rep::space);
  for (std::size_t i = 0; i < acc.size(); ++i) out.samples[i] = cplx(std::sqrt(acc[i]), 0.0);
  return out;
}

/// Max over probe lattice points zeta of #{(A,B) pairs : zeta in A+B}, with
/// A+B decided by testing zeta - a in B over the probe-lattice points of A.
/// The probe spacing must resolve the thinnest region feature:
/// spacing <= min_feature / 4 is enforced.
/// Closed-form bounding box [x0,x1] x [y0,y1] of a region (loose outer
/// bounds; custom predicates get an unbounded box).
struct RegionBBox {
  double x0 = -1e300, x1 = 1e300, y0 = -1e300, y1 = 1e300;
};

inline RegionBBox region_bbox(const FrequencyRegion& r) {
  using K = FrequencyRegion::Kind;
  RegionBBox b;
  switch (r.kind) {
    case K::trapezoid: {
      b.y0 = 0.5;
      b.y1 = 2.0;
      b.x0 = std::ldexp(1.0, r.n) * 0.5;
      b.x1 = std::ldexp(1.0, r.n + 1) * 2.0;
      break;
    }
    case K::trapezoid_slice:
    case K::trapezoid_cell: {
      const double step = std::ldexp(1.0, -r.ell);
      b.y0 = 0.5;
      b.y1 = 2.0;
      if (r.kind == K::trapezoid_cell) {
        b.y0 = 0.5 + (r.alpha_idx - 1) * step;
        b.y1 = std::min(2.0, 0.5 + r.alpha_idx * step);
      }
      b.x0 = std::ldexp(1.0 + (r.j - 1) * step, r.n) * b.y0;
      b.x1 = std::ldexp(1.0 + r.j * step, r.n) * b.y1;
      break;
    }
    case K::sector_cell:
      b.x0 = 1.0 + r.gamma / std::sqrt(double(r.N));
      b.x1 = 1.0 + (r.gamma + 1) / std::sqrt(double(r.N));
      b.y0 = 0.0;
      b.y1 = b.x1 * std::tan(std::min(r.j * r.alpha / r.N, 1.5));
      break;
    case K::dyadic_band:
    case K::band_cell:
    case K::band_cell_slice:
      b.x0 = std::ldexp(1.0, r.n);
      b.x1 = std::ldexp(1.0, r.n + 1);
      if (r.kind != K::dyadic_band) {
        b.y0 = 0.0;
        b.y1 = b.x1 * std::tan(std::min(r.j * r.alpha / r.N, 1.5));
      }
      break;
    case K::rect:
      b.x0 = r.x0;
      b.x1 = r.x1;
      b.y0 = r.y0;
      b.y1 = r.y1;
      break;
    default:
      break;
  }
  return b;
}

namespace detail {

/// Probe-lattice rasterization of a region: point list plus per-i2 runs of
/// consecutive i1 (membership of all region kinds here is an interval in
/// xi1 at fixed xi2).
struct RegionRaster {
  std::vector<std::pair<long, long>> pts;
  struct Run {
    long i2, i1_begin, i1_end;  // [begin, end)
  };
  std::vector<Run> runs;
  long lo1 = 0, hi1 = -1, lo2 = 0, hi2 = -1;
  bool empty() const { return hi1 < lo1; }
};

inline RegionRaster rasterize_region(const FrequencyRegion& r, const GridSpec& probe) {
  RegionRaster out;
  const long n = long(probe.n);
  const double L = probe.period;
  const RegionBBox bb = region_bbox(r);
  const long lo2 = std::max(0L, long(std::floor(bb.y0 * L)) + n / 2 - 1);
  const long hi2 = std::min(n, long(std::ceil(bb.y1 * L)) + n / 2 + 2);
  const long lo1 = std::max(0L, long(std::floor(bb.x0 * L)) + n / 2 - 1);
  const long hi1 = std::min(n, long(std::ceil(bb.x1 * L)) + n / 2 + 2);
  for (long i2 = lo2; i2 < hi2; ++i2) {
    const double e2 = (i2 - n / 2) / L;
    long run_start = -1;
    for (long i1 = lo1; i1 < hi1; ++i1) {
      const bool in = contains(r, (i1 - n / 2) / L, e2);
      if (in) {
        out.pts.emplace_back(i1, i2);
        if (out.empty()) {
          out.lo1 = out.hi1 = i1;
          out.lo2 = out.hi2 = i2;
        } else {
          out.lo1 = std::min(out.lo1, i1);
          out.hi1 = std::max(out.hi1, i1);
          out.lo2 = std::min(out.lo2, i2);
          out.hi2 = std::max(out.hi2, i2);
        }
        if (run_start < 0) run_start = i1;
      } else if (run_start >= 0) {
        out.runs.push_back({i2, run_start, i1});
        run_start = -1;
      }
    }
    if (run_start >= 0) out.runs.push_back({i2, run_start, hi1});
  }
  return out;
}

}  // namespace detail

inline int minkowski_overlap_bound(const std::vector<FrequencyRegion>& A_list,
                                   const std::vector<FrequencyRegion>& B_list, const GridSpec& probe,
                                   double min_feature) {
  if (probe.dfreq() > min_feature / 4.0)
    throw std::invalid_argument("minkowski_overlap_bound: probe spacing coarser than min_feature/4");
  std::vector<detail::RegionRaster> rA(A_list.size()), rB(B_list.size());
  for (std::size_t i = 0; i < A_list.size(); ++i) rA[i] = detail::rasterize_region(A_list[i], probe);
  for (std::size_t i = 0; i < B_list.size(); ++i) rB[i] = detail::rasterize_region(B_list[i], probe);

  long lo1 = 1, hi1 = 0, lo2 = 1, hi2 = 0;
  for (auto& a : rA)
    for (auto& b : rB) {
      if (a.empty() || b.empty()) continue;
      if (hi1 < lo1) {
        lo1 = a.lo1 + b.lo1;
        hi1 = a.hi1 + b.hi1;
        lo2 = a.lo2 + b.lo2;
        hi2 = a.hi2 + b.hi2;
      } else {
        lo1 = std::min(lo1, a.lo1 + b.lo1);
        hi1 = std::max(hi1, a.hi1 + b.hi1);
        lo2 = std::min(lo2, a.lo2 + b.lo2);
        hi2 = std::max(hi2, a.hi2 + b.hi2);
      }
    }
  if (hi1 < lo1) return 0;
  const long W1 = hi1 - lo1 + 1, W2 = hi2 - lo2 + 1;
  std::vector<std::uint16_t> count(std::size_t(W1) * W2, 0);
  std::vector<std::uint8_t> local;
  for (auto& a : rA)
    for (auto& b : rB) {
      if (a.empty() || b.empty()) continue;
      const long p1 = a.lo1 + b.lo1, q1 = a.hi1 + b.hi1;
      const long p2 = a.lo2 + b.lo2, q2 = a.hi2 + b.hi2;
      const long w1 = q1 - p1 + 1, w2 = q2 - p2 + 1;
      local.assign(std::size_t(w1) * w2, 0);
      for (auto& ap : a.pts)
        for (auto& run : b.runs) {
          // the sum shifts the xi1-run of B by the xi1 of a
          const long i2 = ap.second + run.i2 - p2;
          for (long i1 = ap.first + run.i1_begin; i1 < ap.first + run.i1_end; ++i1)
            local[std::size_t(i1 - p1) * w2 + i2] = 1;
        }
      for (long i1 = 0; i1 < w1; ++i1)
        for (long i2 = 0; i2 < w2; ++i2)
          if (local[std::size_t(i1) * w2 + i2])
            count[std::size_t(i1 + p1 - lo1) * W2 + (i2 + p2 - lo2)]++;
    }
  std::uint16_t best = 0;
  for (std::uint16_t c : count) best = std::max(best, c);
  return int(best);
}

}  // namespace conelab

#endif
