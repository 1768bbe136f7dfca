#ifndef CONELAB_QUADRATURE_HPP
#define CONELAB_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "conelab/field.hpp"
#include "conelab/symbols.hpp"

namespace conelab {

/// Gauss-Legendre nodes/weights on [-1,1], Newton iteration on P_k.
inline void gauss_legendre(int k, std::vector<double>& x, std::vector<double>& w) {
  x.assign(k, 0.0);
  w.assign(k, 0.0);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (k + 1) / 2; ++i) {
    double z = std::cos(pi * (i + 0.75) / (k + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int m = 0; m < k; ++m) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * m + 1.0) * z * p1 - m * p2) / (m + 1.0);
      }
      pp = k * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[k - 1 - i] = z;
    w[i] = w[k - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

struct QuadPanel {
  double a, b;
  int node_begin, node_count;
};

/// Nodes/weights for a 1-D integral, organized in panels with plain
/// Gauss-Legendre inside each panel.
struct Quadrature {
  std::vector<double> nodes, weights;
  std::vector<QuadPanel> panels;
  double t_max = 0.0;
  std::string scheme;
  int panels_per_dyad = 4, nodes_per_panel = 8;  // resolution knobs they were built with

  std::size_t size() const { return nodes.size(); }

  void add_panel(double a, double b, const std::vector<double>& gx, const std::vector<double>& gw) {
    if (!(b > a)) return;
    // clamp the node count so adjacent nodes stay distinct doubles; slivers
    // at the ulp scale get a midpoint rule instead of nodes rounding onto
    // the (singular) endpoint
    const double scale = std::max(std::abs(a), std::abs(b));
    const double res = (b - a) / (4.0 * 2.220446049250313e-16 * std::max(scale, 1e-300));
    int k = int(gx.size());
    if (res < double(k)) k = std::max(1, int(res));
    QuadPanel p{a, b, int(nodes.size()), k};
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    if (k == 1) {
      // midpoint where representable; ulp-wide panels keep the node strictly
      // below b (the graded endpoints sit at the upper end of slivers)
      const double t = std::min(std::max(mid, a), std::nextafter(b, a));
      nodes.push_back(t);
      weights.push_back(b - a);
      panels.push_back(p);
      return;
    }
    if (k == int(gx.size())) {
      for (std::size_t i = 0; i < gx.size(); ++i) {
        nodes.push_back(mid + half * gx[i]);
        weights.push_back(half * gw[i]);
      }
    } else {
      std::vector<double> cx, cw;
      gauss_legendre(k, cx, cw);
      for (int i = 0; i < k; ++i) {
        nodes.push_back(mid + half * cx[i]);
        weights.push_back(half * cw[i]);
      }
    }
    panels.push_back(p);
  }
};

namespace detail {

/// A prospective panel; `boost` marks the panel that closes onto a graded
/// singular endpoint (integrated with extra nodes).
struct PanelStub {
  double a, b;
  bool boost = false;
};

/// Appends the geometric split of [a,b] accumulating toward one end (ratio
/// 1/4, `depth` levels, closing sliver kept). The depth is capped so the
/// sliver stays wide enough that its nodes remain distinct doubles away from
/// the endpoint.
inline void graded_edges(double a, double b, bool toward_b, int depth, std::vector<PanelStub>& out) {
  const double w = b - a;
  if (w <= 0.0) return;
  const double scale = std::max({std::abs(a), std::abs(b), w});
  const int cap = int(std::floor(std::log(w / (4e-16 * scale)) / std::log(4.0)));
  depth = std::min(depth, std::max(cap, 0));
  if (depth <= 0) {
    out.push_back({a, b, false});
    return;
  }
  if (toward_b) {
    double lo = a;
    for (int i = 1; i <= depth; ++i) {
      const double hi = b - w * std::pow(0.25, i);
      if (hi > lo) out.push_back({lo, hi, false});
      lo = hi;
    }
    out.push_back({lo, b, true});
  } else {
    std::vector<PanelStub> rev;
    double hi = b;
    for (int i = 1; i <= depth; ++i) {
      const double lo = a + w * std::pow(0.25, i);
      if (lo < hi) rev.push_back({lo, hi, false});
      hi = lo;
    }
    rev.push_back({a, hi, true});
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) out.push_back(*it);
  }
}

/// Splits [a,b] into `P` uniform panels, grading the first/last toward the
/// endpoints that are marked singular.
inline void segment_panels(double a, double b, int P, bool sing_lo, bool sing_hi, int depth,
                           std::vector<PanelStub>& out) {
  if (P < 2 && sing_lo && sing_hi) {
    const double mid = 0.5 * (a + b);
    graded_edges(a, mid, false, depth, out);
    graded_edges(mid, b, true, depth, out);
    return;
  }
  const double h = (b - a) / P;
  for (int i = 0; i < P; ++i) {
    const double x0 = a + i * h, x1 = (i == P - 1) ? b : a + (i + 1) * h;
    if (i == 0 && sing_lo)
      graded_edges(x0, x1, false, depth, out);
    else if (i == P - 1 && sing_hi)
      graded_edges(x0, x1, true, depth, out);
    else
      out.push_back({x0, x1, false});
  }
}

}  // namespace detail

/// Generic composite rule on [a,b]: `P` uniform panels, optional geometric
/// grading into either endpoint.
///
/// A graded endpoint with a known power-law exponent e in (-1, 0) gets a
/// width-W terminal panel (W = 1e-8 of the interval) whose single node sits
/// at the mean-value point of x^e, so the endpoint mass is integrated
/// exactly up to the smooth factor's variation over W. The panel stays
/// measure- and degree-1 consistent to ~W^2/4, far inside the 1e-12 panel
/// tolerance.
inline Quadrature build_interval_quadrature(double a, double b, int P, int nodes_per_panel,
                                            bool grade_lo = false, bool grade_hi = false, int depth = 12,
                                            double exponent_lo = 0.0, double exponent_hi = 0.0) {
  if (P < 1 || nodes_per_panel < 1) throw std::invalid_argument("build_interval_quadrature: invalid panel counts");
  std::vector<double> gx, gw, bx, bw;
  gauss_legendre(nodes_per_panel, gx, gw);
  gauss_legendre(std::min(4 * nodes_per_panel, 64), bx, bw);
  Quadrature q;
  q.t_max = b;
  q.scheme = "interval";
  q.panels_per_dyad = P;
  q.nodes_per_panel = nodes_per_panel;
  const double W = 1e-8 * (b - a);
  const bool mv_lo = grade_lo && exponent_lo > -1.0 && exponent_lo < 0.0;
  const bool mv_hi = grade_hi && exponent_hi > -1.0 && exponent_hi < 0.0;
  double lo = a, hi = b;
  if (mv_lo) lo = a + W;
  if (mv_hi) hi = b - W;
  if (mv_lo) {
    const double frac = std::pow(exponent_lo + 1.0, -1.0 / exponent_lo);  // mean-value point of x^e
    q.nodes.push_back(a + W * frac);
    q.weights.push_back(W);
    q.panels.push_back({a, lo, int(q.nodes.size()) - 1, 1});
  }
  std::vector<detail::PanelStub> ps;
  detail::segment_panels(lo, hi, P, grade_lo, grade_hi, depth, ps);
  for (auto& pr : ps)
    if (pr.boost)
      q.add_panel(pr.a, pr.b, bx, bw);
    else
      q.add_panel(pr.a, pr.b, gx, gw);
  if (mv_hi) {
    const double frac = std::pow(exponent_hi + 1.0, -1.0 / exponent_hi);
    q.nodes.push_back(b - W * frac);
    q.weights.push_back(W);
    q.panels.push_back({hi, b, int(q.nodes.size()) - 1, 1});
  }
  return q;
}

/// Composite rule on [0, t_hi] with dyadic half-octave levels toward 0 (tail
/// mass of t^{2nu+1} below 1e-12 neglected), the given interior breakpoints
/// inserted, and geometric grading into every breakpoint and into t_hi.
///
/// Uniform panels per segment are capped by a width target t_hi/(32 P), so
/// dense breakpoint sets do not multiply the node count. depth < 0 picks the
/// grading depth from the exponents: none when both power-law factors are
/// polynomial (mu-1 and nu nonnegative integers, where breakpoints alone
/// make the integrand piecewise smooth), else 6 + 2 log2(P/2) so that panel
/// halving keeps shrinking the endpoint-singularity error.
inline Quadrature build_adapted_on_interval(double t_hi, const ExponentParams& p,
                                            std::vector<double> sing_points, int panels_per_dyad,
                                            int nodes_per_panel, int depth = -1,
                                            const std::vector<double>& cut_points = {}) {
  const int P = std::max(2, panels_per_dyad);
  const double e = 2.0 * p.nu + 2.0;
  std::vector<double> gx, gw;
  gauss_legendre(nodes_per_panel, gx, gw);
  Quadrature q;
  q.t_max = t_hi;
  q.scheme = "adapted";
  q.panels_per_dyad = P;
  q.nodes_per_panel = nodes_per_panel;
  if (depth < 0) {
    const bool poly_B = p.mu >= 1.0 && p.mu == std::floor(p.mu);
    const bool poly_T = p.nu >= 0.0 && p.nu == std::floor(p.nu);
    depth = (poly_B && poly_T) ? 0 : 6 + 2 * int(std::lround(std::log2(double(P) / 2.0)));
  }
  int K = 0;
  while (std::pow(t_hi * std::pow(2.0, -(K + 1) / 2.0), e) / e > 1e-12) ++K;
  std::set<double> cuts;
  for (int k = 0; k <= K + 1; ++k) cuts.insert(t_hi * std::pow(2.0, -k / 2.0));
  std::set<double> singset{t_hi};
  std::sort(sing_points.begin(), sing_points.end());
  double prev_inserted = -1.0;
  for (double s : sing_points)
    if (s > *cuts.begin() && s < t_hi * (1.0 - 1e-13)) {
      if (prev_inserted > 0.0 && s - prev_inserted < 1e-12 * t_hi) continue;  // ulp-close duplicates
      cuts.insert(s);
      singset.insert(s);
      prev_inserted = s;
    }
  std::vector<double> extra(cut_points);
  std::sort(extra.begin(), extra.end());
  prev_inserted = -1.0;
  for (double s : extra)
    if (s > *cuts.begin() && s < t_hi * (1.0 - 1e-13)) {
      if (prev_inserted > 0.0 && s - prev_inserted < 1e-12 * t_hi) continue;
      cuts.insert(s);
      prev_inserted = s;
    }
  const double w_target = t_hi / (32.0 * P);
  std::vector<double> edges(cuts.begin(), cuts.end());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double len = edges[i + 1] - edges[i];
    if (len < 1e-12 * t_hi) continue;  // degenerate segment
    const int pseg = std::max(1, std::min(P, int(std::ceil(len / w_target))));
    std::vector<detail::PanelStub> ps;
    detail::segment_panels(edges[i], edges[i + 1], pseg, singset.count(edges[i]) > 0,
                           singset.count(edges[i + 1]) > 0, depth, ps);
    for (auto& pr : ps) q.add_panel(pr.a, pr.b, gx, gw);
  }
  return q;
}

/// The default rule for the t-integral of the level-j piece on
/// [0, sqrt(2^{1-j})]: dyadic half-octave levels toward t = 0 (the last level
/// chosen so the neglected t^{2 nu + 1} tail mass is below 1e-12),
/// `panels_per_dyad` uniform panels per level, and geometric grading into
/// t_max when mu < 1 (endpoint of the B factor).
inline Quadrature build_t_quadrature(int j, const ExponentParams& p, int panels_per_dyad,
                                     int nodes_per_panel) {
  if (j < 1) throw std::invalid_argument("build_t_quadrature: j >= 1 required");
  if (panels_per_dyad < 1 || nodes_per_panel < 1)
    throw std::invalid_argument("build_t_quadrature: invalid panel counts");
  const double t_max = std::sqrt(std::pow(2.0, 1 - j));
  const double e = 2.0 * p.nu + 2.0;
  std::vector<double> gx, gw;
  gauss_legendre(nodes_per_panel, gx, gw);
  Quadrature q;
  q.t_max = t_max;
  q.scheme = "dyadic";
  q.panels_per_dyad = panels_per_dyad;
  q.nodes_per_panel = nodes_per_panel;
  int K = 0;
  while (std::pow(t_max * std::pow(2.0, -(K + 1) / 2.0), e) / e > 1e-12) ++K;
  const int depth = 10;
  for (int k = K; k >= 0; --k) {
    const double hi = t_max * std::pow(2.0, -k / 2.0);
    const double lo = t_max * std::pow(2.0, -(k + 1) / 2.0);
    std::vector<detail::PanelStub> ps;
    detail::segment_panels(lo, hi, panels_per_dyad, false, k == 0 && p.mu < 1.0, depth, ps);
    for (auto& pr : ps) q.add_panel(pr.a, pr.b, gx, gw);
  }
  return q;
}

namespace detail {

/// Distinct lattice values of (xi1/xi2)^2 with phi(xi2) != 0, |xi1| <= cap1,
/// restricted to r in (r_lo, r_hi).
inline std::vector<double> lattice_ratio_values(const GridSpec& g, double r_lo, double r_hi, double cap1) {
  std::set<double> vals;
  const double L = g.period;
  const int kmax1 = int(std::floor(cap1 * L));
  for (std::uint32_t i2 = 0; i2 < g.n; ++i2) {
    const double x2 = g.freq_of_index(i2);
    if (!(x2 > 0.5 && x2 < 2.0)) continue;
    for (int k1 = 0; k1 <= kmax1; ++k1) {
      const double r = (k1 / L / x2) * (k1 / L / x2);
      if (r > r_lo && r < r_hi) vals.insert(r);
    }
  }
  return std::vector<double>(vals.begin(), vals.end());
}

}  // namespace detail

/// Grid-adapted rule: like build_t_quadrature but with extra breakpoints at
/// every lattice value of sqrt(1 - r_xi) (B-factor endpoint) and sqrt(r_eta)
/// (T-factor support edge), graded into each breakpoint. The grading depth
/// grows with panels_per_dyad so that panel halving keeps shrinking the
/// endpoint-singularity error. Intended for small grids; the breakpoint set
/// is thinned above 3000 entries.
namespace detail {
/// Graded breakpoints are the ones whose power-law factor is genuinely
/// non-polynomial there; jump/polynomial factors only need panel cuts.
inline void classify_t_breakpoints(const ExponentParams& p, const std::vector<double>& b_vals,
                                   const std::vector<double>& t_vals, std::vector<double>& sing,
                                   std::vector<double>& cuts) {
  const bool grade_B = p.mu < 1.0 || p.mu != std::floor(p.mu);
  const bool grade_T = p.nu != std::floor(p.nu) || p.nu < 0.0;
  (grade_B ? sing : cuts).insert((grade_B ? sing : cuts).end(), b_vals.begin(), b_vals.end());
  (grade_T ? sing : cuts).insert((grade_T ? sing : cuts).end(), t_vals.begin(), t_vals.end());
}

inline void thin_values(std::vector<double>& v, std::size_t cap) {
  if (v.size() <= cap) return;
  std::vector<double> thin;
  const std::size_t stride = v.size() / cap + 1;
  for (std::size_t i = 0; i < v.size(); i += stride) thin.push_back(v[i]);
  v.swap(thin);
}
}  // namespace detail

inline Quadrature build_t_quadrature_adapted(int j, const ExponentParams& p, const GridSpec& g,
                                             int panels_per_dyad, int nodes_per_panel) {
  if (j < 1) throw std::invalid_argument("build_t_quadrature_adapted: j >= 1 required");
  const double t_max = std::sqrt(std::pow(2.0, 1 - j));
  const double cap = g.band_limit() * 2.0;
  std::vector<double> b_vals, t_vals;
  for (double r : detail::lattice_ratio_values(g, 1.0 - std::pow(2.0, 1 - j), 1.0 - std::pow(2.0, -1 - j), cap))
    b_vals.push_back(std::sqrt(1.0 - r));
  for (double rho : detail::lattice_ratio_values(g, 0.0, t_max * t_max, cap)) t_vals.push_back(std::sqrt(rho));
  detail::thin_values(b_vals, 750);
  detail::thin_values(t_vals, 750);
  std::vector<double> sing, cuts;
  detail::classify_t_breakpoints(p, b_vals, t_vals, sing, cuts);
  return build_adapted_on_interval(t_max, p, sing, panels_per_dyad, nodes_per_panel, -1, cuts);
}

/// Low-node-count rule for large-grid norm experiments: dyadic half-octave
/// levels from t_max down to the smallest positive lattice direction ratio
/// t0 = 1/(2L) (below which the T symbol is constant on the lattice), one
/// closing panel [0, t0], light grading into t_max.
inline Quadrature build_budget_on_interval(double t_hi, double t0, int panels_per_dyad,
                                           int nodes_per_panel, bool grade_hi) {
  std::vector<double> gx, gw;
  gauss_legendre(nodes_per_panel, gx, gw);
  Quadrature q;
  q.t_max = t_hi;
  q.scheme = "budget";
  q.panels_per_dyad = panels_per_dyad;
  q.nodes_per_panel = nodes_per_panel;
  std::vector<double> lv{t_hi};
  while (lv.back() / std::sqrt(2.0) > t0) lv.push_back(lv.back() / std::sqrt(2.0));
  lv.push_back(t0);
  std::vector<detail::PanelStub> ps;
  for (std::size_t i = 0; i + 1 < lv.size(); ++i)
    detail::segment_panels(lv[i + 1], lv[i], panels_per_dyad, false, grade_hi && i == 0, 4, ps);
  std::sort(ps.begin(), ps.end(), [](const detail::PanelStub& x, const detail::PanelStub& y) { return x.a < y.a; });
  std::vector<double> cx, cw;
  gauss_legendre(std::min(nodes_per_panel, 4), cx, cw);
  q.add_panel(0.0, t0, cx, cw);
  for (auto& pr : ps) q.add_panel(pr.a, pr.b, gx, gw);
  return q;
}

inline Quadrature build_t_quadrature_budget(int j, const ExponentParams& p, const GridSpec& g,
                                            int panels_per_dyad, int nodes_per_panel) {
  if (j < 1) throw std::invalid_argument("build_t_quadrature_budget: j >= 1 required");
  const double t_max = std::sqrt(std::pow(2.0, 1 - j));
  return build_budget_on_interval(t_max, 0.5 / g.period, panels_per_dyad, nodes_per_panel, p.mu < 1.0);
}

/// Right-hand side of the reconstruction identity
///   (R^2 - m^2)^lambda = c_{mu,nu} int_m^R (R^2-t^2)^{mu-1} t^{2nu+1} (1 - m^2/t^2)^nu dt
/// evaluated with the supplied rule over [m, R].
inline double stein_weiss_reconstruct(double R, double m, const ExponentParams& p, const Quadrature& quad) {
  if (!(R >= m && m >= 0.0)) throw std::invalid_argument("stein_weiss_reconstruct: R >= m >= 0 required");
  if (R == m) return 0.0;
  const double c = stein_weiss_constant(p.mu, p.nu);
  double s = 0.0;
  for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
    const double t = quad.nodes[i];
    if (t <= m || t >= R) continue;
    // (R-t)(R+t) and (t-m)(t+m)/t^2: exact subtractions near the endpoints
    s += quad.weights[i] * pos_pow((R - t) * (R + t), p.mu - 1.0) * std::pow(t, 2.0 * p.nu + 1.0) *
         pos_pow((t - m) * (t + m) / (t * t), p.nu);
  }
  return c * s;
}

}  // namespace conelab

#endif
