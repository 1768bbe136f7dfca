#ifndef CONELAB_OPERATORS_HPP
#define CONELAB_OPERATORS_HPP

#include <atomic>
#include <cstdlib>
#include <functional>
#include <future>
#include <thread>
#include <unordered_map>

#include "conelab/dft.hpp"
#include "conelab/quadrature.hpp"

namespace conelab {

/// Parallelism cap: CML_THREADS env var, else hardware concurrency.
inline unsigned worker_threads() {
  static unsigned cached = [] {
    unsigned hc = std::max(1u, std::thread::hardware_concurrency());
    if (const char* s = std::getenv("CML_THREADS")) {
      long v = std::strtol(s, nullptr, 10);
      if (v >= 1) hc = std::min<unsigned>(hc, unsigned(v));
    }
    return hc;
  }();
  return cached;
}

struct ExcisionStats {
  std::size_t points = 0;
  double mass = 0.0;  // sum of |ghat| L^{-2} over excised lattice points
};

namespace detail {

/// Fills `out` with symbol(eta) * Ghat(eta); zeroes near-singular lattice
/// points and accumulates their spectral mass. Returns true if any entry is
/// nonzero.
inline bool linear_symbol_spectrum(const LinearSymbolSpec& spec, const Field& Ghat, std::vector<cplx>& out,
                                   ExcisionStats* exc) {
  const GridSpec& g = Ghat.grid;
  const std::uint32_t n = g.n;
  out.assign(g.size(), cplx(0.0, 0.0));
  const double inv_l2 = 1.0 / (g.period * g.period);
  bool any = false;
  for (std::uint32_t i1 = 0; i1 < n; ++i1) {
    const double e1 = g.freq_of_index(i1);
    for (std::uint32_t i2 = 0; i2 < n; ++i2) {
      const cplx gv = Ghat.samples[std::size_t(i1) * n + i2];
      if (gv == cplx(0.0, 0.0)) continue;
      const double e2 = g.freq_of_index(i2);
      bool near_sing = false;
      const double sym = eval_linear_symbol(spec, e1, e2, &near_sing);
      if (near_sing) {
        if (exc) {
          exc->points++;
          exc->mass += std::abs(gv) * inv_l2;
        }
        continue;
      }
      if (sym == 0.0) continue;
      out[std::size_t(i1) * n + i2] = sym * gv;
      any = true;
    }
  }
  return any;
}

inline std::uint64_t fnv1a(const void* data, std::size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace detail

/// Fourier multiplier application: dft_inverse(symbol . dft_forward(g)).
/// Near-singular frequencies are excised (set to zero) and reported.
inline Field apply_linear(const LinearSymbolSpec& spec, const Field& g, ExcisionStats* exc = nullptr) {
  Field Ghat = to_frequency(g);
  Field H(Ghat.grid, Rep::frequency);
  detail::linear_symbol_spectrum(spec, Ghat, H.samples, exc);
  return dft_inverse(H);
}

/// Report from a factorized bilinear application.
struct BilinearApplyReport {
  Field result;
  long quadrature_nodes_used = 0;
  double excised_symbol_mass = 0.0;
  int truncation_j_max = 0;
};

/// Exact discrete bilinear operator: the oracle. Cost O(#active-xi n^2 log n),
/// guarded to n <= 64.
///
/// h(x) = L^{-4} sum_xi sum_eta m(xi,eta) fhat(xi) ghat(eta) e^{2 pi i x.(xi+eta)}.
inline Field apply_bilinear_direct(const BilinearSymbolSpec& spec, const Field& f, const Field& g) {
  if (f.grid.n > 64) throw std::invalid_argument("apply_bilinear_direct: grid too large (n <= 64)");
  if (!(f.grid == g.grid)) throw std::invalid_argument("apply_bilinear_direct: grids differ");
  const GridSpec& gr = f.grid;
  const std::uint32_t n = gr.n;
  Field Fhat = to_frequency(f), Ghat = to_frequency(g);
  Field out(gr, Rep::space);
  const double inv_l2 = 1.0 / (gr.period * gr.period);

  // per-axis phase tables e^{2 pi i k i / n}
  std::vector<cplx> phase(std::size_t(n) * n);
  for (std::uint32_t k = 0; k < n; ++k) {
    const double w = 2.0 * 3.14159265358979323846 * (double(k) - n / 2.0) / n;
    for (std::uint32_t i = 0; i < n; ++i) phase[std::size_t(k) * n + i] = std::polar(1.0, w * i);
  }

  Field H(gr, Rep::frequency);
  for (std::uint32_t a1 = 0; a1 < n; ++a1) {
    const double x1 = gr.freq_of_index(a1);
    for (std::uint32_t a2 = 0; a2 < n; ++a2) {
      const cplx fv = Fhat.samples[std::size_t(a1) * n + a2];
      if (fv == cplx(0.0, 0.0)) continue;
      const double x2 = gr.freq_of_index(a2);
      bool any = false;
      for (std::uint32_t b1 = 0; b1 < n; ++b1) {
        const double e1 = gr.freq_of_index(b1);
        for (std::uint32_t b2 = 0; b2 < n; ++b2) {
          const cplx gv = Ghat.samples[std::size_t(b1) * n + b2];
          cplx val(0.0, 0.0);
          if (gv != cplx(0.0, 0.0)) {
            const double m = eval_bilinear_symbol(spec, x1, x2, e1, gr.freq_of_index(b2));
            if (m != 0.0) {
              val = m * gv;
              any = true;
            }
          }
          H.samples[std::size_t(b1) * n + b2] = val;
        }
      }
      if (!any) continue;
      Field hx = dft_inverse(H);
      const cplx* p1 = &phase[std::size_t(a1) * n];
      const cplx* p2 = &phase[std::size_t(a2) * n];
      const cplx c = fv * inv_l2;
      for (std::uint32_t i1 = 0; i1 < n; ++i1) {
        const cplx c1 = c * p1[i1];
        cplx* dst = &out.samples[std::size_t(i1) * n];
        const cplx* src = &hx.samples[std::size_t(i1) * n];
        for (std::uint32_t i2 = 0; i2 < n; ++i2) dst[i2] += c1 * p2[i2] * src[i2];
      }
    }
  }
  return out;
}

namespace detail {

/// Applies one linear factor per quadrature node, reusing the inverse
/// transform when consecutive nodes produce a bit-identical spectrum (the T
/// factor is constant below the smallest lattice direction ratio).
class NodeFieldCache {
 public:
  const Field* get(const LinearSymbolSpec& spec, const Field& Ghat, ExcisionStats* exc, bool* nonzero) {
    std::vector<cplx> spect;
    const bool any = linear_symbol_spectrum(spec, Ghat, spect, exc);
    *nonzero = any;
    if (!any) return nullptr;
    const std::uint64_t h = fnv1a(spect.data(), spect.size() * sizeof(cplx));
    auto it = cache_.find(h);
    if (it != cache_.end()) return &it->second;
    Field H(Ghat.grid, Rep::frequency, std::move(spect));
    auto res = cache_.emplace(h, dft_inverse(H));
    if (cache_.size() > 8) {
      // keep the map small: drop an arbitrary non-current entry
      for (auto jt = cache_.begin(); jt != cache_.end(); ++jt)
        if (jt != res.first) {
          cache_.erase(jt);
          break;
        }
    }
    return &res.first->second;
  }

 private:
  std::unordered_map<std::uint64_t, Field> cache_;
};

struct NodeTask {
  double weight = 0.0;
  const Field* tfield = nullptr;
  const Field* bfield = nullptr;
};

}  // namespace detail

namespace detail {
Field c1_smooth_piece(const ExponentParams& p, const Field& f, const Field& g);

/// Distinct squared direction ratios (e1/e2)^2 in (r_lo, r_hi) over the
/// nonzero spectrum of Fhat (thinned above 1500 values).
inline std::vector<double> active_ratio_values(const Field& Fhat, double r_lo, double r_hi) {
  std::set<double> vals;
  const GridSpec& g = Fhat.grid;
  for (std::uint32_t i1 = 0; i1 < g.n; ++i1) {
    const double e1 = g.freq_of_index(i1);
    for (std::uint32_t i2 = 0; i2 < g.n; ++i2) {
      if (Fhat.samples[std::size_t(i1) * g.n + i2] == cplx(0.0, 0.0)) continue;
      const double e2 = g.freq_of_index(i2);
      if (!(e2 > 0.0)) continue;
      const double r = (e1 / e2) * (e1 / e2);
      if (r > r_lo && r < r_hi) vals.insert(r);
    }
  }
  std::vector<double> out(vals.begin(), vals.end());
  if (out.size() > 1500) {
    std::vector<double> thin;
    const std::size_t stride = out.size() / 1500 + 1;
    for (std::size_t i = 0; i < out.size(); i += stride) thin.push_back(out[i]);
    out.swap(thin);
  }
  return out;
}
}  // namespace detail

/// Adapted rule whose breakpoints come from the active spectra of the two
/// inputs rather than the whole lattice: same accuracy where it matters, far
/// fewer nodes on large grids.
inline Quadrature build_t_quadrature_active(int j, const ExponentParams& p, const Field& Fhat,
                                            const Field& Ghat, int panels_per_dyad, int nodes_per_panel) {
  const double t_max = std::sqrt(std::pow(2.0, 1 - j));
  std::vector<double> b_vals, t_vals;
  for (double r :
       detail::active_ratio_values(Fhat, 1.0 - std::pow(2.0, 1 - j), 1.0 - std::pow(2.0, -1 - j)))
    b_vals.push_back(std::sqrt(1.0 - r));
  for (double rho : detail::active_ratio_values(Ghat, 0.0, t_max * t_max))
    t_vals.push_back(std::sqrt(rho));
  std::vector<double> sing, cuts;
  detail::classify_t_breakpoints(p, b_vals, t_vals, sing, cuts);
  return build_adapted_on_interval(t_max, p, sing, panels_per_dyad, nodes_per_panel, -1, cuts);
}

/// C_j^lambda(f,g) through the factorized representation
///   c_{mu,nu} int_0^{sqrt(2^{1-j})} T_t^nu g(x) t^{2nu+1} B_{j,t}^mu f(x) dt,
/// discretized on the supplied rule. Nodes are weighted and summed in fixed
/// node order whatever the execution order. For j = 1 the multiplier is
/// assembled from its three eta-decomposition pieces (smooth part, shifted
/// B~.T part, and the dyadic-in-eta parts, which reduce to C_k with the
/// roles of the arguments exchanged); the supplied rule sets the resolution
/// knobs for the internally built rules.
inline BilinearApplyReport apply_C_j(const ExponentParams& p, int j, const Field& f, const Field& g,
                                     const Quadrature& quad);

namespace detail {

/// Shared core of apply_C_j (j >= 2) and the m_{1,12} piece: weighted sum of
/// products of two linear-factor applications over the nodes of `quad`.
inline BilinearApplyReport factorized_pair_integral(
    const ExponentParams& p, const Quadrature& quad,
    const std::function<LinearSymbolSpec(double)>& bspec_at,
    const std::function<LinearSymbolSpec(double)>& tspec_at, const Field& bf_input,
    const Field& tf_input) {
  const GridSpec gr = bf_input.grid;
  BilinearApplyReport rep;
  rep.result = Field(gr, Rep::space);
  ExcisionStats exc;
  const double c = stein_weiss_constant(p.mu, p.nu);
  Field Bhat = to_frequency(bf_input);
  Field That = to_frequency(tf_input);
  NodeFieldCache tcache, bcache;
  for (std::size_t qi = 0; qi < quad.size(); ++qi) {
    const double t = quad.nodes[qi];
    if (!(t > 0.0)) continue;
    bool nzT = false, nzB = false;
    const Field* Tf = tcache.get(tspec_at(t), That, &exc, &nzT);
    if (!nzT) continue;
    const Field* Bf = bcache.get(bspec_at(t), Bhat, &exc, &nzB);
    if (!nzB) continue;
    const double w = quad.weights[qi] * std::pow(t, 2.0 * p.nu + 1.0) * c;
    for (std::size_t i = 0; i < rep.result.samples.size(); ++i)
      rep.result.samples[i] += w * Tf->samples[i] * Bf->samples[i];
    rep.quadrature_nodes_used++;
  }
  rep.excised_symbol_mass = exc.mass;
  return rep;
}

}  // namespace detail

inline BilinearApplyReport apply_C_j(const ExponentParams& p, int j, const Field& f, const Field& g,
                                     const Quadrature& quad) {
  if (j < 1) throw std::invalid_argument("apply_C_j: j >= 1 required");
  if (!(f.grid == g.grid)) throw std::invalid_argument("apply_C_j: grids differ");
  if (j >= 2) {
    auto rep = detail::factorized_pair_integral(
        p, quad, [&](double t) { return LinearSymbolSpec::B(p, j, t); },
        [&](double t) { return LinearSymbolSpec::T(p, t); }, f, g);
    return rep;
  }

  // j = 1: smooth part + shifted part + dyadic-in-eta parts.
  const GridSpec gr = f.grid;
  const int P = quad.panels_per_dyad;
  const int nodes_pp = quad.nodes_per_panel;
  const bool budget = quad.scheme == "budget";

  BilinearApplyReport rep;
  rep.result = detail::c1_smooth_piece(p, f, g);

  Field h = apply_linear(LinearSymbolSpec::cutoff_h(), f);

  Field Ghat = to_frequency(g);
  Field Hhat = to_frequency(h);

  // m_{1,12}: c int_0^{sqrt(15/16)} B~_t^mu g . T_t^nu h t^{2nu+1} dt
  {
    const double t_hi = std::sqrt(15.0 / 16.0);
    Quadrature q12;
    if (budget) {
      q12 = build_budget_on_interval(t_hi, 0.5 / gr.period, P, nodes_pp, p.mu < 1.0);
    } else {
      std::vector<double> b_vals, t_vals;
      for (double r : detail::active_ratio_values(Ghat, 1.0 / 16.0, 3.0 / 4.0))
        b_vals.push_back(std::sqrt(1.0 - r));
      for (double rho : detail::active_ratio_values(Hhat, 0.0, 15.0 / 16.0))
        t_vals.push_back(std::sqrt(rho));
      std::vector<double> sing, cuts;
      detail::classify_t_breakpoints(p, b_vals, t_vals, sing, cuts);
      q12 = build_adapted_on_interval(t_hi, p, sing, P, nodes_pp, -1, cuts);
    }
    auto piece = detail::factorized_pair_integral(
        p, q12, [&](double t) { return LinearSymbolSpec::Btilde(p, t); },
        [&](double t) { return LinearSymbolSpec::T(p, t); }, g, h);
    for (std::size_t i = 0; i < rep.result.samples.size(); ++i)
      rep.result.samples[i] += piece.result.samples[i];
    rep.quadrature_nodes_used += piece.quadrature_nodes_used;
    rep.excised_symbol_mass += piece.excised_symbol_mass;
  }

  // sum_{k>=2} m_{1,k}: each equals C_k with the roles exchanged, applied to
  // (g, h). Truncate when no lattice ratio value meets the k-shell.
  {
    auto rvals = detail::active_ratio_values(Ghat, 0.0, 1.0);
    int k_max = 1;
    for (double r : rvals) {
      const double u = 1.0 - r;
      if (u <= 0.0) continue;
      const int k = int(std::floor(-std::log2(u))) + 1;  // largest k with 2^k u < 2
      k_max = std::max(k_max, k);
    }
    k_max = std::min(k_max, 40);
    for (int k = 2; k <= k_max; ++k) {
      Quadrature qk = budget ? build_t_quadrature_budget(k, p, gr, P, nodes_pp)
                             : build_t_quadrature_active(k, p, Ghat, Hhat, P, nodes_pp);
      auto piece = detail::factorized_pair_integral(
          p, qk, [&](double t) { return LinearSymbolSpec::B(p, k, t); },
          [&](double t) { return LinearSymbolSpec::T(p, t); }, g, h);
      for (std::size_t i = 0; i < rep.result.samples.size(); ++i)
        rep.result.samples[i] += piece.result.samples[i];
      rep.quadrature_nodes_used += piece.quadrature_nodes_used;
      rep.excised_symbol_mass += piece.excised_symbol_mass;
    }
  }
  return rep;
}

struct ApplyOptions {
  std::string scheme = "auto";  // auto | adapted | budget | dyadic
  int panels_per_dyad = 4;
  int nodes_per_panel = 8;
};

inline Quadrature build_quadrature_for(const std::string& scheme, int j, const ExponentParams& p,
                                       const GridSpec& g, int P, int nodes) {
  std::string s = scheme;
  if (s == "auto") s = g.n <= 64 ? "adapted" : "budget";
  if (s == "adapted") return build_t_quadrature_adapted(j, p, g, P, nodes);
  if (s == "budget") return build_t_quadrature_budget(j, p, g, P, nodes);
  if (s == "dyadic") return build_t_quadrature(j, p, P, nodes);
  throw std::invalid_argument("unknown quadrature scheme: " + scheme);
}

/// C^lambda truncated at j_max: sum of the dyadic pieces. The grid must be
/// cone-adequate for j_max.
inline BilinearApplyReport apply_C(const ExponentParams& p, const Field& f, const Field& g, int j_max,
                                   const ApplyOptions& opt = {}) {
  if (j_max < 2) throw std::invalid_argument("apply_C: j_max >= 2 required");
  if (!f.grid.cone_adequate(j_max))
    throw std::invalid_argument("apply_C: grid not cone-adequate for level " + std::to_string(j_max) +
                                "; period L >= " + std::to_string(GridSpec::required_period(j_max)) +
                                " with n >= 8 L required");
  BilinearApplyReport total;
  total.result = Field(f.grid, Rep::space);
  total.truncation_j_max = j_max;
  Field Fhat = to_frequency(f), Ghat = to_frequency(g);
  for (int j = 1; j <= j_max; ++j) {
    Quadrature q = opt.scheme == "auto"
                       ? build_t_quadrature_active(j, p, Fhat, Ghat, opt.panels_per_dyad, opt.nodes_per_panel)
                       : build_quadrature_for(opt.scheme, j, p, f.grid, opt.panels_per_dyad, opt.nodes_per_panel);
    auto rep = apply_C_j(p, j, f, g, q);
    for (std::size_t i = 0; i < total.result.samples.size(); ++i)
      total.result.samples[i] += rep.result.samples[i];
    total.quadrature_nodes_used += rep.quadrature_nodes_used;
    total.excised_symbol_mass += rep.excised_symbol_mass;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Square functions
// ---------------------------------------------------------------------------

namespace detail {

inline Field square_function(const std::function<LinearSymbolSpec(double)>& spec_at, double exponent,
                             const Field& input, const Quadrature& quad, ExcisionStats* exc = nullptr) {
  Field Ihat = to_frequency(input);
  Field acc(Ihat.grid, Rep::space);
  std::vector<double> sums(acc.samples.size(), 0.0);
  NodeFieldCache cache;
  for (std::size_t qi = 0; qi < quad.size(); ++qi) {
    const double t = quad.nodes[qi];
    if (!(t > 0.0)) continue;
    bool nz = false;
    const Field* Tf = cache.get(spec_at(t), Ihat, exc, &nz);
    if (!nz) continue;
    const double w = quad.weights[qi] * std::pow(t, 2.0 * exponent);
    for (std::size_t i = 0; i < sums.size(); ++i) sums[i] += w * std::norm(Tf->samples[i]);
  }
  for (std::size_t i = 0; i < sums.size(); ++i) acc.samples[i] = cplx(std::sqrt(sums[i]), 0.0);
  return acc;
}

}  // namespace detail

/// H_b^{nu,j} g = (int_0^{sqrt(2^{1-j})} |T_t^nu g|^2 t^{2b} dt)^{1/2}.
inline Field square_H(const ExponentParams& p, int /*j*/, const Field& g, const Quadrature& quad) {
  if (!(p.b > -0.5)) throw std::invalid_argument("square_H: b > -1/2 required");
  return detail::square_function([&](double t) { return LinearSymbolSpec::T(p, t); }, p.b, g, quad);
}

/// G_a^{mu,j} f = (int_0^{sqrt(2^{1-j})} |B_{j,t}^mu f|^2 t^{2a} dt)^{1/2}.
inline Field square_G(const ExponentParams& p, int j, const Field& f, const Quadrature& quad) {
  return detail::square_function([&](double t) { return LinearSymbolSpec::B(p, j, t); }, p.a, f, quad);
}

enum class AnnulusPiece { T_piece, B_piece };

/// Restricted-interval square function: the head piece on
/// [sqrt(2^{-2-j}), sqrt(2^{1-j})] (pass k < 0) or the dyadic tail piece on
/// [2^{-(k+1)/2}, 2^{-k/2}] for k >= 2+j. The rule must cover the interval.
inline Field square_annulus(const ExponentParams& p, int j, int k, AnnulusPiece which, const Field& input,
                            const Quadrature& quad) {
  if (k >= 0 && k < 2 + j) throw std::invalid_argument("square_annulus: tail pieces need k >= 2+j");
  if (which == AnnulusPiece::T_piece)
    return detail::square_function([&](double t) { return LinearSymbolSpec::T(p, t); }, p.b, input, quad);
  return detail::square_function([&](double t) { return LinearSymbolSpec::B(p, j, t); }, p.a, input, quad);
}

// ---------------------------------------------------------------------------
// The smooth j=1 piece m_{1,11}: separable Chebyshev expansion of
// W(u,v) = (1-u-v)^lambda over [0,3/4] x [0,1/8] (where 1-u-v >= 1/8, so W is
// smooth); the bump factors stay exact inside the transforms.
// ---------------------------------------------------------------------------

namespace detail {

struct Cheb2D {
  int mx, my;
  std::vector<double> c;  // (mx+1) x (my+1)
  double residual = 0.0;
};

inline Cheb2D cheb_fit_w(double lambda, int mx, int my) {
  const int px = mx + 1, py = my + 1;
  const double pi = 3.14159265358979323846;
  std::vector<double> fx(px * py);
  auto u_of = [&](double xc) { return (xc + 1.0) * 0.375; };  // [-1,1] -> [0,3/4]
  auto v_of = [&](double yc) { return (yc + 1.0) * 0.0625; }; // [-1,1] -> [0,1/8]
  for (int pp = 0; pp < px; ++pp) {
    const double xc = std::cos(pi * (pp + 0.5) / px);
    for (int qq = 0; qq < py; ++qq) {
      const double yc = std::cos(pi * (qq + 0.5) / py);
      fx[pp * py + qq] = std::pow(1.0 - u_of(xc) - v_of(yc), lambda);
    }
  }
  Cheb2D out{mx, my, std::vector<double>(px * py, 0.0), 0.0};
  for (int m = 0; m <= mx; ++m)
    for (int l = 0; l <= my; ++l) {
      double s = 0.0;
      for (int pp = 0; pp < px; ++pp) {
        const double tm = std::cos(pi * m * (pp + 0.5) / px);
        for (int qq = 0; qq < py; ++qq) s += fx[pp * py + qq] * tm * std::cos(pi * l * (qq + 0.5) / py);
      }
      out.c[m * py + l] = s * (2.0 - (m == 0 ? 1.0 : 0.0)) * (2.0 - (l == 0 ? 1.0 : 0.0)) / (px * py);
    }
  // residual probe on an off-node grid
  double worst = 0.0;
  for (int i = 0; i <= 40; ++i)
    for (int jj = 0; jj <= 40; ++jj) {
      const double u = 0.75 * i / 40.0, v = 0.125 * jj / 40.0;
      const double xc = u / 0.375 - 1.0, yc = v / 0.0625 - 1.0;
      double acc = 0.0;
      std::vector<double> tx(mx + 1), ty(my + 1);
      tx[0] = 1.0;
      if (mx >= 1) tx[1] = xc;
      for (int m = 2; m <= mx; ++m) tx[m] = 2.0 * xc * tx[m - 1] - tx[m - 2];
      ty[0] = 1.0;
      if (my >= 1) ty[1] = yc;
      for (int l = 2; l <= my; ++l) ty[l] = 2.0 * yc * ty[l - 1] - ty[l - 2];
      for (int m = 0; m <= mx; ++m)
        for (int l = 0; l <= my; ++l) acc += out.c[m * py + l] * tx[m] * ty[l];
      worst = std::max(worst, std::abs(acc - std::pow(1.0 - u - v, lambda)));
    }
  out.residual = worst;
  return out;
}

inline Field c1_smooth_piece(const ExponentParams& p, const Field& f, const Field& g) {
  static std::mutex m;
  static std::unordered_map<double, Cheb2D> fits;
  const Cheb2D* fit = nullptr;
  {
    std::lock_guard<std::mutex> lock(m);
    auto it = fits.find(p.lambda);
    if (it == fits.end()) {
      Cheb2D c = cheb_fit_w(p.lambda, 40, 24);
      if (c.residual > 1e-8) c = cheb_fit_w(p.lambda, 64, 40);
      it = fits.emplace(p.lambda, std::move(c)).first;
    }
    fit = &it->second;
  }
  const GridSpec& gr = f.grid;
  const std::uint32_t n = gr.n;
  Field Fhat = to_frequency(f), Ghat = to_frequency(g);

  const int px = fit->mx + 1, py = fit->my + 1;
  // Chebyshev factor fields: F_m = ifft(psi1(r) phi T_m(u^) fhat),
  // G_l = ifft(psi11(r) phi T_l(v^) ghat)
  std::vector<Field> Fm, Gl;
  Fm.reserve(px);
  Gl.reserve(py);
  std::vector<double> tvals(std::max(px, py));
  auto build_side = [&](const Field& src, bool xi_side, int count, std::vector<Field>& dst) {
    std::vector<Field> hats(count, Field(gr, Rep::frequency));
    for (std::uint32_t i1 = 0; i1 < n; ++i1) {
      const double e1 = gr.freq_of_index(i1);
      for (std::uint32_t i2 = 0; i2 < n; ++i2) {
        const cplx v = src.samples[std::size_t(i1) * n + i2];
        if (v == cplx(0.0, 0.0)) continue;
        const double e2 = gr.freq_of_index(i2);
        const double phi = (e2 > 0.5 && e2 < 2.0) ? psi_eval(e2) : 0.0;
        if (phi == 0.0) continue;
        const double r = (e1 / e2) * (e1 / e2);
        const double cut = xi_side ? psi1_eval(r) : psi11_eval(r);
        if (cut == 0.0) continue;
        const double span = xi_side ? 0.375 : 0.0625;
        const double xc = r / span - 1.0;
        if (xc > 1.0) continue;
        tvals[0] = 1.0;
        if (count > 1) tvals[1] = xc;
        for (int mth = 2; mth < count; ++mth) tvals[mth] = 2.0 * xc * tvals[mth - 1] - tvals[mth - 2];
        const cplx base = v * phi * cut;
        for (int mth = 0; mth < count; ++mth)
          hats[mth].samples[std::size_t(i1) * n + i2] = base * tvals[mth];
      }
    }
    for (int mth = 0; mth < count; ++mth) dst.push_back(dft_inverse(hats[mth]));
  };
  build_side(Fhat, true, px, Fm);
  build_side(Ghat, false, py, Gl);

  Field out(gr, Rep::space);
  for (int mth = 0; mth < px; ++mth)
    for (int l = 0; l < py; ++l) {
      const double cml = fit->c[mth * py + l];
      if (std::abs(cml) < 1e-14) continue;
      for (std::size_t i = 0; i < out.samples.size(); ++i)
        out.samples[i] += cml * Fm[mth].samples[i] * Gl[l].samples[i];
    }
  return out;
}

}  // namespace detail

}  // namespace conelab

#endif
