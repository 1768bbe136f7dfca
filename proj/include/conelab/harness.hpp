#ifndef CONELAB_HARNESS_HPP
#define CONELAB_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "conelab/maximal.hpp"
#include "conelab/operators.hpp"
#include "conelab/regions.hpp"

namespace conelab {

// ---------------------------------------------------------------------------
// Deterministic per-trial seeding: parallel and serial runs agree exactly.
// ---------------------------------------------------------------------------
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------------------
// Test functions
// ---------------------------------------------------------------------------

/// Test-function families. Every generated Field is band-limited to
/// |xi_i| <= n/(4L) per axis (hard projection) and carries negligible
/// wrap-around mass by construction (Gaussian widths capped at L/12, compact
/// bump envelopes).
struct TestFunctionSpec {
  enum class Family { gaussian_packet, rademacher_regions, knapp, plane_wave_bump };
  Family family = Family::gaussian_packet;
  GridSpec grid;
  double norm_p = 2.0;       // normalization target norm
  double norm_value = 1.0;   // and value
  // gaussian_packet
  double center1 = 0, center2 = 0, freq1 = 0, freq2 = 0, width1 = 1, width2 = 1, orient = 0;
  // rademacher_regions / knapp
  std::vector<FrequencyRegion> regions;
  int knapp_region = 0;
};

namespace detail {

inline void band_limit_project(Field& F) {
  const std::uint32_t n = F.grid.n;
  const int cap = int(n) / 4;
  for (std::uint32_t i1 = 0; i1 < n; ++i1) {
    const int k1 = int(i1) - int(n) / 2;
    for (std::uint32_t i2 = 0; i2 < n; ++i2) {
      const int k2 = int(i2) - int(n) / 2;
      if (std::abs(k1) > cap || std::abs(k2) > cap) F.samples[std::size_t(i1) * n + i2] = cplx(0.0, 0.0);
    }
  }
}

}  // namespace detail

/// Deterministic in (spec, seed); normalized to the requested L^p value.
inline Field gen_test_function(const TestFunctionSpec& spec, std::uint64_t seed) {
  const GridSpec& g = spec.grid;
  const std::uint32_t n = g.n;
  std::mt19937_64 rng(seed);
  Field F(g, Rep::frequency);
  using Fam = TestFunctionSpec::Family;
  switch (spec.family) {
    case Fam::gaussian_packet: {
      // spatial gaussian e^{-pi |R(x-c)/sigma|^2} e^{2 pi i x.k0}, built in
      // space; widths capped so wrap-around mass is far below 1e-10
      const double w1 = std::min(spec.width1, g.period / 12.0);
      const double w2 = std::min(spec.width2, g.period / 12.0);
      const double ct = std::cos(spec.orient), st = std::sin(spec.orient);
      Field f(g, Rep::space);
      const double L = g.period;
      for (std::uint32_t i1 = 0; i1 < n; ++i1) {
        double d1 = g.coord_of_index(i1) - spec.center1;
        d1 -= L * std::round(d1 / L);
        for (std::uint32_t i2 = 0; i2 < n; ++i2) {
          double d2 = g.coord_of_index(i2) - spec.center2;
          d2 -= L * std::round(d2 / L);
          const double u = (ct * d1 + st * d2) / w1, v = (-st * d1 + ct * d2) / w2;
          const double env = std::exp(-3.14159265358979323846 * (u * u + v * v));
          const double ph = 2.0 * 3.14159265358979323846 *
                            (g.coord_of_index(i1) * spec.freq1 + g.coord_of_index(i2) * spec.freq2);
          f.samples[std::size_t(i1) * n + i2] = env * std::polar(1.0, ph);
        }
      }
      F = dft_forward(f);
      break;
    }
    case Fam::rademacher_regions: {
      std::bernoulli_distribution coin(0.5);
      std::vector<double> sign(spec.regions.size());
      for (double& s : sign) s = coin(rng) ? 1.0 : -1.0;
      for (std::uint32_t i1 = 0; i1 < n; ++i1) {
        const double e1 = g.freq_of_index(i1);
        for (std::uint32_t i2 = 0; i2 < n; ++i2) {
          const double e2 = g.freq_of_index(i2);
          for (std::size_t r = 0; r < spec.regions.size(); ++r)
            if (contains(spec.regions[r], e1, e2)) {
              F.samples[std::size_t(i1) * n + i2] += cplx(sign[r], 0.0);
              break;
            }
        }
      }
      break;
    }
    case Fam::knapp: {
      const FrequencyRegion& r = spec.regions.at(std::size_t(spec.knapp_region));
      for (std::uint32_t i1 = 0; i1 < n; ++i1) {
        const double e1 = g.freq_of_index(i1);
        for (std::uint32_t i2 = 0; i2 < n; ++i2)
          if (contains(r, e1, g.freq_of_index(i2))) F.samples[std::size_t(i1) * n + i2] = cplx(1.0, 0.0);
      }
      break;
    }
    case Fam::plane_wave_bump: {
      Field f(g, Rep::space);
      const double L = g.period;
      const double rad = L / 6.0;
      for (std::uint32_t i1 = 0; i1 < n; ++i1) {
        double d1 = g.coord_of_index(i1) - spec.center1;
        d1 -= L * std::round(d1 / L);
        for (std::uint32_t i2 = 0; i2 < n; ++i2) {
          double d2 = g.coord_of_index(i2) - spec.center2;
          d2 -= L * std::round(d2 / L);
          const double s = std::hypot(d1, d2) / rad;
          const double env = chi_cutoff(1.0 + s);  // smooth, 1 at center, 0 beyond s=1
          if (env == 0.0) continue;
          const double ph = 2.0 * 3.14159265358979323846 *
                            (g.coord_of_index(i1) * spec.freq1 + g.coord_of_index(i2) * spec.freq2);
          f.samples[std::size_t(i1) * n + i2] = env * std::polar(1.0, ph);
        }
      }
      F = dft_forward(f);
      break;
    }
  }
  detail::band_limit_project(F);
  Field out = dft_inverse(F);
  const double nv = norm_lp(out, spec.norm_p);
  if (nv < 1e-300) throw std::runtime_error("gen_test_function: degenerate (zero) field; band limit infeasible");
  const double scale = spec.norm_value / nv;
  for (cplx& v : out.samples) v *= scale;
  return out;
}

// ---------------------------------------------------------------------------
// Norm-ratio estimation
// ---------------------------------------------------------------------------

struct RatioRecord {
  std::string op_tag;
  int j = 0;
  double p1 = 2, p2 = 2, p = 1, lambda = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double max_ratio = 0.0;
  int argmax_trial = -1;
  double cauchy_diff = -1.0;  // relative two-level quadrature difference, when measured
};

/// Mixed-family pair source for the bilinear experiments: 40% gaussian
/// packets, 30% rademacher over trapezoid slices, 20% knapp cells, 10%
/// plane-wave bumps. The f-side frequency localization is drawn inside the
/// level-j shell (shared unit draws across j so pairs are reused).
struct PairMix {
  GridSpec grid;
  int j = 2;
  double p1 = 2.0, p2 = 2.0;

  std::pair<Field, Field> draw(std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double L = grid.period;
    const double shell_lo = 1.0 - std::pow(2.0, 1 - j), shell_hi = 1.0 - std::pow(2.0, -1 - j);
    const double pick = u01(rng);
    // common unit draws
    const double uc1 = u01(rng), uc2 = u01(rng), ur = u01(rng), ux2 = u01(rng), uo = u01(rng);
    TestFunctionSpec fs;
    fs.grid = grid;
    fs.norm_p = p1;
    // f-side: spectrum near the shell ratio band
    const double r_mid = shell_lo + ur * (shell_hi - shell_lo);
    const double x2 = 0.7 + 0.9 * ux2;
    const double x1 = std::sqrt(std::max(r_mid, 0.0)) * x2;
    if (pick < 0.4) {
      fs.family = TestFunctionSpec::Family::gaussian_packet;
      fs.center1 = uc1 * L;
      fs.center2 = uc2 * L;
      fs.freq1 = x1;
      fs.freq2 = x2;
      const double shell_w = std::max(std::pow(2.0, -j - 1), 1.0 / L);
      fs.width1 = std::min(L / 12.0, 2.0 / shell_w / 8.0);
      fs.width2 = std::min(L / 12.0, 4.0);
      fs.orient = uo * 3.14159265358979323846;
    } else if (pick < 0.7) {
      fs.family = TestFunctionSpec::Family::rademacher_regions;
      const int ell = std::max(2, j);
      for (int jj = 1; jj <= (1 << ell); ++jj) fs.regions.push_back(FrequencyRegion::trapezoid_slice(-1, jj, ell));
      for (int jj = 1; jj <= (1 << ell); ++jj) fs.regions.push_back(FrequencyRegion::trapezoid_slice(-2, jj, ell));
    } else if (pick < 0.9) {
      fs.family = TestFunctionSpec::Family::knapp;
      const int ell = std::max(2, std::min(j + 1, int(std::log2(L)) - 1));
      const int jj = 1 + int(ur * ((1 << ell) - 1));
      fs.regions.push_back(FrequencyRegion::trapezoid_slice(-1, jj, ell));
    } else {
      fs.family = TestFunctionSpec::Family::plane_wave_bump;
      fs.center1 = uc1 * L;
      fs.center2 = uc2 * L;
      fs.freq1 = x1;
      fs.freq2 = x2;
    }
    Field f = gen_test_function(fs, trial_seed(seed, 11));

    // g-side: cone interior, t-support heavy
    TestFunctionSpec gs;
    gs.grid = grid;
    gs.norm_p = p2;
    const double vg1 = u01(rng), vg2 = u01(rng), vg3 = u01(rng), vg4 = u01(rng);
    const double tmax = std::sqrt(std::pow(2.0, 1 - j));
    const double e2 = 0.7 + 0.9 * vg2;
    const double e1 = (vg3 * 0.9) * tmax * e2;
    if (vg1 < 0.5) {
      gs.family = TestFunctionSpec::Family::gaussian_packet;
      gs.center1 = vg4 * L;
      gs.center2 = vg1 * 2.0 * L;
      gs.freq1 = e1;
      gs.freq2 = e2;
      gs.width1 = std::min(L / 12.0, 6.0);
      gs.width2 = std::min(L / 12.0, 6.0);
    } else {
      gs.family = TestFunctionSpec::Family::gaussian_packet;
      gs.center1 = vg4 * L;
      gs.center2 = vg3 * L;
      gs.freq1 = 0.0;
      gs.freq2 = e2;
      gs.width1 = std::min(L / 12.0, 3.0);
      gs.width2 = std::min(L / 12.0, 3.0);
    }
    Field gfield = gen_test_function(gs, trial_seed(seed, 13));
    return {std::move(f), std::move(gfield)};
  }
};

struct BilinearOpConfig {
  enum class Kind { Cj, product, zero, custom } kind = Kind::Cj;
  ExponentParams params = ExponentParams::balanced(1.0);
  int j = 2;
  std::string quad_scheme = "auto";
  int panels_per_dyad = 2, nodes_per_panel = 5;
  std::function<Field(const Field&, const Field&)> custom;

  Field apply(const Field& f, const Field& g) const {
    switch (kind) {
      case Kind::Cj: {
        Quadrature q = build_quadrature_for(quad_scheme, j, params, f.grid, panels_per_dyad, nodes_per_panel);
        return apply_C_j(params, j, f, g, q).result;
      }
      case Kind::product: {
        Field out(f.grid, Rep::space);
        Field fs = to_space(f), gs = to_space(g);
        for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] = fs.samples[i] * gs.samples[i];
        return out;
      }
      case Kind::zero:
        return Field(f.grid, Rep::space);
      case Kind::custom:
        return custom(f, g);
    }
    return Field(f.grid, Rep::space);
  }
};

/// Empirical lower estimate of the LL^{p1} x L^{p2} -> L^p norm: max over
/// trials of |op(f,g)|_p / (|f|_{p1} |g|_{p2}).
inline RatioRecord estimate_bilinear_ratio(const BilinearOpConfig& op, const PairMix& mix, double p1,
                                           double p2, int trials, std::uint64_t seed) {
  const double p = 1.0 / (1.0 / p1 + 1.0 / p2);
  RatioRecord rec;
  rec.op_tag = op.kind == BilinearOpConfig::Kind::Cj ? "C_j" : "op";
  rec.j = op.j;
  rec.p1 = p1;
  rec.p2 = p2;
  rec.p = p;
  rec.lambda = op.params.lambda;
  rec.trials = trials;
  rec.seed = seed;
  for (int tr = 0; tr < trials; ++tr) {
    auto [f, g] = mix.draw(trial_seed(seed, std::uint64_t(tr)));
    const double den = norm_lp(f, p1) * norm_lp(g, p2);
    if (den < 1e-14) continue;  // degenerate trial, skipped
    Field h = op.apply(f, g);
    const double ratio = norm_lp(h, p) / den;
    if (ratio > rec.max_ratio) {
      rec.max_ratio = ratio;
      rec.argmax_trial = tr;
    }
  }
  return rec;
}

/// One RatioRecord per j over a common seed schedule (same unit draws reused
/// across j through PairMix). The first trial of each j also runs one
/// panel-refined quadrature level and records the relative Cauchy difference.
inline std::vector<RatioRecord> sweep_j(const ExponentParams& params, double p1, double p2, int j_min,
                                        int j_max, int trials, std::uint64_t seed, const GridSpec& grid,
                                        const std::string& scheme = "auto", int panels = 2, int nodes = 5) {
  if (!grid.cone_adequate(j_max))
    throw std::invalid_argument("sweep_j: grid not cone-adequate for j_max=" + std::to_string(j_max));
  std::vector<RatioRecord> out;
  for (int j = j_min; j <= j_max; ++j) {
    BilinearOpConfig op;
    op.kind = BilinearOpConfig::Kind::Cj;
    op.params = params;
    op.j = j;
    op.quad_scheme = scheme;
    op.panels_per_dyad = panels;
    op.nodes_per_panel = nodes;
    PairMix mix{grid, j, p1, p2};
    RatioRecord rec = estimate_bilinear_ratio(op, mix, p1, p2, trials, seed);
    {  // two-level Cauchy check on the first trial; the passed resolution is
       // the finer level (the one the ratio statistics use)
      auto [f, g] = mix.draw(trial_seed(seed, 0));
      Field fh = op.apply(f, g);
      BilinearOpConfig coarse_op = op;
      if (coarse_op.panels_per_dyad > 1)
        coarse_op.panels_per_dyad /= 2;
      else
        coarse_op.nodes_per_panel = std::max(2, coarse_op.nodes_per_panel - 1);
      Field coarse = coarse_op.apply(f, g);
      double num = 0, den = 0;
      for (std::size_t i = 0; i < fh.samples.size(); ++i) {
        num += std::norm(fh.samples[i] - coarse.samples[i]);
        den += std::norm(fh.samples[i]);
      }
      rec.cauchy_diff = den > 0 ? std::sqrt(num / den) : 0.0;
    }
    out.push_back(rec);
  }
  return out;
}

struct DecayFit {
  double slope = 0.0, intercept = 0.0, r_squared = 0.0;
};

/// Ordinary least squares of log2(max_ratio) against j.
inline DecayFit fit_decay(const std::vector<RatioRecord>& recs) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : recs)
    if (r.max_ratio > 0.0) pts.emplace_back(double(r.j), std::log2(r.max_ratio));
  if (pts.size() < 3) throw std::invalid_argument("fit_decay: need >= 3 records with positive ratios");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  const double m = double(pts.size());
  for (auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  DecayFit fit;
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / m;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / m;
  for (auto& [x, y] : pts) {
    const double e = y - (fit.slope * x + fit.intercept);
    ss_res += e * e;
    ss_tot += (y - ybar) * (y - ybar);
  }
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

// ---------------------------------------------------------------------------
// Pointwise-domination checks
// ---------------------------------------------------------------------------

struct DominationRow {
  double t = 0.0;
  double C = 0.0;  // max over test set and grid points of |op| / maximal
};

struct DominationTable {
  std::vector<DominationRow> rows;
  double sup_over_inf = 0.0;
};

/// For each t: C(t) = max over the test set and over grid points of
/// |op output| / maximal output, skipping points where the maximal function
/// is below 1e-14 |f|_inf.
inline DominationTable check_domination(const std::function<Field(const Field&, double)>& op_at,
                                        const std::function<MaxField(const Field&, double)>& maximal_at,
                                        const std::vector<double>& t_grid,
                                        const std::vector<Field>& test_set) {
  DominationTable table;
  double cmax = 0.0, cmin = 1e300;
  for (double t : t_grid) {
    double C = 0.0;
    for (const Field& f : test_set) {
      Field of = op_at(f, t);
      MaxField mf = maximal_at(f, t);
      double fmax = 0.0;
      for (const cplx& v : f.samples) fmax = std::max(fmax, std::abs(v));
      const double floor_v = std::max(1e-14 * fmax, 1e-300);
      for (std::size_t i = 0; i < of.samples.size(); ++i) {
        if (mf.samples[i] < floor_v) continue;
        C = std::max(C, std::abs(of.samples[i]) / mf.samples[i]);
      }
    }
    table.rows.push_back({t, C});
    if (C > 0.0) {
      cmax = std::max(cmax, C);
      cmin = std::min(cmin, C);
    }
  }
  table.sup_over_inf = (cmin < 1e300 && cmin > 0.0) ? cmax / cmin : 0.0;
  return table;
}

// ---------------------------------------------------------------------------
// Weighted lattice inequality (congruent-rectangle frequency tiling)
// ---------------------------------------------------------------------------

struct WeightedLatticeResult {
  double s = 0.0;
  double max_ratio = 0.0;  // max over trials of LHS / int |f|^2 m^s(w)
};

/// Lattice labeling for the congruent-rectangle frequency tiling P_nu.
inline std::vector<int> lattice_cell_labels(const GridSpec& g, int cell_w1, int cell_w2, int* count) {
  if (g.n % cell_w1 != 0 || g.n % cell_w2 != 0)
    throw std::invalid_argument("lattice_cell_labels: cell dims must divide n");
  const std::uint32_t n = g.n;
  const int c2 = int(n) / cell_w2;
  std::vector<int> label(g.size());
  for (std::uint32_t i1 = 0; i1 < n; ++i1)
    for (std::uint32_t i2 = 0; i2 < n; ++i2)
      label[std::size_t(i1) * n + i2] = int(i1) / cell_w1 * c2 + int(i2) / cell_w2;
  *count = (int(n) / cell_w1) * c2;
  return label;
}

/// int sum_nu |P_nu f|^2 w dx divided by int |f|^2 m^s(w) dx for one pair.
inline double weighted_lattice_ratio(const GridSpec& g, const std::vector<int>& label, int count,
                                     const Field& f, const std::vector<double>& w, double s) {
  Field sq = square_function_from_labels(f, label, count);
  const double cell = g.dx() * g.dx();
  double lhs = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) lhs += std::norm(sq.samples[i]) * w[i] * cell;
  Field wfield(g, Rep::space);
  for (std::size_t i = 0; i < w.size(); ++i) wfield.samples[i] = cplx(w[i], 0.0);
  MaxField msw = power_maximal(wfield, s, MaximalBase{MaximalBase::strong, 0, 0, 0});
  double rhs = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) rhs += std::norm(f.samples[i]) * msw.samples[i] * cell;
  return rhs > 0.0 ? lhs / rhs : 0.0;
}

/// P_nu: congruent w1 x w2 (lattice-cell) rectangles tiling the frequency
/// lattice. For random (f, w >= 0) pairs returns the max over trials of
///   int sum_nu |P_nu f|^2 w dx  /  int |f|^2 m^s(w) dx.
inline WeightedLatticeResult check_weighted_lattice(const GridSpec& g, int cell_w1, int cell_w2, double s,
                                                    int trials, std::uint64_t seed) {
  const std::uint32_t n = g.n;
  int count = 0;
  std::vector<int> label = lattice_cell_labels(g, cell_w1, cell_w2, &count);
  WeightedLatticeResult res;
  res.s = s;
  for (int tr = 0; tr < trials; ++tr) {
    std::mt19937_64 rng(trial_seed(seed, std::uint64_t(tr)));
    std::normal_distribution<double> nd;
    Field F(g, Rep::frequency);
    for (cplx& v : F.samples) v = cplx(nd(rng), nd(rng));
    detail::band_limit_project(F);
    Field f = dft_inverse(F);
    // weight: nonnegative random smooth-ish field (squared band-limited gaussian field)
    Field W(g, Rep::frequency);
    const int cap = std::max(2, int(n) / 16);
    for (std::uint32_t i1 = 0; i1 < n; ++i1)
      for (std::uint32_t i2 = 0; i2 < n; ++i2) {
        const int k1 = int(i1) - int(n) / 2, k2 = int(i2) - int(n) / 2;
        if (std::abs(k1) <= cap && std::abs(k2) <= cap) W.samples[std::size_t(i1) * n + i2] = cplx(nd(rng), nd(rng));
      }
    Field wf = dft_inverse(W);
    std::vector<double> w(g.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::norm(wf.samples[i]);
    // normalize |w|_2 = 1 (Riemann)
    {
      double s2 = 0;
      const double cell = g.dx() * g.dx();
      for (double v : w) s2 += v * v;
      const double nw = std::sqrt(cell * s2);
      for (double& v : w) v /= nw;
    }
    res.max_ratio = std::max(res.max_ratio, weighted_lattice_ratio(g, label, count, f, w, s));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Square-function growth tables
// ---------------------------------------------------------------------------

struct GrowthRow {
  double size = 0.0;       // ell or N
  double max_ratio = 0.0;  // max over the f family of |sqfn|_4 / |f|_4
};

/// Lattice labels for the trapezoid-slice family {S_n^j} at scale ell over
/// the n-range meeting the band limit.
inline std::vector<int> trapezoid_family_labels(const GridSpec& g, int ell, int n_lo, int n_hi,
                                                int* region_count) {
  const std::uint32_t n = g.n;
  std::vector<int> label(g.size(), -1);
  const int slices = 1 << ell;
  for (std::uint32_t i1 = 0; i1 < n; ++i1) {
    const double e1 = g.freq_of_index(i1);
    for (std::uint32_t i2 = 0; i2 < n; ++i2) {
      const double e2 = g.freq_of_index(i2);
      if (!(e2 >= 0.5 && e2 <= 2.0) || !(e1 > 0.0)) continue;
      const double ratio = e1 / e2;
      const int nn = int(std::floor(std::log2(ratio)));
      if (nn < n_lo || nn > n_hi) continue;
      const double rel = ratio / std::ldexp(1.0, nn);  // in [1,2)
      int jj = 1 + int(std::floor((rel - 1.0) * slices));
      jj = std::min(jj, slices);
      label[std::size_t(i1) * n + i2] = (nn - n_lo) * slices + (jj - 1);
    }
  }
  *region_count = (n_hi - n_lo + 1) * slices;
  return label;
}

inline std::vector<int> sector_family_labels(const GridSpec& g, double alpha, int N, int* region_count) {
  const std::uint32_t n = g.n;
  std::vector<int> label(g.size(), -1);
  for (std::uint32_t i1 = 0; i1 < n; ++i1) {
    const double e1 = g.freq_of_index(i1);
    for (std::uint32_t i2 = 0; i2 < n; ++i2) {
      const double e2 = g.freq_of_index(i2);
      if (e1 == 0.0 && e2 == 0.0) continue;
      const double ang = std::atan2(e2, e1);
      if (!(ang >= 0.0 && ang < alpha)) continue;
      int jj = 1 + int(std::floor(ang / (alpha / N)));
      jj = std::min(jj, N);
      label[std::size_t(i1) * n + i2] = jj - 1;
    }
  }
  *region_count = N;
  return label;
}

}  // namespace conelab

#endif
