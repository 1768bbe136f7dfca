// Acceptance suite: one binary, one pass/fail line per criterion.
// Usage: acceptance [N]   (N = 1..10; no argument runs all)
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "conelab/csvio.hpp"
#include "conelab/harness.hpp"
#include "support/oracles.hpp"

using namespace conelab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// --- 1. partition of unity -------------------------------------------------
Outcome criterion1() {
  const double dev = verify_partition(20, 100000);
  return {dev <= 1e-10, "max deviation " + format_double(dev) + " (tol 1e-10, J=20, 1e5 samples)"};
}

// --- 2. reconstruction identity ---------------------------------------------
Outcome criterion2() {
  struct Triple {
    double l, mu, nu, tol;
  };
  const Triple triples[] = {{1.0, 0.5, 0.5, 1e-8}, {2.0, 1.0, 1.0, 1e-8}, {0.5, 0.75, -0.25, 1e-6}};
  bool ok = true;
  std::string detail;
  for (const auto& tr : triples) {
    auto p = ExponentParams::make(tr.l, tr.mu, tr.nu, tr.nu + 0.5, tr.nu + 0.5);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double R = 0.1 + 0.9 * i / 19.0;
      for (int k = 0; k < 20; ++k) {
        const double m = R * (k / 19.0);
        Quadrature q = build_interval_quadrature(m, R, 16, 12, true, true, 40, p.nu, p.mu - 1.0);
        const double exact = std::pow(std::max(R * R - m * m, 0.0), p.lambda);
        worst = std::max(worst, std::abs(stein_weiss_reconstruct(R, m, p, q) - exact) / std::max(1.0, exact));
      }
    }
    ok = ok && worst <= tr.tol;
    detail += "(" + format_double(tr.l) + "," + format_double(tr.mu) + "," + format_double(tr.nu) +
              "): " + format_double(worst) + "  ";
  }
  return {ok, detail + "(tols 1e-8, 1e-8, 1e-6)"};
}

// --- 3. oracle equivalence ---------------------------------------------------
Outcome criterion3() {
  GridSpec g(32, 8.0);
  auto p = ExponentParams::make(1.0, 0.5, 0.5, 1.0, 1.0);
  const int j = 2;
  Quadrature coarse = build_t_quadrature_adapted(j, p, g, 2, 8);
  Quadrature fine = build_t_quadrature_adapted(j, p, g, 4, 8);
  bool ok = true;
  double worst_fine = 0.0, worst_ratio = 1e300;
  for (int trial = 0; trial < 5; ++trial) {
    Field f = oracle::random_bandlimited(g, 300 + trial);
    Field gg = oracle::random_bandlimited(g, 400 + trial);
    Field direct = apply_bilinear_direct(BilinearSymbolSpec::dyadic(p, j), f, gg);
    const double ec = oracle::rel_l2_diff(apply_C_j(p, j, f, gg, coarse).result, direct);
    const double ef = oracle::rel_l2_diff(apply_C_j(p, j, f, gg, fine).result, direct);
    worst_fine = std::max(worst_fine, ef);
    worst_ratio = std::min(worst_ratio, ec / ef);
    ok = ok && ef <= 5e-4 && ec / ef >= 3.0;
  }
  return {ok, "max fine-level rel L2 " + format_double(worst_fine) + " (tol 5e-4), min halving ratio " +
                  format_double(worst_ratio) + " (need >= 3)"};
}

// --- 4. Plancherel identities ------------------------------------------------
Outcome criterion4() {
  GridSpec g(64, 8.0);
  const auto ph = ExponentParams::make(1.5, 1.0, 0.5, 1.5, 0.5);  // (nu, b) = (0.5, 0.5)
  const auto pg = ExponentParams::make(1.5, 1.0, 0.5, 1.0, 1.0);  // (mu, a) = (1, 1)
  bool ok = true;
  double worst = 0.0;
  for (int j : {2, 3}) {
    const double tmax = std::sqrt(std::pow(2.0, 1 - j));
    for (int trial = 0; trial < 5; ++trial) {
      Field f = oracle::random_bandlimited(g, 500 + 10 * j + trial);
      Field F = dft_forward(f);
      // H: shared rule with cuts at the active support edges (the squared
      // symbol is piecewise smooth there; no grading needed)
      {
        std::vector<double> cuts;
        for (double rho : detail::active_ratio_values(F, 0.0, tmax * tmax)) cuts.push_back(std::sqrt(rho));
        Quadrature q = build_adapted_on_interval(tmax, ph, {}, 4, 10, 0, cuts);
        const double lhs = norm_lp(square_H(ph, j, f, q), 2.0);
        double acc = 0.0;
        for (uint32_t i1 = 0; i1 < g.n; ++i1) {
          const double e1 = g.freq_of_index(i1);
          for (uint32_t i2 = 0; i2 < g.n; ++i2) {
            const double e2 = g.freq_of_index(i2);
            const cplx v = F.at(i1, i2);
            if (v == cplx(0.0, 0.0)) continue;
            const double phi = (e2 > 0.5 && e2 < 2.0) ? psi_eval(e2) : 0.0;
            if (phi == 0.0) continue;
            double tint = 0.0;
            if (e1 == 0.0) {
              tint = std::pow(tmax, 2.0 * ph.b + 1.0) / (2.0 * ph.b + 1.0);
            } else {
              const double rho = std::abs(e1) / e2;
              const double T = tmax / rho;
              if (T > 1.0)
                tint = std::pow(rho, 2.0 * ph.b + 1.0) *
                       oracle::adaptive_simpson(
                           [&](double s) {
                             return std::pow(s, 2.0 * ph.b - 4.0 * ph.nu) *
                                    std::pow(std::max(s * s - 1.0, 0.0), 2.0 * ph.nu);
                           },
                           1.0, T, 1e-13);
            }
            acc += std::norm(v) * phi * phi * tint;
          }
        }
        const double rhs = std::sqrt(acc) / g.period;
        const double rel = std::abs(lhs - rhs) / rhs;
        worst = std::max(worst, rel);
        ok = ok && rel <= 1e-6;
      }
      // G: cuts at the active shell edge values
      {
        std::vector<double> cuts;
        for (double r :
             detail::active_ratio_values(F, 1.0 - std::pow(2.0, 1 - j), 1.0 - std::pow(2.0, -1 - j)))
          cuts.push_back(std::sqrt(1.0 - r));
        Quadrature q = build_adapted_on_interval(tmax, pg, {}, 4, 10, 0, cuts);
        const double lhs = norm_lp(square_G(pg, j, f, q), 2.0);
        double acc = 0.0;
        for (uint32_t i1 = 0; i1 < g.n; ++i1) {
          const double e1 = g.freq_of_index(i1);
          for (uint32_t i2 = 0; i2 < g.n; ++i2) {
            const double e2 = g.freq_of_index(i2);
            const cplx v = F.at(i1, i2);
            if (v == cplx(0.0, 0.0)) continue;
            const double phi = (e2 > 0.5 && e2 < 2.0) ? psi_eval(e2) : 0.0;
            if (phi == 0.0) continue;
            const double r = (e1 / e2) * (e1 / e2);
            const double shell = psi_eval(std::ldexp(1.0 - r, j));
            if (shell == 0.0) continue;
            const double A = 1.0 - r;
            const double hi = std::min(tmax, std::sqrt(A));
            const double tint = oracle::adaptive_simpson(
                [&](double t) { return pos_pow(A - t * t, 2.0 * pg.mu - 2.0) * std::pow(t, 2.0 * pg.a); },
                0.0, hi, 1e-14);
            acc += std::norm(v) * phi * phi * shell * shell * tint;
          }
        }
        const double rhs = std::sqrt(acc) / g.period;
        const double rel = std::abs(lhs - rhs) / rhs;
        worst = std::max(worst, rel);
        ok = ok && rel <= 1e-6;
      }
    }
  }
  return {ok, "max rel deviation " + format_double(worst) + " (tol 1e-6, j in {2,3}, 5 inputs)"};
}

// --- 5. domination uniformity ------------------------------------------------
Outcome criterion5() {
  GridSpec g(256, 32.0);
  const double L = g.period;
  // 20 mixed test functions for the T check
  std::vector<Field> tests;
  for (int tr = 0; tr < 20; ++tr) {
    std::mt19937_64 rng(trial_seed(77, std::uint64_t(tr)));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    TestFunctionSpec s;
    s.grid = g;
    s.family = tr % 5 == 4 ? TestFunctionSpec::Family::plane_wave_bump
                           : TestFunctionSpec::Family::gaussian_packet;
    s.center1 = u01(rng) * L;
    s.center2 = u01(rng) * L;
    s.freq2 = 0.6 + 1.2 * u01(rng);
    s.freq1 = (tr % 3 == 0) ? 0.0 : (2.0 * u01(rng) - 1.0) * s.freq2;
    s.width1 = std::min(L / 12.0, 0.5 + 4.0 * u01(rng));
    s.width2 = std::min(L / 12.0, 0.5 + 4.0 * u01(rng));
    s.orient = u01(rng) * 3.14159265358979323846;
    tests.push_back(gen_test_function(s, trial_seed(77, 1000 + std::uint64_t(tr))));
  }
  const auto pt = ExponentParams::from_mu_nu(1.0, 0.5);
  std::vector<double> t_grid;
  for (int i = 1; i <= 9; ++i) t_grid.push_back(0.1 * i);
  auto table = check_domination(
      [&](const Field& f, double t) { return apply_linear(LinearSymbolSpec::T(pt, t), f); },
      [&](const Field& f, double t) { return directional_maximal(f, t); }, t_grid, tests);
  bool ok = table.sup_over_inf > 0.0 && table.sup_over_inf <= 4.0;
  for (const auto& row : table.rows) ok = ok && row.C > 0.0 && std::isfinite(row.C);

  // B check away from the singularity: constants track 2^{(1-mu) j}
  const auto pb = ExponentParams::from_mu_nu(0.75, 0.25);
  double norm_lo = 1e300, norm_hi = 0.0;
  for (int j : {2, 3, 4}) {
    // shell-localized test set
    std::vector<Field> fset;
    const double r_lo = 1.0 - std::pow(2.0, 1 - j), r_hi = 1.0 - std::pow(2.0, -1 - j);
    for (int tr = 0; tr < 6; ++tr) {
      TestFunctionSpec s;
      s.grid = g;
      s.family = TestFunctionSpec::Family::rademacher_regions;
      const double lo = r_lo + 0.1 * (r_hi - r_lo), hi = r_hi - 0.1 * (r_hi - r_lo);
      const int slabs = 8;
      for (int sl = 0; sl < slabs; ++sl) {
        const double a = lo + (hi - lo) * sl / slabs, b = lo + (hi - lo) * (sl + 1) / slabs;
        s.regions.push_back(FrequencyRegion::custom_region(
            [a, b](double x1, double x2) {
              if (!(x2 > 0.55 && x2 < 1.9) || !(x1 > 0.0)) return false;
              const double r = (x1 / x2) * (x1 / x2);
              return r >= a && r < b;
            },
            "shell_slab"));
      }
      fset.push_back(gen_test_function(s, trial_seed(991 + j, 100 + std::uint64_t(tr))));
    }
    const double tcap = std::sqrt(std::pow(2.0, -2 - j));
    auto tb = check_domination(
        [&](const Field& f, double t) { return apply_linear(LinearSymbolSpec::B(pb, j, t), f); },
        [&](const Field& f, double) { return directional_maximal(f, 1.0); }, {0.5 * tcap, 0.95 * tcap},
        fset);
    double cj = 0.0;
    for (const auto& row : tb.rows) cj = std::max(cj, row.C);
    ok = ok && cj > 0.0;
    const double normalized = cj / std::pow(2.0, (1.0 - pb.mu) * j);
    norm_lo = std::min(norm_lo, normalized);
    norm_hi = std::max(norm_hi, normalized);
  }
  ok = ok && norm_hi / norm_lo <= 4.0;
  return {ok, "T: sup/inf C(t) = " + format_double(table.sup_over_inf) +
                  " (tol 4); B: normalized-constant spread " + format_double(norm_hi / norm_lo) +
                  " (tol 4)"};
}

// --- 6. dyadic decay ----------------------------------------------------------
Outcome criterion6() {
  // largest cone-adequate grid within this machine's budget: n=1024 (L=128),
  // j range reduced to 2..5 (the CLI records the same reduction in its
  // manifest when asked for j beyond adequacy)
  GridSpec g(1024, 128.0);
  auto p25 = ExponentParams::balanced(0.25);
  auto recs25 = sweep_j(p25, 2.0, 2.0, 2, 5, 30, 20260810, g, "budget", 1, 5);
  DecayFit fit25 = fit_decay(recs25);
  auto p1 = ExponentParams::balanced(1.0);
  auto recs1 = sweep_j(p1, 2.0, 2.0, 2, 5, 10, 20260810, g, "budget", 1, 5);
  DecayFit fit1 = fit_decay(recs1);
  std::string detail = "lambda=0.25: slope " + format_double(fit25.slope) + " r2 " +
                       format_double(fit25.r_squared) + "; lambda=1: slope " + format_double(fit1.slope);
  detail += "; cauchy(l=0.25):";
  for (auto& r : recs25) detail += " " + format_double(r.cauchy_diff);
  const bool ok = fit25.slope <= -0.05 && fit25.r_squared >= 0.6 && fit1.slope < fit25.slope;
  return {ok, detail + " (need slope <= -0.05, r2 >= 0.6, lambda=1 steeper)"};
}

// --- 7. square-function polylog growth ----------------------------------------
Outcome criterion7() {
  bool ok = true;
  std::string detail;
  {  // trapezoid family
    GridSpec g(1024, 128.0);
    std::vector<double> ratios;
    double prev = 0.0;
    for (int ell : {2, 3, 4, 5}) {
      int count = 0;
      auto label = trapezoid_family_labels(g, ell, -3, 0, &count);
      double best = 0.0;
      for (int tr = 0; tr < 3; ++tr) {
        std::mt19937_64 rng(trial_seed(33, std::uint64_t(tr)));
        std::normal_distribution<double> nd;
        Field F(g, Rep::frequency);
        for (uint32_t i = 0; i < g.size(); ++i)
          if (label[i] >= 0) F.samples[i] = cplx(nd(rng), nd(rng));
        Field f = dft_inverse(F);
        Field sq = square_function_from_labels(f, label, count);
        best = std::max(best, norm_lp(sq, 4.0) / norm_lp(f, 4.0));
      }
      if (prev > 0.0) {
        ok = ok && best / prev <= 1.5;
        ratios.push_back(best / prev);
      }
      prev = best;
    }
    detail += "trapezoid successive ratios:";
    for (double r : ratios) detail += " " + format_double(r);
  }
  {  // sector family at two angles
    GridSpec g(2048, 256.0);
    const double pi = 3.14159265358979323846;
    std::vector<double> first_curve;
    for (double alpha : {pi / 8.0, pi / 16.0}) {
      double prev = 0.0;
      detail += alpha > pi / 12.0 ? "; sector(pi/8):" : "; sector(pi/16):";
      std::vector<double> curve;
      for (int N : {8, 16, 32, 64}) {
        int count = 0;
        auto label = sector_family_labels(g, alpha, N, &count);
        double best = 0.0;
        for (int tr = 0; tr < 2; ++tr) {
          std::mt19937_64 rng(trial_seed(44 + N, std::uint64_t(tr)));
          std::normal_distribution<double> nd;
          Field F(g, Rep::frequency);
          for (uint32_t i1 = 0; i1 < g.n; ++i1) {
            const double e1 = g.freq_of_index(i1);
            for (uint32_t i2 = 0; i2 < g.n; ++i2) {
              const std::size_t idx = std::size_t(i1) * g.n + i2;
              if (label[idx] < 0) continue;
              const double e2 = g.freq_of_index(i2);
              const double rad = std::hypot(e1, e2);
              if (rad >= 1.0 && rad < 2.0) F.samples[idx] = cplx(nd(rng), nd(rng));
            }
          }
          Field f = dft_inverse(F);
          Field sq = square_function_from_labels(f, label, count);
          best = std::max(best, norm_lp(sq, 4.0) / norm_lp(f, 4.0));
        }
        if (prev > 0.0) ok = ok && best / prev <= 1.5;
        prev = best;
        curve.push_back(best);
        detail += " " + format_double(best);
      }
      if (first_curve.empty()) {
        first_curve = curve;
      } else {
        for (std::size_t i = 0; i < curve.size(); ++i) {
          const double rel = std::abs(curve[i] - first_curve[i]) / first_curve[i];
          ok = ok && rel <= 0.25;
        }
      }
    }
  }
  return {ok, detail + " (successive <= 1.5, angles agree within 25%)"};
}

// --- 8. weighted lattice inequality --------------------------------------------
Outcome criterion8() {
  GridSpec g(64, 8.0);
  bool ok = true;
  std::string detail;
  double r11 = 0.0, r15 = 0.0;
  for (double s : {1.1, 1.5}) {
    auto batch1 = check_weighted_lattice(g, 8, 4, s, 100, 101);
    auto batch2 = check_weighted_lattice(g, 8, 4, s, 100, 90210);
    const double spread = std::abs(batch1.max_ratio - batch2.max_ratio) /
                          std::max(batch1.max_ratio, batch2.max_ratio);
    ok = ok && spread <= 0.2;
    if (s == 1.1)
      r11 = std::max(batch1.max_ratio, batch2.max_ratio);
    else
      r15 = std::max(batch1.max_ratio, batch2.max_ratio);
    detail += "s=" + format_double(s) + ": " + format_double(batch1.max_ratio) + "/" +
              format_double(batch2.max_ratio) + "  ";
  }
  ok = ok && r11 >= 0.8 * r15;
  return {ok, detail + "(batches within 20%, ratio(1.1) >= 0.8 ratio(1.5))"};
}

// --- 9. tiling and overlap ------------------------------------------------------
Outcome criterion9() {
  bool ok = true;
  // exact lattice tiling of the cone strip by the S_n^j family
  {
    GridSpec g(256, 32.0);
    const int ell = 3;
    for (uint32_t i1 = 0; i1 < g.n && ok; ++i1) {
      const double e1 = g.freq_of_index(i1);
      for (uint32_t i2 = 0; i2 < g.n; ++i2) {
        const double e2 = g.freq_of_index(i2);
        int hits = 0;
        for (int n = -11; n <= 4; ++n)
          for (int j = 1; j <= (1 << ell); ++j)
            if (contains(FrequencyRegion::trapezoid_slice(n, j, ell), e1, e2)) ++hits;
        const bool in_strip = e1 > 0.0 && e2 >= 0.5 && e2 <= 2.0 && e1 / e2 >= std::ldexp(1.0, -11);
        if (hits != (in_strip ? 1 : 0)) {
          ok = false;
          break;
        }
      }
    }
  }
  std::string detail = ok ? "tiling exact; " : "tiling broken; ";
  // overlap constants at the stated probe density (spacing 2^-ell/4, lattice
  // offset from the dyadic boundary lines)
  std::vector<int> consts;
  for (int ell : {3, 4, 5}) {
    const double L = std::ldexp(1.0, ell) * 4.0 * (257.0 / 256.0);
    uint32_t n = 16;
    while (n / (2.0 * L) < 5.0) n *= 2;
    GridSpec probe(n, L);
    int worst = 0;
    for (int j = 1; j <= (1 << ell); ++j)
      for (int k = 1; k <= (1 << ell); ++k) {
        std::vector<FrequencyRegion> A, B{FrequencyRegion::trapezoid_slice(-2, k, ell)};
        for (int a = 1; a <= 3 * (1 << ell) / 2; ++a)
          A.push_back(FrequencyRegion::trapezoid_cell(0, j, ell, a));
        worst = std::max(worst, minkowski_overlap_bound(A, B, probe, std::ldexp(1.0, -ell)));
      }
    consts.push_back(worst);
  }
  detail += "S-family overlap constants at ell=3,4,5: " + std::to_string(consts[0]) + "," +
            std::to_string(consts[1]) + "," + std::to_string(consts[2]);
  ok = ok && consts[0] == consts[1] && consts[1] == consts[2];
  return {ok, detail + " (need equal)"};
}

// --- 10. determinism --------------------------------------------------------------
std::string body_of(const std::string& path) {
  std::ifstream is(path);
  std::string line, body;
  bool first = true;
  while (std::getline(is, line)) {
    if (first) {
      first = false;
      continue;  // manifest line carries the timestamp
    }
    body += line;
    body += '\n';
  }
  return body;
}

Outcome criterion10() {
#ifndef CONELAB_CLI_PATH
  return {false, "CLI path not configured"};
#else
  const std::string cli = CONELAB_CLI_PATH;
  // a pair of small input fields for apply/maximal
  GridSpec g(32, 8.0);
  write_cmf1(oracle::random_bandlimited(g, 1), "acc10_f.cmf");
  write_cmf1(oracle::random_bandlimited(g, 2), "acc10_g.cmf");
  struct Cmd {
    std::string name, args;
  };
  const std::vector<Cmd> cmds = {
      {"partition-check", "partition-check --J 12 --samples 2000 --out OUT"},
      {"stein-weiss", "stein-weiss --lambda 1 --mu 0.5 --nu 0.5 --grid-Rm 5 --out OUT"},
      {"apply", "apply --spec dyadic --j 2 --lambda 1 --mu 0.5 --nu 0.5 --f acc10_f.cmf --g acc10_g.cmf "
                "--quad-panels 2 --quad-nodes 6 --scheme adapted --direct --out OUTF --report OUT"},
      {"norm-sweep", "norm-sweep --lambda 0.25 --p1 2 --p2 2 --jmin 2 --jmax 2 --trials 2 --seed 5 "
                     "--n 128 --L 16 --scheme budget --panels 1 --nodes 4 --out OUT"},
      {"domination", "domination --op T --nu 0.5 --t-grid 0.3,0.6 --trials 2 --seed 3 --n 64 --L 8 --out OUT"},
      {"sqfn", "sqfn --family trapezoid --sizes 2,3 --trials 1 --seed 4 --n 128 --L 16 --out OUT"},
      {"regions", "regions --mode trapezoid --ell 2 --n 64 --L 8 --out OUT"},
      {"maximal", "maximal --kind directional --t 0.5 --f acc10_f.cmf --out OUT"}};
  auto file_bytes = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  bool ok = true;
  std::string detail;
  for (const auto& c : cmds) {
    std::string args1 = c.args, args2 = c.args;
    const std::string o1 = "acc10_" + c.name + "_1.csv", o2 = "acc10_" + c.name + "_2.csv";
    const std::string f1 = "acc10_" + c.name + "_1.cmf", f2 = "acc10_" + c.name + "_2.cmf";
    if (args1.find("OUTF") != std::string::npos) {
      args1.replace(args1.find("OUTF"), 4, f1);
      args2.replace(args2.find("OUTF"), 4, f2);
    }
    args1.replace(args1.find("OUT"), 3, c.name == "maximal" ? f1 : o1);
    args2.replace(args2.find("OUT"), 3, c.name == "maximal" ? f2 : o2);
    const int rc1 = std::system((cli + " " + args1 + " > /dev/null 2>&1").c_str());
    const int rc2 = std::system((cli + " " + args2 + " > /dev/null 2>&1").c_str());
    bool same = rc1 == rc2;
    if (c.name == "maximal" || c.name == "apply") {
      same = same && file_bytes(f1) == file_bytes(f2) && !file_bytes(f1).empty();
    }
    if (c.name != "maximal") same = same && body_of(o1) == body_of(o2) && !body_of(o1).empty();
    if (!same) {
      ok = false;
      detail += c.name + " differs; ";
    }
    for (const std::string& junk : {o1, o2, f1, f2, f1 + ".direct", f2 + ".direct"})
      std::remove(junk.c_str());
  }
  for (const char* f : {"acc10_f.cmf", "acc10_g.cmf"}) std::remove(f);
  return {ok, ok ? "8 commands rerun byte-identically (manifest line excluded)" : detail};
#endif
}

}  // namespace

int main(int argc, char** argv) {
  using Fn = Outcome (*)();
  const Fn fns[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                    criterion6, criterion7, criterion8, criterion9, criterion10};
  const char* names[] = {"partition of unity",
                         "reconstruction identity",
                         "oracle equivalence",
                         "Plancherel identities",
                         "domination uniformity",
                         "dyadic decay",
                         "square-function polylog growth",
                         "weighted lattice inequality",
                         "tiling and overlap",
                         "determinism"};
  int lo = 1, hi = 10;
  if (argc > 1) {
    lo = hi = std::atoi(argv[1]);
    if (lo < 1 || lo > 10) {
      std::fprintf(stderr, "usage: acceptance [1..10]\n");
      return 2;
    }
  }
  int failures = 0;
  for (int i = lo; i <= hi; ++i) {
    Outcome out;
    try {
      out = fns[i - 1]();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2d [%s] %s: %s\n", i, out.pass ? "PASS" : "FAIL", names[i - 1],
                out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
