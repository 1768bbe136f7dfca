// conelab: numerical laboratory for the bilinear cone multiplier on the
// periodic plane. Subcommands expose the partition check, the reconstruction
// identity, operator application (factorized vs direct), norm sweeps,
// maximal-function domination tables, square-function growth tables, and
// frequency-region rasterization. Tabular output is CSV with a one-line
// manifest comment; fields use the CMF1 binary format.
#include <CLI11.hpp>

#include "conelab/csvio.hpp"
#include "conelab/harness.hpp"

using namespace conelab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitNumericalFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string grid_desc(const GridSpec& g) {
  return "n=" + std::to_string(g.n) + ",L=" + format_double(g.period);
}

// mu/nu are NaN when not supplied; explicit values are validated strictly.
ExponentParams resolve_params(double lambda, double mu, double nu) {
  const bool have_mu = !std::isnan(mu), have_nu = !std::isnan(nu);
  if (have_mu && !(mu > 0.0)) throw CLI::ValidationError("--mu must be > 0");
  if (have_nu && !(nu > -1.0)) throw CLI::ValidationError("--nu must be > -1");
  if (!have_mu && !have_nu) return ExponentParams::balanced(lambda);
  if (!have_mu) mu = lambda - nu;
  if (!have_nu) nu = lambda - mu;
  return ExponentParams::make(lambda, mu, nu, nu + 0.5, nu + 0.5);
}

int cmd_partition_check(int J, long samples, const std::string& out) {
  CsvWriter csv(out, "partition-check", "J=" + std::to_string(J) + ",samples=" + std::to_string(samples), 0,
                "-");
  csv.header("t,deviation");
  const double b = 1.0 - std::pow(2.0, -J - 1);
  double worst = 0.0;
  for (long i = 0; i < samples; ++i) {
    const double t = b * (double(i) / double(samples));
    double s = psi1_eval(t);
    for (int j = 2; j <= J; ++j) {
      const double arg = std::ldexp(1.0 - t, j);
      if (arg > 0.5 && arg < 2.0) s += psi_eval(arg);
    }
    const double dev = std::abs(s - 1.0);
    worst = std::max(worst, dev);
    if (i % std::max<long>(1, samples / 2000) == 0) csv.row(t, dev);
  }
  csv.row(std::string("# max_deviation"), worst);
  return worst <= 1e-10 ? kExitPass : kExitNumericalFail;
}

int cmd_stein_weiss(double lambda, double mu, double nu, int grid_rm, double tol, const std::string& out) {
  auto p = resolve_params(lambda, mu, nu);
  CsvWriter csv(out, "stein-weiss",
                "lambda=" + format_double(p.lambda) + ",mu=" + format_double(p.mu) + ",nu=" +
                    format_double(p.nu) + ",grid=" + std::to_string(grid_rm),
                0, "-");
  csv.header("R,m,reconstructed,exact,rel_err");
  double worst = 0.0;
  for (int i = 0; i < grid_rm; ++i) {
    const double R = 0.1 + 0.9 * (grid_rm == 1 ? 0.0 : double(i) / (grid_rm - 1));
    for (int k = 0; k < grid_rm; ++k) {
      const double m = R * (grid_rm == 1 ? 0.0 : double(k) / (grid_rm - 1));
      const double exact = std::pow(std::max(R * R - m * m, 0.0), p.lambda);
      Quadrature q = build_interval_quadrature(m, R, 16, 12, true, true, 40, p.nu, p.mu - 1.0);
      const double rec = stein_weiss_reconstruct(R, m, p, q);
      const double rel = std::abs(rec - exact) / std::max(1.0, exact);
      worst = std::max(worst, rel);
      csv.row(R, m, rec, exact, rel);
    }
  }
  csv.row(std::string("# max_rel_err"), worst);
  return worst <= tol ? kExitPass : kExitNumericalFail;
}

int cmd_apply(const std::string& spec_kind, int j, double lambda, double mu, double nu,
              const std::string& fpath, const std::string& gpath, int panels, int nodes,
              const std::string& scheme, bool direct, const std::string& outpath,
              const std::string& report) {
  auto p = resolve_params(lambda, mu, nu);
  Field f = read_cmf1(fpath), g = read_cmf1(gpath);
  if (!(f.grid == g.grid)) throw std::runtime_error("apply: input grids differ");
  BilinearApplyReport rep;
  if (spec_kind == "full") {
    rep = apply_C(p, f, g, j, ApplyOptions{scheme, panels, nodes});
  } else if (spec_kind == "dyadic" || spec_kind == "j1") {
    const Quadrature q = build_quadrature_for(scheme, j, p, f.grid, panels, nodes);
    rep = apply_C_j(p, j, f, g, q);
  } else {
    throw CLI::ValidationError("--spec must be full, dyadic, or j1");
  }
  write_cmf1(rep.result, outpath);
  double rel_diff = -1.0;
  if (direct) {
    BilinearSymbolSpec bs = spec_kind == "j1" ? BilinearSymbolSpec::j1(p)
                            : spec_kind == "full"
                                ? BilinearSymbolSpec::full(p)
                                : BilinearSymbolSpec::dyadic(p, j);
    Field d = apply_bilinear_direct(bs, f, g);
    write_cmf1(d, outpath + ".direct");
    double num = 0, den = 0;
    for (std::size_t i = 0; i < d.samples.size(); ++i) {
      num += std::norm(rep.result.samples[i] - d.samples[i]);
      den += std::norm(d.samples[i]);
    }
    rel_diff = den > 0 ? std::sqrt(num / den) : 0.0;
  }
  CsvWriter csv(report, "apply",
                "spec=" + spec_kind + ",j=" + std::to_string(j) + ",lambda=" + format_double(p.lambda) +
                    ",panels=" + std::to_string(panels) + ",nodes=" + std::to_string(nodes) + ",scheme=" +
                    scheme,
                0, grid_desc(f.grid));
  csv.header("nodes_used,excised_mass,rel_l2_vs_direct");
  csv.row(rep.quadrature_nodes_used, rep.excised_symbol_mass, rel_diff);
  return kExitPass;
}

int cmd_norm_sweep(double lambda, double mu, double nu, double p1, double p2, int jmin, int jmax,
                   int trials, std::uint64_t seed, std::uint32_t n, double L, const std::string& scheme,
                   int panels, int nodes, const std::string& out) {
  auto p = resolve_params(lambda, mu, nu);
  GridSpec g(n, L);
  std::string note;
  if (!g.cone_adequate(jmax)) {
    while (jmax > jmin && !g.cone_adequate(jmax)) --jmax;
    note = ",j_range_reduced_to=" + std::to_string(jmin) + ".." + std::to_string(jmax);
  }
  CsvWriter csv(out, "norm-sweep",
                "lambda=" + format_double(p.lambda) + ",mu=" + format_double(p.mu) + ",nu=" +
                    format_double(p.nu) + ",p1=" + format_double(p1) + ",p2=" + format_double(p2) +
                    ",trials=" + std::to_string(trials) + ",scheme=" + scheme + note,
                seed, grid_desc(g));
  csv.header("j,max_ratio,trials,argmax_trial,cauchy_diff");
  auto recs = sweep_j(p, p1, p2, jmin, jmax, trials, seed, g, scheme, panels, nodes);
  for (const auto& r : recs) csv.row(r.j, r.max_ratio, r.trials, r.argmax_trial, r.cauchy_diff);
  const DecayFit fit = fit_decay(recs);
  csv.row(std::string("# fit_slope"), fit.slope, fit.intercept, fit.r_squared);
  return kExitPass;
}

int cmd_domination(const std::string& op, double nu, double mu, int j, const std::string& t_grid_s,
                   int trials, std::uint64_t seed, std::uint32_t n, double L, const std::string& out) {
  GridSpec g(n, L);
  std::vector<double> t_grid;
  {
    std::stringstream ss(t_grid_s);
    std::string tok;
    while (std::getline(ss, tok, ',')) t_grid.push_back(std::stod(tok));
  }
  // mixed test set: gaussian packets in the phi band + plane-wave bumps
  std::vector<Field> tests;
  for (int tr = 0; tr < trials; ++tr) {
    std::mt19937_64 rng(trial_seed(seed, std::uint64_t(tr)));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    TestFunctionSpec s;
    s.grid = g;
    s.family = tr % 5 == 4 ? TestFunctionSpec::Family::plane_wave_bump
                           : TestFunctionSpec::Family::gaussian_packet;
    s.center1 = u01(rng) * L;
    s.center2 = u01(rng) * L;
    s.freq2 = 0.6 + 1.2 * u01(rng);
    s.freq1 = (2.0 * u01(rng) - 1.0) * s.freq2;
    s.width1 = std::min(L / 12.0, 0.5 + 4.0 * u01(rng));
    s.width2 = std::min(L / 12.0, 0.5 + 4.0 * u01(rng));
    s.orient = u01(rng) * 3.14159265358979323846;
    tests.push_back(gen_test_function(s, trial_seed(seed, 1000 + std::uint64_t(tr))));
  }
  DominationTable table;
  if (op == "T") {
    const auto p = ExponentParams::from_mu_nu(1.0, nu);
    table = check_domination(
        [&](const Field& f, double t) { return apply_linear(LinearSymbolSpec::T(p, t), f); },
        [&](const Field& f, double t) { return directional_maximal(f, t); }, t_grid, tests);
  } else if (op == "B") {
    const auto p = ExponentParams::from_mu_nu(mu, 0.0);
    table = check_domination(
        [&](const Field& f, double t) { return apply_linear(LinearSymbolSpec::B(p, j, t), f); },
        [&](const Field& f, double) { return directional_maximal(f, 1.0); }, t_grid, tests);
  } else {
    throw CLI::ValidationError("--op must be T or B");
  }
  CsvWriter csv(out, "domination",
                "op=" + op + ",nu=" + format_double(nu) + ",mu=" + format_double(mu) + ",j=" +
                    std::to_string(j) + ",trials=" + std::to_string(trials),
                seed, grid_desc(g));
  csv.header("t,C");
  for (const auto& r : table.rows) csv.row(r.t, r.C);
  csv.row(std::string("# sup_over_inf"), table.sup_over_inf);
  return kExitPass;
}

int cmd_sqfn(const std::string& family, const std::string& sizes_s, double pnorm, int trials,
             std::uint64_t seed, std::uint32_t n, double L, double alpha, const std::string& out) {
  GridSpec g(n, L);
  std::vector<int> sizes;
  {
    std::stringstream ss(sizes_s);
    std::string tok;
    while (std::getline(ss, tok, ',')) sizes.push_back(std::stoi(tok));
  }
  CsvWriter csv(out, "sqfn",
                "family=" + family + ",p=" + format_double(pnorm) + ",alpha=" + format_double(alpha) +
                    ",trials=" + std::to_string(trials),
                seed, grid_desc(g));
  csv.header("size,max_ratio");
  std::vector<GrowthRow> rows;
  for (int size : sizes) {
    int count = 0;
    std::vector<int> label;
    if (family == "trapezoid")
      label = trapezoid_family_labels(g, size, -3, 0, &count);
    else if (family == "sector")
      label = sector_family_labels(g, alpha, size, &count);
    else
      throw CLI::ValidationError("--family must be trapezoid or sector");
    double best = 0.0;
    for (int tr = 0; tr < trials; ++tr) {
      std::mt19937_64 rng(trial_seed(seed, std::uint64_t(tr)));
      std::normal_distribution<double> nd;
      Field F(g, Rep::frequency);
      for (std::uint32_t i = 0; i < g.size(); ++i)
        if (label[i] >= 0) F.samples[i] = cplx(nd(rng), nd(rng));
      Field f = dft_inverse(F);
      Field sq = square_function_from_labels(f, label, count);
      const double den = norm_lp(f, pnorm);
      if (den > 1e-14) best = std::max(best, norm_lp(sq, pnorm) / den);
    }
    rows.push_back({double(size), best});
    csv.row(size, best);
  }
  for (std::size_t i = 1; i < rows.size(); ++i)
    csv.row(std::string("# successive_ratio"), rows[i].size, rows[i].max_ratio / rows[i - 1].max_ratio);
  return kExitPass;
}

int cmd_regions(const std::string& mode, int ell, double alpha, int N, std::uint32_t n, double L,
                const std::string& out) {
  GridSpec g(n, L);
  CsvWriter csv(out, "regions",
                "mode=" + mode + ",ell=" + std::to_string(ell) + ",alpha=" + format_double(alpha) + ",N=" +
                    std::to_string(N),
                0, grid_desc(g));
  csv.header("k1,k2,xi1,xi2,region_id");
  int count = 0;
  std::vector<int> label;
  if (mode == "trapezoid")
    label = trapezoid_family_labels(g, ell, -3, 1, &count);
  else if (mode == "sector")
    label = sector_family_labels(g, alpha, N, &count);
  else
    throw CLI::ValidationError("--mode must be trapezoid or sector");
  for (std::uint32_t i1 = 0; i1 < n; ++i1)
    for (std::uint32_t i2 = 0; i2 < n; ++i2) {
      const int lab = label[std::size_t(i1) * n + i2];
      if (lab < 0) continue;
      csv.row(int(i1) - int(n) / 2, int(i2) - int(n) / 2, g.freq_of_index(i1), g.freq_of_index(i2), lab);
    }
  return kExitPass;
}

int cmd_maximal(const std::string& kind, double t, double a, double b, int N, double alpha,
                const std::string& fpath, const std::string& outpath) {
  Field f = to_space(read_cmf1(fpath));
  MaxField m;
  if (kind == "strong")
    m = strong_maximal(f);
  else if (kind == "directional")
    m = directional_maximal(f, t);
  else if (kind == "kakeya")
    m = kakeya(f, a, b, std::max(N, int(std::ceil(b))));
  else if (kind == "sector")
    m = sector_maximal(f, alpha, N, nullptr);
  else
    throw CLI::ValidationError("--kind must be strong, directional, kakeya, or sector");
  Field out(f.grid, Rep::space);
  for (std::size_t i = 0; i < m.samples.size(); ++i) out.samples[i] = cplx(m.samples[i], 0.0);
  write_cmf1(out, outpath);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conelab: bilinear cone multiplier laboratory"};
  app.require_subcommand(1);
  std::string config_path;
  app.set_config("--config", "", "key = value config file");

  // partition-check
  auto* pc = app.add_subcommand("partition-check", "verify the dyadic partition of unity");
  int pc_J = 20;
  long pc_samples = 100000;
  std::string pc_out = "partition.csv";
  pc->add_option("--J", pc_J, "truncation level (>= 2)")->check(CLI::Range(2, 60));
  pc->add_option("--samples", pc_samples, "sample count (>= 1000)")->check(CLI::Range(1000L, 100000000L));
  pc->add_option("--out", pc_out, "output CSV");

  // stein-weiss
  auto* sw = app.add_subcommand("stein-weiss", "reconstruction identity table");
  double sw_lambda = 1.0, sw_mu = std::nan(""), sw_nu = std::nan(""), sw_tol = 1e-8;
  int sw_grid = 20;
  std::string sw_out = "stein_weiss.csv";
  sw->add_option("--lambda", sw_lambda)->required();
  sw->add_option("--mu", sw_mu);
  sw->add_option("--nu", sw_nu);
  sw->add_option("--grid-Rm", sw_grid);
  sw->add_option("--tol", sw_tol);
  sw->add_option("--out", sw_out);

  // apply
  auto* ap = app.add_subcommand("apply", "apply an operator to CMF1 fields");
  std::string ap_spec = "dyadic", ap_f, ap_g, ap_out = "result.cmf", ap_report = "apply_report.csv",
              ap_scheme = "auto";
  int ap_j = 2, ap_panels = 4, ap_nodes = 8;
  double ap_lambda = 1.0, ap_mu = std::nan(""), ap_nu = std::nan("");
  bool ap_direct = false;
  ap->add_option("--spec", ap_spec, "full | dyadic | j1");
  ap->add_option("--j", ap_j, "dyadic level (j_max for full)");
  ap->add_option("--lambda", ap_lambda)->required();
  ap->add_option("--mu", ap_mu);
  ap->add_option("--nu", ap_nu);
  ap->add_option("--f", ap_f, "first input field (CMF1)")->required();
  ap->add_option("--g", ap_g, "second input field (CMF1)")->required();
  ap->add_option("--quad-panels", ap_panels);
  ap->add_option("--quad-nodes", ap_nodes);
  ap->add_option("--scheme", ap_scheme, "auto | adapted | budget | dyadic");
  ap->add_flag("--direct", ap_direct, "also run the direct oracle (n <= 64)");
  ap->add_option("--out", ap_out);
  ap->add_option("--report", ap_report);

  // norm-sweep
  auto* ns = app.add_subcommand("norm-sweep", "empirical norm ratios across dyadic levels");
  double ns_lambda = 0.25, ns_mu = std::nan(""), ns_nu = std::nan(""), ns_p1 = 2.0, ns_p2 = 2.0, ns_L = 128.0;
  int ns_jmin = 2, ns_jmax = 5, ns_trials = 30, ns_panels = 1, ns_nodes = 5;
  std::uint64_t ns_seed = 1;
  std::uint32_t ns_n = 1024;
  std::string ns_out = "norm_sweep.csv", ns_scheme = "budget";
  ns->add_option("--lambda", ns_lambda)->required();
  ns->add_option("--mu", ns_mu);
  ns->add_option("--nu", ns_nu);
  ns->add_option("--p1", ns_p1);
  ns->add_option("--p2", ns_p2);
  ns->add_option("--jmin", ns_jmin);
  ns->add_option("--jmax", ns_jmax);
  ns->add_option("--trials", ns_trials);
  ns->add_option("--seed", ns_seed);
  ns->add_option("--n", ns_n);
  ns->add_option("--L", ns_L);
  ns->add_option("--scheme", ns_scheme);
  ns->add_option("--panels", ns_panels);
  ns->add_option("--nodes", ns_nodes);
  ns->add_option("--out", ns_out);

  // domination
  auto* dm = app.add_subcommand("domination", "maximal-function domination constants");
  std::string dm_op = "T", dm_tgrid = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9", dm_out = "domination.csv";
  double dm_nu = 0.5, dm_mu = 0.75, dm_L = 32.0;
  int dm_j = 2, dm_trials = 20;
  std::uint64_t dm_seed = 1;
  std::uint32_t dm_n = 256;
  dm->add_option("--op", dm_op, "T | B");
  dm->add_option("--nu", dm_nu);
  dm->add_option("--mu", dm_mu);
  dm->add_option("--j", dm_j);
  dm->add_option("--t-grid", dm_tgrid);
  dm->add_option("--trials", dm_trials);
  dm->add_option("--seed", dm_seed);
  dm->add_option("--n", dm_n);
  dm->add_option("--L", dm_L);
  dm->add_option("--out", dm_out);

  // sqfn
  auto* sq = app.add_subcommand("sqfn", "directional square-function growth");
  std::string sq_family = "trapezoid", sq_sizes = "2,3,4,5", sq_out = "sqfn.csv";
  double sq_p = 4.0, sq_alpha = 3.14159265358979323846 / 8.0, sq_L = 128.0;
  int sq_trials = 3;
  std::uint64_t sq_seed = 1;
  std::uint32_t sq_n = 1024;
  sq->add_option("--family", sq_family, "trapezoid | sector");
  sq->add_option("--sizes", sq_sizes, "comma list of ell values or N values");
  sq->add_option("--p", sq_p);
  sq->add_option("--alpha", sq_alpha);
  sq->add_option("--trials", sq_trials);
  sq->add_option("--seed", sq_seed);
  sq->add_option("--n", sq_n);
  sq->add_option("--L", sq_L);
  sq->add_option("--out", sq_out);

  // regions
  auto* rg = app.add_subcommand("regions", "rasterize region membership of the frequency lattice");
  std::string rg_mode = "trapezoid", rg_out = "regions.csv";
  int rg_ell = 3, rg_N = 16;
  double rg_alpha = 3.14159265358979323846 / 8.0, rg_L = 16.0;
  std::uint32_t rg_n = 128;
  rg->add_option("--mode", rg_mode, "trapezoid | sector");
  rg->add_option("--ell", rg_ell);
  rg->add_option("--alpha", rg_alpha);
  rg->add_option("--N", rg_N);
  rg->add_option("--n", rg_n);
  rg->add_option("--L", rg_L);
  rg->add_option("--out", rg_out);

  // maximal
  auto* mx = app.add_subcommand("maximal", "apply a maximal operator to a CMF1 field");
  std::string mx_kind = "strong", mx_f, mx_out = "maximal.cmf";
  double mx_t = 0.0, mx_a = 1.0, mx_b = 8.0, mx_alpha = 3.14159265358979323846 / 8.0;
  int mx_N = 8;
  mx->add_option("--kind", mx_kind, "strong | directional | kakeya | sector");
  mx->add_option("--t", mx_t);
  mx->add_option("--a", mx_a);
  mx->add_option("--b", mx_b);
  mx->add_option("--N", mx_N);
  mx->add_option("--alpha", mx_alpha);
  mx->add_option("--f", mx_f)->required();
  mx->add_option("--out", mx_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (pc->parsed()) return cmd_partition_check(pc_J, pc_samples, pc_out);
    if (sw->parsed()) return cmd_stein_weiss(sw_lambda, sw_mu, sw_nu, sw_grid, sw_tol, sw_out);
    if (ap->parsed())
      return cmd_apply(ap_spec, ap_j, ap_lambda, ap_mu, ap_nu, ap_f, ap_g, ap_panels, ap_nodes, ap_scheme,
                       ap_direct, ap_out, ap_report);
    if (ns->parsed())
      return cmd_norm_sweep(ns_lambda, ns_mu, ns_nu, ns_p1, ns_p2, ns_jmin, ns_jmax, ns_trials, ns_seed,
                            ns_n, ns_L, ns_scheme, ns_panels, ns_nodes, ns_out);
    if (dm->parsed())
      return cmd_domination(dm_op, dm_nu, dm_mu, dm_j, dm_tgrid, dm_trials, dm_seed, dm_n, dm_L, dm_out);
    if (sq->parsed())
      return cmd_sqfn(sq_family, sq_sizes, sq_p, sq_trials, sq_seed, sq_n, sq_L, sq_alpha, sq_out);
    if (rg->parsed()) return cmd_regions(rg_mode, rg_ell, rg_alpha, rg_N, rg_n, rg_L, rg_out);
    if (mx->parsed()) return cmd_maximal(mx_kind, mx_t, mx_a, mx_b, mx_N, mx_alpha, mx_f, mx_out);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
  return kExitUsage;
}
