#include <catch2/catch_amalgamated.hpp>

#include "conelab/dft.hpp"
#include "support/oracles.hpp"

using namespace conelab;

TEST_CASE("GridSpec invariants", "[field]") {
  CHECK_THROWS_AS(GridSpec(12, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(16, 0.0), std::invalid_argument);
  GridSpec g(16, 2.0);
  CHECK(g.dfreq() == 0.5);
  CHECK(g.freq_max() == 4.0);
  // cone-adequate for J=4 requires L >= 64 (and n >= 8L)
  CHECK(GridSpec::required_period(4) == 64.0);
  CHECK(GridSpec(512, 64.0).cone_adequate(4));
  CHECK_FALSE(GridSpec(512, 32.0).cone_adequate(4));
  CHECK_FALSE(GridSpec(256, 64.0).cone_adequate(4));  // freq_max = 2 < 4
}

TEST_CASE("constant and pure-mode transforms", "[field]") {
  GridSpec g(32, 4.0);
  const double L2 = g.period * g.period;
  Field one(g, Rep::space);
  for (auto& v : one.samples) v = cplx(1.0, 0.0);
  Field F = dft_forward(one);
  CHECK(std::abs(F.at(16, 16) - cplx(L2, 0.0)) < 1e-12 * L2);
  double off = 0;
  for (uint32_t i1 = 0; i1 < g.n; ++i1)
    for (uint32_t i2 = 0; i2 < g.n; ++i2)
      if (i1 != 16 || i2 != 16) off = std::max(off, std::abs(F.at(i1, i2)));
  CHECK(off < 1e-12 * L2);

  // pure mode at k0 = (3, -5)
  Field mode(g, Rep::space);
  const double pi = 3.14159265358979323846;
  for (uint32_t i1 = 0; i1 < g.n; ++i1)
    for (uint32_t i2 = 0; i2 < g.n; ++i2)
      mode.at(i1, i2) = std::polar(1.0, 2.0 * pi * (3.0 * i1 - 5.0 * i2) / g.n);
  Field M = dft_forward(mode);
  CHECK(std::abs(M.at(16 + 3, 16 - 5) - cplx(L2, 0.0)) < 1e-10 * L2);

  // delta spectrum scaled by L^2 -> plane wave
  Field D(g, Rep::frequency);
  D.at(16 + 3, 16 - 5) = cplx(L2, 0.0);
  Field w = dft_inverse(D);
  CHECK(oracle::rel_l2_diff(w, mode) < 1e-12);
}

TEST_CASE("roundtrip and Parseval", "[field]") {
  GridSpec g(64, 8.0);
  Field f = oracle::random_bandlimited(g, 42);
  Field back = dft_inverse(dft_forward(f));
  double fmax = 0;
  for (auto& v : f.samples) fmax = std::max(fmax, std::abs(v));
  double err = 0;
  for (size_t i = 0; i < f.samples.size(); ++i) err = std::max(err, std::abs(back.samples[i] - f.samples[i]));
  CHECK(err <= 1e-12 * fmax);
  // Parseval within 1e-12
  Field F = dft_forward(f);
  CHECK(std::abs(norm_lp(f, 2.0) - norm_l2_freq(F)) < 1e-12 * norm_lp(f, 2.0));
  // random frequency field too
  Field R(g, Rep::frequency);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (auto& v : R.samples) v = cplx(nd(rng), nd(rng));
  CHECK(std::abs(norm_lp(dft_inverse(R), 2.0) - norm_l2_freq(R)) < 1e-12 * norm_l2_freq(R));
}

TEST_CASE("transform linearity", "[field]") {
  GridSpec g(32, 4.0);
  Field f = oracle::random_bandlimited(g, 1), h = oracle::random_bandlimited(g, 2);
  const cplx alpha(0.7, -1.3), beta(-2.1, 0.4);
  Field comb(g, Rep::space);
  for (size_t i = 0; i < comb.samples.size(); ++i)
    comb.samples[i] = alpha * f.samples[i] + beta * h.samples[i];
  Field Fc = dft_forward(comb), Ff = dft_forward(f), Fh = dft_forward(h);
  double scale = 0, err = 0;
  for (size_t i = 0; i < Fc.samples.size(); ++i) {
    scale = std::max(scale, std::abs(Fc.samples[i]));
    err = std::max(err, std::abs(Fc.samples[i] - alpha * Ff.samples[i] - beta * Fh.samples[i]));
  }
  CHECK(err <= 1e-13 * scale);
}

TEST_CASE("Gaussian transform matches closed form", "[field]") {
  // sigma, L chosen so both aliasing and wrap-around are < 1e-12
  GridSpec g(128, 8.0);
  const double sigma = 0.5, c1 = 3.375, c2 = 5.125;
  Field F = dft_forward(oracle::gaussian_field(g, sigma, c1, c2));
  double worst = 0;
  for (uint32_t i1 = 0; i1 < g.n; ++i1) {
    const double x1 = g.freq_of_index(i1);
    for (uint32_t i2 = 0; i2 < g.n; ++i2) {
      const double x2 = g.freq_of_index(i2);
      if (x1 * x1 + x2 * x2 > 4.0) continue;
      const cplx exact = oracle::gaussian_hat(sigma, c1, c2, x1, x2);
      worst = std::max(worst, std::abs(F.at(i1, i2) - exact) / std::abs(exact));
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("norm_lp basics and Gaussian L2", "[field]") {
  GridSpec g(64, 8.0);
  Field f(g, Rep::space);
  for (auto& v : f.samples) v = cplx(-2.5, 0.0);
  CHECK(norm_lp(f, 2.0) == Catch::Approx(2.5 * 8.0).margin(1e-12));
  CHECK(norm_lp(f, std::numeric_limits<double>::infinity()) == 2.5);
  CHECK_THROWS_AS(norm_lp(f, 0.5), std::invalid_argument);

  GridSpec big(256, 16.0);
  Field gau = oracle::gaussian_field(big, 1.0, 8.0, 8.0);
  CHECK(norm_lp(gau, 2.0) == Catch::Approx(std::pow(2.0, -0.5)).epsilon(1e-6));
}

TEST_CASE("norm_lp homogeneity and triangle inequality", "[field]") {
  GridSpec g(16, 2.0);
  Field f = oracle::random_bandlimited(g, 5), h = oracle::random_bandlimited(g, 6);
  Field sum(g, Rep::space);
  for (size_t i = 0; i < sum.samples.size(); ++i) sum.samples[i] = f.samples[i] + h.samples[i];
  const double ps[] = {1.0, 4.0 / 3.0, 2.0, 4.0, std::numeric_limits<double>::infinity()};
  for (double p : ps) {
    Field sc(g, Rep::space);
    for (size_t i = 0; i < sc.samples.size(); ++i) sc.samples[i] = cplx(0.0, -3.7) * f.samples[i];
    CHECK(norm_lp(sc, p) == Catch::Approx(3.7 * norm_lp(f, p)).epsilon(1e-12));
    CHECK(norm_lp(sum, p) <= norm_lp(f, p) + norm_lp(h, p) + 1e-12);
  }
}

TEST_CASE("frequency lattice enumeration", "[field]") {
  GridSpec g(8, 1.0);
  auto lat = frequency_lattice(g);
  REQUIRE(lat.size() == 64);
  CHECK(lat.front() == std::pair<double, double>(-4.0, -4.0));
  CHECK(lat.back() == std::pair<double, double>(3.0, 3.0));
  GridSpec g2(8, 2.0);
  auto lat2 = frequency_lattice(g2);
  CHECK(lat2[1].second - lat2[0].second == 0.5);
}

TEST_CASE("CMF1 roundtrip", "[field]") {
  GridSpec g(16, 2.5);
  Field f = oracle::random_bandlimited(g, 77);
  f.rep = Rep::space;
  const std::string path = "test_field.cmf";
  write_cmf1(f, path);
  Field back = read_cmf1(path);
  REQUIRE(back.grid.n == f.grid.n);
  CHECK(back.grid.period == f.grid.period);
  CHECK(back.rep == f.rep);
  CHECK(std::memcmp(back.samples.data(), f.samples.data(), f.samples.size() * sizeof(cplx)) == 0);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_cmf1("nonexistent_file.cmf"), std::runtime_error);
}

TEST_CASE("representation flag violations", "[field]") {
  GridSpec g(16, 1.0);
  Field f(g, Rep::frequency);
  CHECK_THROWS_AS(dft_forward(f), std::logic_error);
  Field h(g, Rep::space);
  CHECK_THROWS_AS(dft_inverse(h), std::logic_error);
}
