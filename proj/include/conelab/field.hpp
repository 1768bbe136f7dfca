#ifndef CONELAB_FIELD_HPP
#define CONELAB_FIELD_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace conelab {

using cplx = std::complex<double>;

inline bool is_pow2(std::uint32_t v) { return v != 0 && (v & (v - 1)) == 0; }

/// Periodic square grid [0,L)^2 with n samples per axis.
///
/// Spatial sample i = (i1,i2) sits at x = (i1*L/n, i2*L/n).
/// Frequency sample i = (i1,i2) holds the mode k/L with integer
/// k = (i1 - n/2, i2 - n/2), i.e. the spectrum is stored centered
/// (fftshift order), row-major with axis 1 as the slow index.
struct GridSpec {
  std::uint32_t n = 0;
  double period = 0.0;

  GridSpec() = default;
  GridSpec(std::uint32_t n_, double period_) : n(n_), period(period_) {
    if (!is_pow2(n) || n < 8) throw std::invalid_argument("GridSpec: n must be a power of two, n >= 8");
    if (!(period > 0.0)) throw std::invalid_argument("GridSpec: period must be positive");
  }

  std::size_t size() const { return std::size_t(n) * n; }
  double dx() const { return period / n; }
  double dfreq() const { return 1.0 / period; }
  /// Largest representable frequency magnitude per axis, n/(2L).
  double freq_max() const { return n / (2.0 * period); }
  /// Alias-free band limit for inputs whose pointwise products are formed, n/(4L).
  double band_limit() const { return n / (4.0 * period); }

  /// Frequency lattice covers |xi| <= 4 at resolution finer than the 2^{-J-2} shell.
  bool cone_adequate(int J) const {
    return dfreq() <= std::pow(2.0, -J - 2) && freq_max() >= 4.0;
  }
  /// Smallest period L for which a grid can be cone-adequate for level J.
  static double required_period(int J) { return std::pow(2.0, J + 2); }

  double freq_of_index(std::uint32_t i) const { return (double(i) - double(n) / 2.0) / period; }
  double coord_of_index(std::uint32_t i) const { return double(i) * period / double(n); }

  bool operator==(const GridSpec& o) const { return n == o.n && period == o.period; }
};

enum class Rep : std::uint32_t { space = 0, frequency = 1 };

/// Complex samples of a function on a GridSpec, in space or frequency form.
/// Immutable by convention after construction (operations return new Fields).
struct Field {
  GridSpec grid;
  Rep rep = Rep::space;
  std::vector<cplx> samples;

  Field() = default;
  Field(const GridSpec& g, Rep r) : grid(g), rep(r), samples(g.size(), cplx(0.0, 0.0)) {}
  Field(const GridSpec& g, Rep r, std::vector<cplx> s) : grid(g), rep(r), samples(std::move(s)) {
    if (samples.size() != grid.size()) throw std::invalid_argument("Field: samples length must equal n^2");
  }

  std::uint32_t n() const { return grid.n; }
  cplx& at(std::uint32_t i1, std::uint32_t i2) { return samples[std::size_t(i1) * grid.n + i2]; }
  const cplx& at(std::uint32_t i1, std::uint32_t i2) const { return samples[std::size_t(i1) * grid.n + i2]; }

  void require(Rep r, const char* who) const {
    if (rep != r)
      throw std::logic_error(std::string(who) + ": field has wrong representation flag");
  }
};

// ---------------------------------------------------------------------------
// CMF1 binary format: magic "CMF1", u32 n, u32 representation flag
// (0 = space, 1 = frequency), f64 period, then n^2 interleaved (re, im)
// f64 pairs, little-endian, row-major. Frequency fields are stored in the
// centered (fftshift) order described on GridSpec.
// ---------------------------------------------------------------------------

inline void write_cmf1(const Field& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_cmf1: cannot open " + path);
  os.write("CMF1", 4);
  std::uint32_t n = f.grid.n, flag = std::uint32_t(f.rep);
  double period = f.grid.period;
  os.write(reinterpret_cast<const char*>(&n), 4);
  os.write(reinterpret_cast<const char*>(&flag), 4);
  os.write(reinterpret_cast<const char*>(&period), 8);
  os.write(reinterpret_cast<const char*>(f.samples.data()), std::streamsize(f.samples.size() * sizeof(cplx)));
  if (!os) throw std::runtime_error("write_cmf1: write failed for " + path);
}

inline Field read_cmf1(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_cmf1: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "CMF1", 4) != 0) throw std::runtime_error("read_cmf1: bad magic in " + path);
  std::uint32_t n = 0, flag = 0;
  double period = 0.0;
  is.read(reinterpret_cast<char*>(&n), 4);
  is.read(reinterpret_cast<char*>(&flag), 4);
  is.read(reinterpret_cast<char*>(&period), 8);
  if (!is || flag > 1) throw std::runtime_error("read_cmf1: bad header in " + path);
  Field f(GridSpec(n, period), Rep(flag));
  is.read(reinterpret_cast<char*>(f.samples.data()), std::streamsize(f.samples.size() * sizeof(cplx)));
  if (!is) throw std::runtime_error("read_cmf1: truncated payload in " + path);
  return f;
}

}  // namespace conelab

#endif
