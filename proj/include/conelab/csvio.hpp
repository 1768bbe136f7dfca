#ifndef CONELAB_CSVIO_HPP
#define CONELAB_CSVIO_HPP

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace conelab {

inline constexpr const char* kVersion = "0.1.0";

/// CSV writer with a comment manifest header. The manifest line carries the
/// timestamp; the body below it is byte-stable for fixed flags and seed.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::string& command, const std::string& flags,
            std::uint64_t seed, const std::string& grid_desc)
      : os_(path) {
    if (!os_) throw std::runtime_error("cannot open output file " + path);
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os_ << "# command=" << command << " version=" << kVersion << " seed=" << seed << " grid=" << grid_desc
        << " flags=" << flags << " timestamp=" << buf << "\n";
  }

  void header(const std::string& h) { os_ << h << "\n"; }

  template <typename... Ts>
  void row(Ts... vals) {
    bool first = true;
    ((cell(vals, first), first = false), ...);
    os_ << "\n";
  }

  std::ofstream& stream() { return os_; }

 private:
  template <typename T>
  void cell(T v, bool first) {
    if (!first) os_ << ",";
    if constexpr (std::is_floating_point_v<T>) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", double(v));
      os_ << buf;
    } else {
      os_ << v;
    }
  }
  std::ofstream os_;
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// key = value config file (UTF-8, # comments, [section] headers flatten to
/// section.key).
inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file " + path);
  std::map<std::string, std::string> out;
  std::string line, section;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    const auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    out[section.empty() ? key : section + "." + key] = val;
  }
  return out;
}

}  // namespace conelab

#endif
