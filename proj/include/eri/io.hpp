#ifndef ERI_IO_HPP
#define ERI_IO_HPP

// File formats and configuration: flat key = value config with environment
// overrides, the self-describing dataset format (header + CSV), image and
// ridge CSVs, and ASCII PGM rendering. All writes are atomic
// (write-temp-then-rename).

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eri/forward.hpp"
#include "eri/imaging.hpp"

namespace eri {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 17 significant digits: exact round-trip for 64-bit doubles
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

using KeyValues = std::map<std::string, std::string>;

// Flat UTF-8 key = value lines; '#' starts a comment; keys namespaced with
// dots.
inline KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    kv[key] = value;
  }
  return kv;
}

inline KeyValues parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_key_values(in);
}

// Environment override: key medium.mu -> ERI_MEDIUM_MU
inline std::string env_name_for(const std::string& key) {
  std::string name = "ERI_";
  for (char c : key) {
    if (c == '.' || c == '-')
      name += '_';
    else
      name += (char)std::toupper((unsigned char)c);
  }
  return name;
}

inline void apply_env_overrides(KeyValues& kv, const std::vector<std::string>& known_keys) {
  for (const auto& key : known_keys) {
    const char* v = std::getenv(env_name_for(key).c_str());
    if (v != nullptr) kv[key] = v;
  }
}

struct RunConfig {
  std::string surface = "example3";
  double medium_mu = 1.0, medium_lambda = 1.0, medium_omega = 15.0;
  double geometry_H = 2.0, geometry_A = 20.0;
  int geometry_N = 100;
  double bie_eta_re = 15.0, bie_eta_im = 0.0;
  int bie_nodes = 2048;
  double bie_halfwidth = 30.0, bie_taper = 0.2;
  double imaging_x1_min = -6.0, imaging_x1_max = 6.0;
  double imaging_x2_min = 0.0, imaging_x2_max = 1.2;
  int imaging_nx1 = 241, imaging_nx2 = 61;
  int imaging_M = 256;
  bool imaging_normalize = false;
  double noise_delta = 0.0;
  std::uint64_t noise_seed = 1;
  std::string path_dataset, path_image, path_ridge, path_report;

  static const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "surface",          "medium.mu",         "medium.lambda",
        "medium.omega",     "geometry.H",        "geometry.A",
        "geometry.N",       "bie.eta_re",        "bie.eta_im",
        "bie.nodes",        "bie.halfwidth",     "bie.taper",
        "imaging.x1_min",   "imaging.x1_max",    "imaging.x2_min",
        "imaging.x2_max",   "imaging.nx1",       "imaging.nx2",
        "imaging.M",        "imaging.normalize", "noise.delta",
        "noise.seed",       "paths.dataset",     "paths.image",
        "paths.ridge",      "paths.report"};
    return keys;
  }

  ElasticMedium medium() const { return {medium_mu, medium_lambda, medium_omega}; }
  MeasurementGeometry geometry() const {
    MeasurementGeometry g;
    g.H = geometry_H;
    g.A = geometry_A;
    g.N = geometry_N;
    return g;
  }
  BIEConfig bie() const {
    BIEConfig b;
    b.eta = {bie_eta_re, bie_eta_im};
    b.node_count = bie_nodes;
    b.truncation_halfwidth = bie_halfwidth;
    b.taper_fraction = bie_taper;
    return b;
  }
  SamplingGrid grid() const {
    SamplingGrid g;
    g.x1_min = imaging_x1_min;
    g.x1_max = imaging_x1_max;
    g.x2_min = imaging_x2_min;
    g.x2_max = imaging_x2_max;
    g.nx1 = imaging_nx1;
    g.nx2 = imaging_nx2;
    return g;
  }
  ImagingConfig imaging() const { return {imaging_M, imaging_normalize}; }
};

namespace detail {

inline double to_double(const std::string& key, const std::string& v) {
  // strtod (unlike std::stod) accepts subnormals instead of throwing
  const char* s = v.c_str();
  char* end = nullptr;
  double d = std::strtod(s, &end);
  if (v.empty() || end != s + v.size() || !std::isfinite(d))
    throw ConfigError("config key " + key + ": not a number: '" + v + "'");
  return d;
}
inline long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long long i = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + ": not an integer: '" + v + "'");
  }
}
inline bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw ConfigError("config key " + key + ": not a boolean: '" + v + "'");
}

}  // namespace detail

inline RunConfig run_config_from(const KeyValues& kv) {
  RunConfig c;
  for (const auto& [key, value] : kv) {
    if (key == "surface") c.surface = value;
    else if (key == "medium.mu") c.medium_mu = detail::to_double(key, value);
    else if (key == "medium.lambda") c.medium_lambda = detail::to_double(key, value);
    else if (key == "medium.omega") c.medium_omega = detail::to_double(key, value);
    else if (key == "geometry.H") c.geometry_H = detail::to_double(key, value);
    else if (key == "geometry.A") c.geometry_A = detail::to_double(key, value);
    else if (key == "geometry.N") c.geometry_N = (int)detail::to_int(key, value);
    else if (key == "bie.eta_re") c.bie_eta_re = detail::to_double(key, value);
    else if (key == "bie.eta_im") c.bie_eta_im = detail::to_double(key, value);
    else if (key == "bie.nodes") c.bie_nodes = (int)detail::to_int(key, value);
    else if (key == "bie.halfwidth") c.bie_halfwidth = detail::to_double(key, value);
    else if (key == "bie.taper") c.bie_taper = detail::to_double(key, value);
    else if (key == "imaging.x1_min") c.imaging_x1_min = detail::to_double(key, value);
    else if (key == "imaging.x1_max") c.imaging_x1_max = detail::to_double(key, value);
    else if (key == "imaging.x2_min") c.imaging_x2_min = detail::to_double(key, value);
    else if (key == "imaging.x2_max") c.imaging_x2_max = detail::to_double(key, value);
    else if (key == "imaging.nx1") c.imaging_nx1 = (int)detail::to_int(key, value);
    else if (key == "imaging.nx2") c.imaging_nx2 = (int)detail::to_int(key, value);
    else if (key == "imaging.M") c.imaging_M = (int)detail::to_int(key, value);
    else if (key == "imaging.normalize") c.imaging_normalize = detail::to_bool(key, value);
    else if (key == "noise.delta") c.noise_delta = detail::to_double(key, value);
    else if (key == "noise.seed") c.noise_seed = (std::uint64_t)detail::to_int(key, value);
    else if (key == "paths.dataset") c.path_dataset = value;
    else if (key == "paths.image") c.path_image = value;
    else if (key == "paths.ridge") c.path_ridge = value;
    else if (key == "paths.report") c.path_report = value;
    else throw ConfigError("unknown config key: " + key);
  }
  // re-validate the physical invariants of the referenced types
  c.medium();
  c.geometry().validate();
  c.bie().validate();
  c.grid().validate();
  c.imaging().validate();
  if (c.noise_delta < 0.0) throw ConfigError("noise.delta must be >= 0");
  return c;
}

inline RunConfig load_run_config(const std::string& path) {
  KeyValues kv = path.empty() ? KeyValues{} : parse_config_file(path);
  apply_env_overrides(kv, RunConfig::known_keys());
  return run_config_from(kv);
}

// ---- atomic writes ----

inline void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

// ---- dataset format ----

inline const char* kDatasetColumns =
    "source_index,receiver_index,polarization,us1_re,us1_im,us2_re,us2_im,"
    "pus1_re,pus1_im,pus2_re,pus2_im";

inline std::string serialize_dataset(const CauchyDataSet& d) {
  std::ostringstream os;
  os << "surface = " << d.surface_name << "\n";
  os << "medium.mu = " << fmt17(d.medium.mu) << "\n";
  os << "medium.lambda = " << fmt17(d.medium.lambda) << "\n";
  os << "medium.omega = " << fmt17(d.medium.omega) << "\n";
  os << "params.mu_t = " << fmt17(d.params.mu_t) << "\n";
  os << "params.lambda_t = " << fmt17(d.params.lambda_t) << "\n";
  os << "geometry.H = " << fmt17(d.geometry.H) << "\n";
  os << "geometry.A = " << fmt17(d.geometry.A) << "\n";
  os << "geometry.N = " << d.geometry.N << "\n";
  os << "noise.delta = " << fmt17(d.noise.delta) << "\n";
  os << "noise.seed = " << d.noise.seed << "\n";
  os << "---\n";
  os << kDatasetColumns << "\n";
  const int n = d.count();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < 2; ++j) {
        const Vec2C& u = d.us_at(k, i, j);
        const Vec2C& t = d.pus_at(k, i, j);
        os << k << ',' << i << ',' << j << ',' << fmt17(u.x.real()) << ','
           << fmt17(u.x.imag()) << ',' << fmt17(u.y.real()) << ',' << fmt17(u.y.imag())
           << ',' << fmt17(t.x.real()) << ',' << fmt17(t.x.imag()) << ','
           << fmt17(t.y.real()) << ',' << fmt17(t.y.imag()) << "\n";
      }
  return os.str();
}

inline void write_dataset(const std::string& path, const CauchyDataSet& d) {
  atomic_write(path, serialize_dataset(d));
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline CauchyDataSet read_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset: " + path);
  std::ostringstream header;
  std::string line;
  bool found_sep = false;
  while (std::getline(in, line)) {
    if (trim(line) == "---") {
      found_sep = true;
      break;
    }
    header << line << "\n";
  }
  if (!found_sep) throw std::runtime_error("dataset " + path + ": missing --- separator");
  std::istringstream hs(header.str());
  KeyValues kv = parse_key_values(hs);
  auto need = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end())
      throw std::runtime_error("dataset " + path + ": missing header key " + key);
    return it->second;
  };
  CauchyDataSet d;
  d.medium = ElasticMedium(detail::to_double("medium.mu", need("medium.mu")),
                           detail::to_double("medium.lambda", need("medium.lambda")),
                           detail::to_double("medium.omega", need("medium.omega")));
  d.params = GeneralizedStressParams(
      d.medium, detail::to_double("params.mu_t", need("params.mu_t")),
      detail::to_double("params.lambda_t", need("params.lambda_t")));
  d.surface_name = need("surface");
  d.geometry.H = detail::to_double("geometry.H", need("geometry.H"));
  d.geometry.A = detail::to_double("geometry.A", need("geometry.A"));
  d.geometry.N = (int)detail::to_int("geometry.N", need("geometry.N"));
  d.geometry.validate();
  d.noise.delta = detail::to_double("noise.delta", need("noise.delta"));
  d.noise.seed = (std::uint64_t)detail::to_int("noise.seed", need("noise.seed"));
  d.allocate();

  if (!std::getline(in, line) || trim(line) != kDatasetColumns)
    throw std::runtime_error("dataset " + path + ": missing column header");
  const int n = d.count();
  std::size_t rows = 0, expected = (std::size_t)n * n * 2;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    auto f = split_csv(line);
    if (f.size() != 11)
      throw std::runtime_error("dataset " + path + ": malformed record: " + line);
    int k = (int)detail::to_int("source_index", f[0]);
    int i = (int)detail::to_int("receiver_index", f[1]);
    int j = (int)detail::to_int("polarization", f[2]);
    if (k < 0 || k >= n || i < 0 || i >= n || j < 0 || j > 1)
      throw std::runtime_error("dataset " + path + ": index out of range: " + line);
    auto fd = [&](int c) { return detail::to_double("field", f[c]); };
    d.us_at(k, i, j) = {{fd(3), fd(4)}, {fd(5), fd(6)}};
    d.pus_at(k, i, j) = {{fd(7), fd(8)}, {fd(9), fd(10)}};
    ++rows;
  }
  if (rows != expected)
    throw std::runtime_error("dataset " + path + ": expected " +
                             std::to_string(expected) + " records, got " +
                             std::to_string(rows));
  return d;
}

// ---- image / ridge CSVs ----

inline std::string serialize_image(const ImageGrid& image) {
  std::ostringstream os;
  os << "x1,x2,value\n";
  const auto& g = image.grid;
  for (int i = 0; i < g.nx1; ++i)
    for (int j = 0; j < g.nx2; ++j)
      os << fmt17(g.x1(i)) << ',' << fmt17(g.x2(j)) << ',' << fmt17(image.value(i, j))
         << "\n";
  return os.str();
}

inline void write_image(const std::string& path, const ImageGrid& image) {
  atomic_write(path, serialize_image(image));
}

// Reads an image CSV back; infers the grid from the row pattern (x2 varies
// fastest).
inline ImageGrid read_image(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open image CSV: " + path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "x1,x2,value")
    throw std::runtime_error("image CSV " + path + ": missing x1,x2,value header");
  std::vector<double> x1s, x2s, vals;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    auto f = split_csv(line);
    if (f.size() != 3)
      throw std::runtime_error("image CSV " + path + ": malformed row: " + line);
    x1s.push_back(detail::to_double("x1", f[0]));
    x2s.push_back(detail::to_double("x2", f[1]));
    vals.push_back(detail::to_double("value", f[2]));
  }
  if (vals.size() < 4) throw std::runtime_error("image CSV " + path + ": too few rows");
  // x2 varies fastest: count rows until x1 changes
  std::size_t nx2 = 1;
  while (nx2 < x1s.size() && x1s[nx2] == x1s[0]) ++nx2;
  if (nx2 < 2 || vals.size() % nx2 != 0)
    throw std::runtime_error("image CSV " + path + ": inconsistent grid");
  std::size_t nx1 = vals.size() / nx2;
  if (nx1 < 2) throw std::runtime_error("image CSV " + path + ": inconsistent grid");
  ImageGrid image;
  image.grid.nx1 = (int)nx1;
  image.grid.nx2 = (int)nx2;
  image.grid.x1_min = x1s.front();
  image.grid.x1_max = x1s.back();
  image.grid.x2_min = x2s.front();
  image.grid.x2_max = x2s[nx2 - 1];
  image.grid.validate();
  image.values = std::move(vals);
  return image;
}

inline std::string serialize_ridge(const std::vector<Vec2>& ridge) {
  std::ostringstream os;
  os << "x1,x2_ridge\n";
  for (const Vec2& r : ridge) os << fmt17(r.x) << ',' << fmt17(r.y) << "\n";
  return os.str();
}

inline void write_ridge(const std::string& path, const std::vector<Vec2>& ridge) {
  atomic_write(path, serialize_ridge(ridge));
}

inline std::vector<Vec2> read_ridge(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open ridge CSV: " + path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "x1,x2_ridge")
    throw std::runtime_error("ridge CSV " + path + ": missing x1,x2_ridge header");
  std::vector<Vec2> out;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    auto f = split_csv(line);
    if (f.size() != 2)
      throw std::runtime_error("ridge CSV " + path + ": malformed row: " + line);
    out.push_back({detail::to_double("x1", f[0]), detail::to_double("x2_ridge", f[1])});
  }
  return out;
}

// ---- PGM rendering ----

// ASCII PGM, maxval 65535, linear scaling by the image maximum; rows
// top-to-bottom are decreasing x2, columns left-to-right increasing x1.
inline std::string render_pgm(const ImageGrid& image) {
  const auto& g = image.grid;
  double mx = image.max_value();
  std::ostringstream os;
  os << "P2\n" << g.nx1 << ' ' << g.nx2 << "\n65535\n";
  for (int j = g.nx2 - 1; j >= 0; --j) {
    for (int i = 0; i < g.nx1; ++i) {
      long pix = mx > 0.0 ? std::lround(65535.0 * image.value(i, j) / mx) : 0;
      os << pix << (i + 1 < g.nx1 ? ' ' : '\n');
    }
  }
  return os.str();
}

inline void write_pgm(const std::string& path, const ImageGrid& image) {
  atomic_write(path, render_pgm(image));
}

}  // namespace eri

#endif
