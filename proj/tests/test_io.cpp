#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "eri/io.hpp"

using namespace eri;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("eri_io_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

CauchyDataSet sample_dataset() {
  CauchyDataSet d;
  d.geometry.N = 2;  // 5 receivers
  d.surface_name = "example3";
  d.noise = {0.2, 17};
  d.allocate();
  std::mt19937_64 rng(3);
  auto uni = [&] { return (rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  for (auto& v : d.us) v = {{uni(), uni()}, {uni(), uni()}};
  for (auto& v : d.pus) v = {{uni(), uni()}, {uni(), uni()}};
  // make one value maximally awkward for decimal round-trips
  d.us[0].x = {0.1, -1.0 / 3.0};
  d.us[1].y = {5e-324, -1e308};
  return d;
}

}  // namespace

TEST_CASE("fmt17 round-trips doubles exactly") {
  for (double v : {0.1, -1.0 / 3.0, 1e-300, 5e-324, 1.7976931348623157e308,
                   3.141592653589793, -0.0, 2.0}) {
    CHECK(std::strtod(fmt17(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("key = value parsing") {
  std::istringstream in(
      "# comment\n"
      "medium.mu = 2.5   # trailing comment\n"
      "  surface=example1\n"
      "\n"
      "geometry.N = 50\n");
  KeyValues kv = parse_key_values(in);
  CHECK(kv.at("medium.mu") == "2.5");
  CHECK(kv.at("surface") == "example1");
  CHECK(kv.at("geometry.N") == "50");

  std::istringstream bad("no equals sign here\n");
  CHECK_THROWS_AS(parse_key_values(bad), ConfigError);
  std::istringstream empty_key("= 3\n");
  CHECK_THROWS_AS(parse_key_values(empty_key), ConfigError);
}

TEST_CASE("run config: typed fields, validation, unknown keys") {
  KeyValues kv;
  kv["surface"] = "example2";
  kv["medium.omega"] = "10";
  kv["bie.nodes"] = "512";
  kv["imaging.normalize"] = "true";
  RunConfig c = run_config_from(kv);
  CHECK(c.surface == "example2");
  CHECK(c.medium_omega == 10.0);
  CHECK(c.bie_nodes == 512);
  CHECK(c.imaging_normalize);
  CHECK(c.medium().ks == doctest::Approx(10.0));

  kv["bogus.key"] = "1";
  CHECK_THROWS_AS(run_config_from(kv), ConfigError);
  kv.erase("bogus.key");
  kv["medium.mu"] = "not-a-number";
  CHECK_THROWS_AS(run_config_from(kv), ConfigError);
  kv["medium.mu"] = "-1";
  CHECK_THROWS_AS(run_config_from(kv), std::domain_error);
  kv["medium.mu"] = "1";
  kv["noise.delta"] = "-0.5";
  CHECK_THROWS_AS(run_config_from(kv), ConfigError);
}

TEST_CASE("environment overrides any config key") {
  CHECK(env_name_for("medium.mu") == "ERI_MEDIUM_MU");
  CHECK(env_name_for("paths.dataset") == "ERI_PATHS_DATASET");
  setenv("ERI_GEOMETRY_N", "25", 1);
  KeyValues kv;
  kv["geometry.N"] = "100";
  apply_env_overrides(kv, RunConfig::known_keys());
  unsetenv("ERI_GEOMETRY_N");
  CHECK(kv.at("geometry.N") == "25");
  CHECK(run_config_from(kv).geometry_N == 25);
}

TEST_CASE("load_run_config reads a file with overrides applied") {
  TempDir tmp;
  std::string cfg = tmp.file("run.cfg");
  atomic_write(cfg, "surface = flat\nbie.nodes = 256\n");
  RunConfig c = load_run_config(cfg);
  CHECK(c.surface == "flat");
  CHECK(c.bie_nodes == 256);
  CHECK_THROWS_AS(load_run_config(tmp.file("missing.cfg")), ConfigError);
}

TEST_CASE("atomic_write leaves no temporary behind") {
  TempDir tmp;
  std::string path = tmp.file("out.txt");
  atomic_write(path, "payload");
  CHECK(fs::exists(path));
  CHECK(!fs::exists(path + ".tmp"));
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(content == "payload");
}

TEST_CASE("dataset round-trip is exact") {
  TempDir tmp;
  CauchyDataSet d = sample_dataset();
  std::string path = tmp.file("data.csv");
  write_dataset(path, d);
  CauchyDataSet back = read_dataset(path);

  CHECK(back.surface_name == d.surface_name);
  CHECK(back.medium.mu == d.medium.mu);
  CHECK(back.medium.omega == d.medium.omega);
  CHECK(back.params.mu_t == d.params.mu_t);
  CHECK(back.geometry.N == d.geometry.N);
  CHECK(back.noise.delta == d.noise.delta);
  CHECK(back.noise.seed == d.noise.seed);
  REQUIRE(back.us.size() == d.us.size());
  for (std::size_t i = 0; i < d.us.size(); ++i) {
    CHECK(back.us[i].x == d.us[i].x);
    CHECK(back.us[i].y == d.us[i].y);
    CHECK(back.pus[i].x == d.pus[i].x);
    CHECK(back.pus[i].y == d.pus[i].y);
  }
  // serialization itself is deterministic
  CHECK(serialize_dataset(d) == serialize_dataset(back));
}

TEST_CASE("dataset reader rejects malformed files") {
  TempDir tmp;
  CauchyDataSet d = sample_dataset();
  std::string good = serialize_dataset(d);

  std::string no_sep = good;
  no_sep.replace(no_sep.find("---"), 3, "===");
  atomic_write(tmp.file("no_sep.csv"), no_sep);
  CHECK_THROWS(read_dataset(tmp.file("no_sep.csv")));

  std::string truncated = good.substr(0, good.size() - 40);
  truncated = truncated.substr(0, truncated.rfind('\n') + 1);
  atomic_write(tmp.file("short.csv"), truncated);
  CHECK_THROWS(read_dataset(tmp.file("short.csv")));

  std::string bad_field = good;
  bad_field.replace(bad_field.rfind(','), 1, ";");
  atomic_write(tmp.file("bad.csv"), bad_field);
  CHECK_THROWS(read_dataset(tmp.file("bad.csv")));

  CHECK_THROWS(read_dataset(tmp.file("absent.csv")));
}

TEST_CASE("image CSV round-trip and grid inference") {
  TempDir tmp;
  ImageGrid image;
  image.grid = {-1.0, 1.0, 0.0, 0.5, 5, 3};
  image.values.resize(15);
  for (int i = 0; i < 15; ++i) image.values[i] = 0.1 * i + 1.0 / 3.0;
  std::string path = tmp.file("image.csv");
  write_image(path, image);
  ImageGrid back = read_image(path);
  CHECK(back.grid.nx1 == 5);
  CHECK(back.grid.nx2 == 3);
  CHECK(back.grid.x1_min == -1.0);
  CHECK(back.grid.x2_max == 0.5);
  for (int i = 0; i < 15; ++i) CHECK(back.values[i] == image.values[i]);

  atomic_write(tmp.file("junk.csv"), "x1,x2,value\n1,2\n");
  CHECK_THROWS(read_image(tmp.file("junk.csv")));
  atomic_write(tmp.file("header.csv"), "a,b,c\n1,2,3\n");
  CHECK_THROWS(read_image(tmp.file("header.csv")));
}

TEST_CASE("ridge CSV round-trip") {
  TempDir tmp;
  std::vector<Vec2> ridge = {{-1.0, 0.25}, {0.0, 1.0 / 3.0}, {1.0, 0.5}};
  std::string path = tmp.file("ridge.csv");
  write_ridge(path, ridge);
  auto back = read_ridge(path);
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back[i].x == ridge[i].x);
    CHECK(back[i].y == ridge[i].y);
  }
}

TEST_CASE("PGM rendering") {
  ImageGrid image;
  image.grid = {-1.0, 1.0, 0.0, 1.0, 3, 2};
  image.values = {0.0, 1.0, 0.5, 1.0, 0.25, 0.0};  // [i * nx2 + j]
  std::string pgm = render_pgm(image);
  std::istringstream in(pgm);
  std::string magic;
  int w, h, maxval;
  in >> magic >> w >> h >> maxval;
  CHECK(magic == "P2");
  CHECK(w == 3);
  CHECK(h == 2);
  CHECK(maxval == 65535);
  // top row is the larger x2 (j = 1): values 1.0, 1.0, 0.0 scaled by max 1.0
  int p[6];
  for (int& v : p) in >> v;
  CHECK(p[0] == 65535);
  CHECK(p[1] == 65535);
  CHECK(p[2] == 0);
  CHECK(p[3] == 0);
  CHECK(p[4] == 32768);
  CHECK(p[5] == 16384);
  // constant image renders saturated, and rendering is deterministic
  ImageGrid flat = image;
  flat.values.assign(6, 2.5);
  std::string a = render_pgm(flat), b = render_pgm(flat);
  CHECK(a == b);
  std::istringstream fin(a);
  fin >> magic >> w >> h >> maxval;
  for (int i = 0; i < 6; ++i) {
    int v;
    fin >> v;
    CHECK(v == 65535);
  }
}
