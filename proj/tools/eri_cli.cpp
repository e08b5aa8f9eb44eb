// Command-line driver: simulate datasets, inject noise, compute images, run
// the verification suite, and render figures.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/config error,
// 3 numerical failure.

#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eri/imaging.hpp"
#include "eri/io.hpp"
#include "eri/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string pick_path(const std::string& flag, const std::string& config_path,
                      const std::string& fallback) {
  if (!flag.empty()) return flag;
  if (!config_path.empty()) return config_path;
  return fallback;
}

eri::CauchyDataSet read_dataset_checked(const std::string& path) {
  try {
    return eri::read_dataset(path);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

int cmd_simulate(const eri::RunConfig& cfg, const std::string& out_flag) {
  eri::SurfaceProfile surface = eri::SurfaceProfile::by_name(cfg.surface);
  eri::ElasticMedium medium = cfg.medium();
  auto params = eri::GeneralizedStressParams::pseudo_stress(medium);
  eri::CauchyDataSet data =
      eri::generate_dataset(surface, cfg.geometry(), medium, params, cfg.bie());
  if (cfg.noise_delta > 0.0)
    data = eri::add_noise(data, cfg.noise_delta, cfg.noise_seed);
  std::string out = pick_path(out_flag, cfg.path_dataset, "dataset.csv");
  eri::write_dataset(out, data);
  std::cout << "wrote " << out << " (" << data.count() << " sources x "
            << data.count() << " receivers x 2 polarizations)\n";
  return kExitOk;
}

int cmd_corrupt(const std::string& input, double delta, std::uint64_t seed,
                const std::string& out_flag) {
  if (delta < 0.0) throw UsageError("corrupt: delta must be >= 0");
  eri::CauchyDataSet data = read_dataset_checked(input);
  eri::CauchyDataSet noisy = eri::add_noise(data, delta, seed);
  std::string out = pick_path(out_flag, "", input + ".noisy");
  eri::write_dataset(out, noisy);
  std::cout << "wrote " << out << " (delta=" << delta << " seed=" << seed << ")\n";
  return kExitOk;
}

int cmd_image(const eri::RunConfig& cfg, const std::string& input,
              const std::string& out_flag, const std::string& ridge_flag) {
  eri::CauchyDataSet data = read_dataset_checked(input);
  const eri::MeasurementGeometry want = cfg.geometry();
  if (data.geometry.H != want.H || data.geometry.A != want.A ||
      data.geometry.N != want.N)
    throw UsageError("image: dataset geometry (H=" + eri::fmt17(data.geometry.H) +
                     " A=" + eri::fmt17(data.geometry.A) +
                     " N=" + std::to_string(data.geometry.N) +
                     ") does not match the configured geometry");
  eri::ImageGrid image =
      eri::compute_image(data, data.medium, data.params, cfg.grid(), cfg.imaging());
  std::string out = pick_path(out_flag, cfg.path_image, "image.csv");
  eri::write_image(out, image);
  std::cout << "wrote " << out << "\n";
  std::string ridge_path = ridge_flag.empty() ? cfg.path_ridge : ridge_flag;
  if (!ridge_path.empty()) {
    eri::write_ridge(ridge_path, eri::extract_ridge(image));
    std::cout << "wrote " << ridge_path << "\n";
  }
  return kExitOk;
}

void run_funk_hecke_suite(const eri::ElasticMedium& m, double tol,
                          std::vector<eri::IdentityReport>& reports) {
  for (double kr : {0.0, 1.0, 10.0, 40.0}) {
    eri::Vec2 x{kr / m.ks, 0.0}, y{0.0, 0.0};
    reports.push_back(eri::check_funk_hecke(m.ks, x, y, 256, tol));
  }
}

void run_hk_suite(const eri::ElasticMedium& m, const eri::GeneralizedStressParams& p,
                  double aperture, double tol,
                  std::vector<eri::IdentityReport>& reports) {
  const eri::Vec2 x{0.3, 0.8};
  // >= 16 quadrature points per shear wavelength along the line
  int n_quad = (int)std::ceil(2.0 * aperture * 16.0 / m.shear_wavelength());
  reports.push_back(eri::check_hk_identity(m, p, x, x, 2.0, aperture, n_quad, tol));
}

void run_reciprocity_suite(const eri::RunConfig& cfg, const eri::ElasticMedium& m,
                           const eri::GeneralizedStressParams& p, double tol,
                           std::vector<eri::IdentityReport>& reports) {
  eri::SurfaceProfile surface = eri::SurfaceProfile::by_name(cfg.surface);
  reports.push_back(eri::check_reciprocity(surface, m, p, cfg.bie(), {1.0, 2.0},
                                           {-2.0, 1.5}, {1.0, 0.0}, {0.0, 1.0}, tol));
}

void run_boundary_suite(const eri::RunConfig& cfg, const eri::ElasticMedium& m,
                        const eri::GeneralizedStressParams& p, double tol,
                        std::vector<eri::IdentityReport>& reports) {
  eri::SurfaceProfile surface = eri::SurfaceProfile::by_name(cfg.surface);
  eri::BIEConfig bie = cfg.bie();
  eri::BoundaryMesh mesh = eri::build_mesh(surface, bie);
  eri::DensitySolver solver(eri::assemble_system(surface, mesh, m, p, bie.eta));
  const eri::Vec2 source{0.0, cfg.geometry_H};
  const int n = mesh.size();
  Eigen::MatrixXcd rhs(2 * n, 1);
  for (int i = 0; i < n; ++i) {
    eri::Vec2C g = eri::incident_field(m, source, 0, mesh.points[i]);
    rhs(2 * i, 0) = -2.0 * mesh.taper[i] * g.x;
    rhs(2 * i + 1, 0) = -2.0 * mesh.taper[i] * g.y;
  }
  eri::DensitySolution density = eri::to_density(solver.solve(rhs).col(0));
  reports.push_back(eri::check_boundary_condition(surface, mesh, density, source, 0,
                                                  m, p, bie.eta, tol));
}

void run_navier_suite(const eri::ElasticMedium& m, double tol,
                      std::vector<eri::IdentityReport>& reports) {
  const eri::Vec2 y{0.0, 0.0};
  const double wl = m.shear_wavelength();
  const eri::Vec2 x{y.x + wl, y.y};
  auto field = [&](const eri::Vec2& z) { return eri::gamma(m, z, y).col(0); };
  reports.push_back(eri::check_navier_residual(field, m, x, 1e-4 / m.ks, tol));
  const eri::Vec2 d{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  auto plane_p = [&](const eri::Vec2& z) {
    eri::Complex e = std::exp(eri::Complex(0.0, m.kp * z.dot(d)));
    return eri::Vec2C(d.x * e, d.y * e);
  };
  reports.push_back(
      eri::check_navier_residual(plane_p, m, {0.4, 0.1}, 1e-2 / m.ks, 1e-8));
}

int cmd_verify(const eri::RunConfig& cfg, const std::string& suite, double aperture,
               double tol_override, const std::string& out_flag) {
  const eri::ElasticMedium m = cfg.medium();
  const auto p = eri::GeneralizedStressParams::pseudo_stress(m);
  auto tol = [&](double dflt) { return tol_override > 0.0 ? tol_override : dflt; };
  std::vector<eri::IdentityReport> reports;
  bool all = suite == "all";
  if (all || suite == "funk-hecke") run_funk_hecke_suite(m, tol(1e-8), reports);
  if (all || suite == "hk-identity") run_hk_suite(m, p, aperture, tol(0.1), reports);
  if (all || suite == "reciprocity")
    run_reciprocity_suite(cfg, m, p, tol(1e-3), reports);
  if (all || suite == "boundary-condition")
    run_boundary_suite(cfg, m, p, tol(5e-2), reports);
  if (all || suite == "navier") run_navier_suite(m, tol(1e-6), reports);
  if (reports.empty()) throw UsageError("verify: unknown suite: " + suite);

  std::string text;
  bool ok = true;
  for (const auto& r : reports) {
    text += r.to_line() + "\n";
    ok = ok && r.pass;
  }
  std::cout << text;
  std::string out = out_flag.empty() ? cfg.path_report : out_flag;
  if (!out.empty()) eri::atomic_write(out, text);
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_render(const std::string& input, const std::string& out_flag) {
  eri::ImageGrid image;
  try {
    image = eri::read_image(input);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  std::string out = pick_path(out_flag, "", input + ".pgm");
  eri::write_pgm(out, image);
  std::cout << "wrote " << out << " (" << image.grid.nx1 << "x" << image.grid.nx2
            << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D elastodynamic rough-surface scattering toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  int threads = 0;
  app.add_option("--config", config_path, "path to a key = value config file");
  app.add_option("--threads", threads, "worker threads (0 = auto)");
  app.add_option("--out", out_path, "output path (overrides config paths)");

  CLI::App* simulate = app.add_subcommand("simulate", "solve the forward problem");

  std::string corrupt_in;
  double corrupt_delta = 0.0;
  std::uint64_t corrupt_seed = 1;
  CLI::App* corrupt = app.add_subcommand("corrupt", "add noise to a dataset");
  corrupt->add_option("dataset", corrupt_in, "input dataset")->required();
  corrupt->add_option("--delta", corrupt_delta, "noise ratio")->required();
  corrupt->add_option("--seed", corrupt_seed, "noise seed");

  std::string image_in, ridge_path;
  CLI::App* image = app.add_subcommand("image", "compute the imaging function");
  image->add_option("dataset", image_in, "input dataset")->required();
  image->add_option("--ridge", ridge_path, "also write the ridge CSV here");

  std::string verify_suite = "all";
  double verify_aperture = 20.0, verify_tol = 0.0;
  CLI::App* verify = app.add_subcommand("verify", "run identity checks");
  verify->add_option("suite", verify_suite,
                     "funk-hecke | hk-identity | reciprocity | boundary-condition | "
                     "navier | all");
  verify->add_option("--aperture", verify_aperture, "hk-identity aperture A");
  verify->add_option("--tol", verify_tol, "tolerance override (> 0)");

  std::string render_in;
  CLI::App* render = app.add_subcommand("render", "render an image CSV as PGM");
  render->add_option("image", render_in, "input image CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    eri::set_thread_count(threads);
    eri::RunConfig cfg = eri::load_run_config(config_path);
    if (simulate->parsed()) return cmd_simulate(cfg, out_path);
    if (corrupt->parsed())
      return cmd_corrupt(corrupt_in, corrupt_delta, corrupt_seed, out_path);
    if (image->parsed()) return cmd_image(cfg, image_in, out_path, ridge_path);
    if (verify->parsed())
      return cmd_verify(cfg, verify_suite, verify_aperture, verify_tol, out_path);
    if (render->parsed()) return cmd_render(render_in, out_path);
    std::cerr << "error: no subcommand\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const eri::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}
