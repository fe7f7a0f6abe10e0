// Batch front end: simulate | equilibrium | geometry | check.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "surfvort/checks.hpp"
#include "surfvort/config.hpp"
#include "surfvort/equilibria.hpp"
#include "surfvort/snapshot.hpp"

using namespace surfvort;
namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ofstream open_out(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  return f;
}

int simulate(const std::string& config_path, const std::string& out_override) {
  ScenarioConfig cfg = load_config(config_path);
  if (!out_override.empty()) cfg.output_dir = out_override;
  fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  {
    auto f = open_out(dir / "config.ini");
    write_config(f, cfg);
  }
  auto cache = make_cache(cfg);
  Dynamics dyn(cache, cfg.sim);
  SimState s0 = dyn.make_state(initial_vorticity(cfg, *cache));
  auto diag = open_out(dir / "diagnostics.csv");
  int n_snap = 0;
  RunSinks sinks;
  sinks.diagnostics = &diag;
  sinks.snapshot = [&](const SimState& s) {
    char name[64];
    std::snprintf(name, sizeof name, "snapshot_%03d.csv", n_snap++);
    write_snapshot((dir / name).string(), s.omega, cfg.chart.name, cfg.chart.zeta(), s.t);
  };
  SimState end = run(dyn, s0, sinks);
  std::printf("simulate: %d steps to t = %.6g, %d snapshots, output in %s\n", cfg.sim.n_steps, end.t, n_snap,
              dir.string().c_str());
  return 0;
}

int equilibrium_sphere(const SphereModes& m, double R, int n_mu, int n_nu, const std::string& out) {
  if (!(R > 0)) throw UsageError("--R must be positive");
  auto chart = sphere_chart();
  auto c = std::make_shared<const GeometryCache>(Grid::for_chart(chart, n_mu, n_nu), chart, R);
  SphereEquilibrium e = sphere_equilibrium(m, *c);
  RotationFit fit = fit_rigid_rotation(e.u, *c);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out.empty()) {
    file = open_out(out);
    os = &file;
  }
  *os << "i,j,theta,phi,omega,psi,u_theta,u_phi\n";
  char buf[256];
  for (int i = 0; i < c->grid->n_mu(); ++i)
    for (int j = 0; j < c->grid->n_nu(); ++j) {
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", i, j, c->grid->mu(i), c->grid->nu(j),
                    e.omega(i, j), e.psi(i, j), e.u.mu(i, j), e.u.nu(i, j));
      *os << buf;
    }
  std::fprintf(stderr, "sphere equilibrium: Helmholtz residual %.3e, rotation b = (%.6g, %.6g, %.6g), fit residual %.3e\n",
               e.des_residual, fit.b[0], fit.b[1], fit.b[2], fit.residual);
  return 0;
}

int equilibrium_torus(double alpha, double c2, double cm2, int K, int m, const std::string& out) {
  TorusRecurrence r;
  try {
    r = torus_recurrence(alpha, c2, cm2, K, m);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out.empty()) {
    file = open_out(out);
    os = &file;
  }
  *os << "k,c_k\n";
  char buf[96];
  for (int k = -K; k <= K; ++k) {
    std::snprintf(buf, sizeof buf, "%d,%.17g\n", k, r.coeff(k));
    *os << buf;
  }
  std::fprintf(stderr, "torus recurrence: alpha %.6g, classification %s, growth ratio %.6g%s\n", alpha,
               r.classification == TorusClass::trivial_only ? "trivial-only" : "bounded-candidate", r.growth_ratio,
               r.overflow ? " (overflow guard hit)" : "");
  return 0;
}

int geometry(const ChartSpec& spec, int n_mu, int n_nu, const std::string& out) {
  ScenarioConfig cfg;
  cfg.chart = spec;
  cfg.grid.n_mu = n_mu;
  cfg.grid.n_nu = n_nu;
  cfg.initial.type = "zero";
  cfg.validate();
  auto c = make_cache(cfg);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out.empty()) {
    file = open_out(out);
    os = &file;
  }
  const auto& sym = c->chart.symbols();
  *os << "i,j," << sym[0] << "," << sym[1] << ",ricci,J,gzz\n";
  char buf[256];
  for (int i = 0; i < c->grid->n_mu(); ++i)
    for (int j = 0; j < c->grid->n_nu(); ++j) {
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", i, j, c->grid->mu(i), c->grid->nu(j),
                    c->ricci(i, j), c->J(i, j), c->gzz(i, j));
      *os << buf;
    }
  return 0;
}

int check(const std::string& suite) {
  auto results = run_checks(suite);
  print_check_table(std::cout, results);
  int failed = 0;
  for (auto& r : results) failed += !r.passed;
  std::printf("%zu checks, %d failed\n", results.size(), failed);
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vorticity dynamics on curved surfaces"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  auto* sim = app.add_subcommand("simulate", "run a scenario file");
  sim->add_option("config", config_path, "scenario file (INI)")->required();
  sim->add_option("--out", out_dir, "override [output] dir");

  auto* eq = app.add_subcommand("equilibrium", "closed-form diffusive equilibria");
  eq->require_subcommand(1);
  SphereModes modes;
  double R = 1.0;
  int n_mu = 32, n_nu = 64;
  std::string out;
  auto* eqs = eq->add_subcommand("sphere", "omega, psi, u on the sphere");
  eqs->add_option("--B0", modes.B0)->capture_default_str();
  eqs->add_option("--A1", modes.A1)->capture_default_str();
  eqs->add_option("--B1", modes.B1)->capture_default_str();
  eqs->add_option("--R", R)->capture_default_str();
  eqs->add_option("--n-mu", n_mu)->capture_default_str();
  eqs->add_option("--n-nu", n_nu)->capture_default_str();
  eqs->add_option("--out", out, "CSV path (stdout if omitted)");
  double alpha = 2.0, c2 = 1.0, cm2 = 0.0;
  int K = 12, m = 0;
  auto* eqt = eq->add_subcommand("torus", "poloidal Fourier recurrence");
  eqt->add_option("--alpha", alpha)->capture_default_str();
  eqt->add_option("--c2", c2)->capture_default_str();
  eqt->add_option("--cm2", cm2, "seed c_{-2}")->capture_default_str();
  eqt->add_option("--K", K)->capture_default_str();
  eqt->add_option("--m", m)->capture_default_str();
  eqt->add_option("--out", out, "CSV path (stdout if omitted)");

  ChartSpec chart;
  auto* geo = app.add_subcommand("geometry", "dump Ricci scalar, J and g^zz on the grid");
  geo->add_option("--chart", chart.name)->capture_default_str();
  geo->add_option("--R", chart.R)->capture_default_str();
  geo->add_option("--r0", chart.r0)->capture_default_str();
  geo->add_option("--T", chart.T)->capture_default_str();
  geo->add_option("--branch", chart.branch)->capture_default_str();
  geo->add_option("--n-mu", n_mu)->capture_default_str();
  geo->add_option("--n-nu", n_nu)->capture_default_str();
  geo->add_option("--out", out, "CSV path (stdout if omitted)");

  std::string suite = "all";
  auto* chk = app.add_subcommand("check", "invariant suites");
  chk->add_option("suite", suite, "grid | operators | hamiltonian | killing-diffusion | all")
      ->check(CLI::IsMember(check_suites()))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sim) return simulate(config_path, out_dir);
    if (*eqs) return equilibrium_sphere(modes, R, n_mu, n_nu, out);
    if (*eqt) return equilibrium_torus(alpha, c2, cm2, K, m, out);
    if (*geo) return geometry(chart, n_mu, n_nu, out);
    if (*chk) return check(suite);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
