// Scenario file: INI sections [chart] [grid] [physics] [run] [initial] [output].
//
//   [chart]   name = sphere | torus | torus_phiz | flat, R, r0, T, Lx, Ly, branch = outer | inner
//   [grid]    n_mu, n_nu, scheme = spectral | fd4
//   [physics] sigma, rho, rhs = inviscid | curvature_viscous | sphere_classic,
//             advection = euclidean_J | riemannian_sqrtg, truncation
//   [run]     dt, n_steps, diagnostics_every, snapshot_times = t1, t2, ..., casimir_power
//   [initial] type = random | sphere_equilibrium | modes | zero | file,
//             seed, amplitude, max_mode, decay, B0, A1, B1,
//             modes = "a b amp; ..." (l m on pole grids, wave numbers otherwise), file
//   [output]  dir
//
// Every key is optional; defaults are the member initializers below.
#pragma once

#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "surfvort/cache.hpp"
#include "surfvort/dynamics.hpp"

namespace surfvort {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ChartSpec {
  std::string name = "sphere";
  double R = 1.0;
  double r0 = 2.0;
  double T = 0.5;
  double Lx = 1.0, Ly = 1.0;
  std::string branch = "outer";

  Chart make() const;
  double zeta() const;
};

struct GridConfig {
  int n_mu = 32, n_nu = 64;
  DiffScheme scheme = DiffScheme::spectral;
};

struct ModeTerm {
  int a = 0, b = 0;
  double amplitude = 0.0;
};

struct InitialSpec {
  std::string type = "random";
  std::uint64_t seed = 1;
  double amplitude = 1.0;
  int max_mode = 0;
  double decay = 0.0;
  double B0 = 1.0, A1 = 0.0, B1 = 0.0;
  std::vector<ModeTerm> modes;
  std::string file;
};

struct ScenarioConfig {
  ChartSpec chart;
  GridConfig grid;
  SimConfig sim;
  InitialSpec initial;
  std::string output_dir = "out";

  void validate() const;  // throws ConfigError
};

ScenarioConfig parse_config(std::istream& is);
ScenarioConfig load_config(const std::string& path);
void write_config(std::ostream& os, const ScenarioConfig& cfg);

std::shared_ptr<const GeometryCache> make_cache(const ScenarioConfig& cfg);
ScalarField initial_vorticity(const ScenarioConfig& cfg, const GeometryCache& cache);

std::string to_string(RhsKind k);
std::string to_string(AdvectionConvention a);

}  // namespace surfvort
