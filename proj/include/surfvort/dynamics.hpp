// Time integration of the surface vorticity equation.
#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <vector>

#include "surfvort/poisson.hpp"
#include "surfvort/sht.hpp"

namespace surfvort {

enum class RhsKind { inviscid, curvature_viscous, sphere_classic };
enum class AdvectionConvention { euclidean_J, riemannian_sqrtg };

struct SimConfig {
  double sigma = 0.0;  // dynamic viscosity
  double rho = 1.0;    // surface density; rho_0 for sphere_classic
  double dt = 1e-3;
  int n_steps = 0;
  RhsKind rhs = RhsKind::inviscid;
  AdvectionConvention advection = AdvectionConvention::euclidean_J;
  int diagnostics_every = 1;
  std::vector<double> snapshot_times;
  int casimir_power = 1;  // casimir column is the integral of omega^p / J
  // Pole grids only: degree of the spherical-harmonic Galerkin truncation
  // applied to the vorticity and the right-hand side; -1 picks (N_mu - 1) / 3,
  // 0 keeps the 2/3-rule bracket instead.
  int sphere_truncation = -1;

  void validate() const;
};

struct SimState {
  double t = 0.0;
  ScalarField omega;
  ScalarField psi;  // zero-mean stream function of omega
};

struct DiagnosticsRecord {
  double t = 0.0, H = 0.0, W = 0.0, casimir = 0.0, omega_min = 0.0, omega_max = 0.0;
};

double energy(const SimState& s, const GeometryCache& c);
double enstrophy(const SimState& s, const GeometryCache& c);
double casimir(const SimState& s, const GeometryCache& c, const std::function<double(double)>& f);

class Dynamics {
 public:
  Dynamics(std::shared_ptr<const GeometryCache> cache, SimConfig config, PoissonOptions popts = {});

  const SimConfig& config() const { return config_; }
  const GeometryCache& cache() const { return *cache_; }
  std::shared_ptr<const GeometryCache> cache_ptr() const { return cache_; }
  const PoissonSolver& poisson() const { return poisson_; }
  // Harmonic truncation in use, or nullptr.
  const SphericalProjector* projector() const { return projector_.get(); }

  // Projects omega onto the truncated space (if any) and solves for Psi.
  SimState make_state(ScalarField omega, double t = 0.0) const;
  ScalarField rhs(const SimState& s) const;
  ScalarField rhs(const ScalarField& omega, const ScalarField& psi) const;
  // The coordinate bracket used by the advection term: nodewise under the
  // harmonic truncation, 2/3-rule dealiased otherwise.
  ScalarField bracket(const ScalarField& a, const ScalarField& b) const;
  // Advection term A [Psi, omega] alone.
  ScalarField advection(const ScalarField& omega, const ScalarField& psi) const;
  SimState step_rk4(const SimState& s) const;
  DiagnosticsRecord diagnostics(const SimState& s) const;

 private:
  void add_viscous(ScalarField& r, const ScalarField& omega) const;

  std::shared_ptr<const GeometryCache> cache_;
  SimConfig config_;
  PoissonSolver poisson_;
  ScalarField adv_coef_;
  ScalarField inv_sin_;  // sphere_classic only
  double radius_ = 0.0;
  std::shared_ptr<const SphericalProjector> projector_;
};

void write_diagnostics_header(std::ostream& os);
void write_diagnostics_row(std::ostream& os, const DiagnosticsRecord& r);

struct RunSinks {
  std::ostream* diagnostics = nullptr;  // CSV, header written by run
  std::function<void(const SimState&)> snapshot;
  std::vector<DiagnosticsRecord>* series = nullptr;
};

// Steps config.n_steps times, recording diagnostics every diagnostics_every
// steps (and at step 0) and snapshots at the first step reaching each
// configured time. Solver failures are rethrown after the sinks are flushed.
SimState run(const Dynamics& dyn, SimState state, const RunSinks& sinks);

}  // namespace surfvort
