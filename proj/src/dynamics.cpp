#include "surfvort/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "surfvort/operators.hpp"

namespace surfvort {

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be non-negative");
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (n_steps < 0) throw std::invalid_argument("n_steps must be non-negative");
  if (diagnostics_every < 1) throw std::invalid_argument("diagnostics cadence must be at least 1");
}

double energy(const SimState& s, const GeometryCache& c) { return 0.5 * surface_integral(s.psi * s.omega, c); }

double enstrophy(const SimState& s, const GeometryCache& c) {
  return 0.5 * surface_integral(s.omega * s.omega, c);
}

double casimir(const SimState& s, const GeometryCache& c, const std::function<double(double)>& f) {
  return surface_integral(map(s.omega, f, Parity::even), c);
}

Dynamics::Dynamics(std::shared_ptr<const GeometryCache> cache, SimConfig config, PoissonOptions popts)
    : cache_(cache), config_(std::move(config)), poisson_(cache, popts) {
  config_.validate();
  adv_coef_ = config_.advection == AdvectionConvention::euclidean_J ? cache_->J : cache_->inv_sqrt_gamma;
  if (cache_->grid->has_pole() && config_.sphere_truncation != 0) {
    int L = config_.sphere_truncation > 0 ? config_.sphere_truncation
                                          : SphericalProjector::default_degree(*cache_->grid);
    projector_ = std::make_shared<const SphericalProjector>(cache_->grid, L);
  }
  if (config_.rhs == RhsKind::sphere_classic) {
    if (cache_->chart.kind() != ChartKind::sphere)
      throw ChartError("sphere_classic right-hand side needs the sphere chart, got " + cache_->chart.name());
    radius_ = cache_->radius();
    inv_sin_ = ScalarField::sample(cache_->grid, [](double th, double) { return 1.0 / std::sin(th); }, Parity::odd);
  }
}

SimState Dynamics::make_state(ScalarField omega, double t) const {
  SimState s;
  s.t = t;
  if (projector_) omega = projector_->project(omega);
  s.psi = poisson_.solve(omega);
  s.omega = std::move(omega);
  return s;
}

ScalarField Dynamics::bracket(const ScalarField& a, const ScalarField& b) const {
  // with the harmonic truncation the bracket is formed nodewise and the right-hand side projected afterwards
  return projector_ ? plain_bracket(a, b) : surfvort::bracket(a, b);
}

ScalarField Dynamics::advection(const ScalarField& omega, const ScalarField& psi) const {
  if (config_.rhs == RhsKind::sphere_classic) return inv_sin_ * bracket((1.0 / (radius_ * radius_)) * psi, omega);
  return adv_coef_ * bracket(psi, omega);
}

ScalarField Dynamics::rhs(const ScalarField& omega, const ScalarField& psi) const {
  ScalarField r = advection(omega, psi);
  if (config_.sigma != 0.0) add_viscous(r, omega);
  return projector_ ? projector_->project(r) : r;
}

void Dynamics::add_viscous(ScalarField& r, const ScalarField& omega) const {
  const double nu = config_.sigma / config_.rho;
  switch (config_.rhs) {
    case RhsKind::inviscid:
      break;
    case RhsKind::curvature_viscous:
      r.axpy(nu, curvature_diffusion(omega, *cache_));
      break;
    case RhsKind::sphere_classic:
      // d/dt (-Delta_S xi) with omega = -Delta_S xi
      r.axpy(nu, sphere_laplace_beltrami(omega) + 2.0 * omega);
      break;
  }
}

ScalarField Dynamics::rhs(const SimState& s) const { return rhs(s.omega, s.psi); }

SimState Dynamics::step_rk4(const SimState& s) const {
  const double dt = config_.dt;
  ScalarField k1 = rhs(s);
  ScalarField w = s.omega;
  w.axpy(0.5 * dt, k1);
  ScalarField k2 = rhs(w, poisson_.solve(w));
  w = s.omega;
  w.axpy(0.5 * dt, k2);
  ScalarField k3 = rhs(w, poisson_.solve(w));
  w = s.omega;
  w.axpy(dt, k3);
  ScalarField k4 = rhs(w, poisson_.solve(w));
  ScalarField next = s.omega;
  next.axpy(dt / 6.0, k1);
  next.axpy(dt / 3.0, k2);
  next.axpy(dt / 3.0, k3);
  next.axpy(dt / 6.0, k4);
  return make_state(std::move(next), s.t + dt);
}

DiagnosticsRecord Dynamics::diagnostics(const SimState& s) const {
  DiagnosticsRecord r;
  r.t = s.t;
  r.H = energy(s, *cache_);
  r.W = enstrophy(s, *cache_);
  const int p = config_.casimir_power;
  r.casimir = casimir(s, *cache_, [p](double w) { return std::pow(w, p); });
  r.omega_min = s.omega.min();
  r.omega_max = s.omega.max();
  return r;
}

void write_diagnostics_header(std::ostream& os) { os << "t,H,W,casimir,omega_min,omega_max\n"; }

void write_diagnostics_row(std::ostream& os, const DiagnosticsRecord& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.H, r.W, r.casimir, r.omega_min,
                r.omega_max);
  os << buf;
}

SimState run(const Dynamics& dyn, SimState state, const RunSinks& sinks) {
  const SimConfig& cfg = dyn.config();
  std::vector<double> pending = cfg.snapshot_times;
  std::sort(pending.begin(), pending.end());
  size_t next_snap = 0;
  auto record = [&]() {
    DiagnosticsRecord r = dyn.diagnostics(state);
    if (sinks.diagnostics) write_diagnostics_row(*sinks.diagnostics, r);
    if (sinks.series) sinks.series->push_back(r);
  };
  auto snapshots = [&]() {
    while (next_snap < pending.size() && state.t >= pending[next_snap] - 0.5 * cfg.dt) {
      if (sinks.snapshot) sinks.snapshot(state);
      ++next_snap;
    }
  };
  if (sinks.diagnostics) write_diagnostics_header(*sinks.diagnostics);
  record();
  snapshots();
  try {
    for (int n = 1; n <= cfg.n_steps; ++n) {
      state = dyn.step_rk4(state);
      if (!state.omega.all_finite()) throw std::runtime_error("non-finite vorticity at t = " + std::to_string(state.t));
      if (n % cfg.diagnostics_every == 0 || n == cfg.n_steps) record();
      snapshots();
    }
  } catch (...) {
    if (sinks.diagnostics) sinks.diagnostics->flush();
    throw;
  }
  if (sinks.diagnostics) sinks.diagnostics->flush();
  return state;
}

}  // namespace surfvort
