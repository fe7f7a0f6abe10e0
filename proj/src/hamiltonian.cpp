#include "surfvort/hamiltonian.hpp"

#include <cmath>

namespace surfvort {

Functional energy_functional(const PoissonSolver& solver) {
  const PoissonSolver* s = &solver;
  Functional F;
  F.name = "energy";
  F.value = [s](const ScalarField& w) { return 0.5 * surface_integral(s->solve(w) * w, s->cache()); };
  F.derivative = [s](const ScalarField& w) { return s->solve(w) * s->cache().inv_J; };
  return F;
}

Functional enstrophy_functional(std::shared_ptr<const GeometryCache> cache) {
  Functional F;
  F.name = "enstrophy";
  F.value = [cache](const ScalarField& w) { return 0.5 * surface_integral(w * w, *cache); };
  F.derivative = [cache](const ScalarField& w) { return w * cache->inv_J; };
  return F;
}

Functional casimir_functional(std::shared_ptr<const GeometryCache> cache, std::function<double(double)> f,
                              std::function<double(double)> fprime, std::string name) {
  Functional F;
  F.name = std::move(name);
  F.value = [cache, f](const ScalarField& w) { return surface_integral(map(w, f, Parity::even), *cache); };
  F.derivative = [cache, fprime](const ScalarField& w) { return map(w, fprime, Parity::even) * cache->inv_J; };
  return F;
}

Functional linear_functional(std::shared_ptr<const GeometryCache> cache, ScalarField a, std::string name) {
  Functional F;
  F.name = std::move(name);
  F.value = [cache, a](const ScalarField& w) { return integrate(a * w); };
  F.derivative = [a](const ScalarField&) { return a; };
  return F;
}

Functional quadratic_functional(std::shared_ptr<const GeometryCache> cache, ScalarField k, std::string name) {
  Functional F;
  F.name = std::move(name);
  F.value = [cache, k](const ScalarField& w) { return 0.5 * surface_integral(k * w * w, *cache); };
  F.derivative = [cache, k](const ScalarField& w) { return k * w * cache->inv_J; };
  return F;
}

BracketOp nodewise_bracket() { return [](const ScalarField& a, const ScalarField& b) { return plain_bracket(a, b); }; }

double poisson_bracket(const Functional& F, const Functional& G, const ScalarField& omega, const GeometryCache& c,
                       const BracketOp& br) {
  return integrate(omega * br(c.J * F.derivative(omega), c.J * G.derivative(omega)));
}

ScalarField cosymplectic(const ScalarField& omega, const ScalarField& g, const GeometryCache& c,
                         const BracketOp& br) {
  return -(c.J * br(omega, c.J * g));
}

double hamiltonian_rhs_check(const Dynamics& dyn, const SimState& s) {
  const GeometryCache& c = dyn.cache();
  SimConfig cfg = dyn.config();
  cfg.rhs = RhsKind::inviscid;
  cfg.sigma = 0.0;
  Dynamics inviscid(dyn.cache_ptr(), cfg);
  ScalarField rhs = inviscid.rhs(s);
  ScalarField dH = s.psi * c.inv_J;
  BracketOp br = [&inviscid](const ScalarField& a, const ScalarField& b) { return inviscid.bracket(a, b); };
  ScalarField coef = cfg.advection == AdvectionConvention::euclidean_J ? c.J : c.inv_sqrt_gamma;
  ScalarField jh = -(coef * br(s.omega, c.J * dH));
  if (inviscid.projector()) jh = inviscid.projector()->project(jh);
  double scale = rhs.max_abs();
  double diff = max_abs_diff(jh, rhs);
  return scale > 0.0 ? diff / scale : diff;
}

double anti_self_adjointness(const ScalarField& omega, const ScalarField& f, const ScalarField& g,
                             const GeometryCache& c, const BracketOp& br) {
  double a = integrate(f * cosymplectic(omega, g, c, br));
  double b = integrate(g * cosymplectic(omega, f, c, br));
  double s = std::abs(a) + std::abs(b);
  return s > 0.0 ? std::abs(a + b) / s : 0.0;
}

namespace {

ScalarField second_variation(const Functional& F, const ScalarField& omega, const ScalarField& v) {
  double vmax = v.max_abs();
  if (vmax == 0.0) return ScalarField(omega.grid(), 0.0, F.derivative(omega).parity());
  double h = 1e-6 * (1.0 + omega.max_abs()) / vmax;
  ScalarField p = omega, m = omega;
  p.axpy(h, v);
  m.axpy(-h, v);
  return (1.0 / (2.0 * h)) * (F.derivative(p) - F.derivative(m));
}

}  // namespace

ScalarField bracket_gradient(const Functional& G, const Functional& H, const ScalarField& omega,
                             const GeometryCache& c, const BracketOp& br) {
  // d/deps int w [J G', J H'] = int v [J G', J H'] + int (G'' v) J [J H', w] + int (H'' v) J [w, J G']
  ScalarField JG = c.J * G.derivative(omega), JH = c.J * H.derivative(omega);
  ScalarField grad = br(JG, JH);
  grad += second_variation(G, omega, c.J * br(JH, omega));
  grad += second_variation(H, omega, c.J * br(omega, JG));
  return grad;
}

JacobiResult jacobi_residual(const Functional& F, const Functional& G, const Functional& H, const ScalarField& omega,
                             const GeometryCache& c, const BracketOp& br) {
  auto outer = [&](const Functional& A, const Functional& B, const Functional& C) {
    ScalarField JA = c.J * A.derivative(omega);
    ScalarField JK = c.J * bracket_gradient(B, C, omega, c, br);
    return integrate(omega * br(JA, JK));
  };
  JacobiResult r;
  r.terms[0] = outer(F, G, H);
  r.terms[1] = outer(G, H, F);
  r.terms[2] = outer(H, F, G);
  r.residual = std::abs(r.terms[0] + r.terms[1] + r.terms[2]);
  r.scale = std::abs(r.terms[0]) + std::abs(r.terms[1]) + std::abs(r.terms[2]);
  return r;
}

}  // namespace surfvort
