#include "surfvort/operators.hpp"

#include <cmath>

namespace surfvort {

namespace {

void check_grid(const ScalarField& f, const GeometryCache& c) {
  if (f.grid() != c.grid) throw std::invalid_argument("field and geometry cache use different grids");
}

// J { d_mu (cmm f_mu + cmn f_nu) + d_nu (cmn f_mu + cnn f_nu) }
ScalarField flux_divergence(const ScalarField& f, const ScalarField& cmm, const ScalarField& cmn,
                            const ScalarField& cnn, const ScalarField& J) {
  ScalarField fm, fn;
  gradient(f, fm, fn);
  return J * (d_mu(cmm * fm + cmn * fn) + d_nu(cmn * fm + cnn * fn));
}

}  // namespace

ScalarField normal_laplacian(const ScalarField& psi, const GeometryCache& c) {
  check_grid(psi, c);
  return flux_divergence(psi, c.a_mm, c.a_mn, c.a_nn, c.J);
}

ScalarField sphere_laplace_beltrami(const ScalarField& f) {
  const GridPtr& g = f.grid();
  if (!g->has_pole()) throw ChartError("sphere_laplace_beltrami needs a sphere grid");
  ScalarField s = ScalarField::sample(g, [](double th, double) { return std::sin(th); }, Parity::odd);
  ScalarField fm, fn;
  gradient(f, fm, fn);
  return d_mu(s * fm) / s + d_nu(fn) / (s * s);
}

ScalarField curvature_diffusion(const ScalarField& omega, const GeometryCache& c) {
  check_grid(omega, c);
  ScalarField w = omega / c.sqrt_gzz;
  ScalarField wm, wn;
  gradient(w, wm, wn);
  ScalarField cross = c.gi_mm * c.dgzz_mu * wm + c.gi_mn * (c.dgzz_mu * wn + c.dgzz_nu * wm) +
                      c.gi_nn * c.dgzz_nu * wn;
  return (normal_laplacian(w, c) - cross) / c.gzz + c.ricci * w;
}

ScalarField curvature_diffusion_flux_form(const ScalarField& omega, const GeometryCache& c) {
  check_grid(omega, c);
  ScalarField w = omega / c.sqrt_gzz;
  ScalarField invJ = c.inv_J;
  return flux_divergence(w, c.gi_mm * invJ, c.gi_mn * invJ, c.gi_nn * invJ, c.J) + c.ricci * w;
}

double tangential_gradient_energy(const ScalarField& w, const GeometryCache& c) {
  check_grid(w, c);
  ScalarField wm, wn;
  gradient(w, wm, wn);
  ScalarField q = c.gi_mm * wm * wm + 2.0 * (c.gi_mn * wm * wn) + c.gi_nn * wn * wn;
  return 0.5 * integrate(q * c.inv_J);
}

double curvature_dissipation_functional(const ScalarField& omega, const GeometryCache& c) {
  ScalarField w = omega / c.sqrt_gzz;
  return tangential_gradient_energy(w, c) - 0.5 * integrate(c.ricci * w * w * c.inv_J);
}

ScalarField restricted_operator_D(const ScalarField& psi, const ZetaProfile& h, const GeometryCache& c) {
  check_grid(psi, c);
  if (!c.chart.orthogonal())
    throw ChartError("restricted_laplacian_diffusion needs an orthogonal chart (" + c.chart.name() + ")");
  // A = a0 h with zeta derivatives from the cached jets
  auto second = [&](const std::array<ScalarField, 3>& a0) {
    return a0[2] * h.h + 2.0 * (a0[1] * h.dh) + a0[0] * h.d2h;
  };
  auto first = [&](const std::array<ScalarField, 3>& a0) { return a0[1] * h.h + a0[0] * h.dh; };
  const auto& B = c.J_over_gmm;
  const auto& Bt = c.J_over_gnn;
  ScalarField coef_mu = Bt[0] * (B[1] * first(c.Jg_nn) + B[0] * second(c.Jg_nn));
  ScalarField coef_nu = B[0] * (Bt[1] * first(c.Jg_mm) + Bt[0] * second(c.Jg_mm));
  ScalarField pm, pn;
  gradient(psi, pm, pn);
  return c.J * (d_mu(coef_mu * pm) + d_nu(coef_nu * pn));
}

ScalarField restricted_laplacian_diffusion(const ScalarField& psi, const ZetaProfile& h,
                                           const GeometryCache& c) {
  ScalarField D = restricted_operator_D(psi, h, c);
  ScalarField omega = -h.h * normal_laplacian(psi, c);
  return normal_laplacian(omega / c.gzz, c) - D;
}

}  // namespace surfvort
