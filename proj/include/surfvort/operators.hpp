// Surface operators on the cached metric: normal Laplacian, curvature
// diffusion, sphere Laplace-Beltrami, restricted-Laplacian diffusion.
#pragma once

#include "surfvort/cache.hpp"

namespace surfvort {

// Delta_perp_zeta Psi = J{d_mu[J(g_nn Psi_mu - g_mn Psi_nu)] + d_nu[J(g_mm Psi_nu - g_mn Psi_mu)]}
ScalarField normal_laplacian(const ScalarField& psi, const GeometryCache& c);

// Delta_S on the unit sphere in (theta, phi), written independently of the cache metric.
ScalarField sphere_laplace_beltrami(const ScalarField& f);

// (1/g^zz)[Delta_perp w - gamma^ab d_a g^zz d_b w] + R omega / sqrt(g^zz), w = omega / sqrt(g^zz)
ScalarField curvature_diffusion(const ScalarField& omega, const GeometryCache& c);
// Same operator as the divergence of the tangential gradient, J d_a(gamma^ab d_b w / J) + R w.
ScalarField curvature_diffusion_flux_form(const ScalarField& omega, const GeometryCache& c);

// 1/2 int gamma^ab w_a w_b dmu dnu / J
double tangential_gradient_energy(const ScalarField& w, const GeometryCache& c);
// 1/2 int [|grad_perp w|^2 - R w^2] dmu dnu / J with w = omega / sqrt(g^zz)
double curvature_dissipation_functional(const ScalarField& omega, const GeometryCache& c);

// Zeta profile of the separable stream function Psi = h(zeta) psi(mu, nu) at the cached surface.
struct ZetaProfile {
  double h = 1.0, dh = 0.0, d2h = 0.0;
};

// The fourth-order operator D Psi of the orthogonal-chart decomposition.
ScalarField restricted_operator_D(const ScalarField& psi, const ZetaProfile& h, const GeometryCache& c);
// -D Psi + Delta_perp(omega / g^zz) with omega = -h Delta_perp psi.
ScalarField restricted_laplacian_diffusion(const ScalarField& psi, const ZetaProfile& h,
                                           const GeometryCache& c);

}  // namespace surfvort
