// Killing-field based diffusion of tangent vector fields on the induced
// surface metric: strain tensor, dissipation functional and its variation.
#pragma once

#include "surfvort/cache.hpp"

namespace surfvort {

// Contravariant components (u^mu, u^nu).
struct TangentField {
  ScalarField mu, nu;
};

struct SymmetricTensor {
  ScalarField c[2][2];
};

// u = (1/sqrt|gamma|)(psi_nu d_mu - psi_mu d_nu)
TangentField velocity_from_stream(const ScalarField& psi, const GeometryCache& c);
ScalarField divergence(const TangentField& u, const GeometryCache& c);
// Covariant components gamma_mk u^k and the inverse.
TangentField lower(const TangentField& u, const GeometryCache& c);
TangentField raise(const TangentField& cov, const GeometryCache& c);

SymmetricTensor strain_tensor(const TangentField& u, const GeometryCache& c);
double dissipation_functional(const TangentField& u, const GeometryCache& c);

// -dU/du with the index raised by gamma^{mp}.
TangentField killing_diffusion_operator(const TangentField& u, const GeometryCache& c);

// The projected Laplacian on the unit sphere, component formula as displayed
// in the sphere consistency check. Returned contravariant.
TangentField sphere_projected_laplacian(const TangentField& u, const GeometryCache& c);

// <a, b> = int gamma_ij a^i b^j sqrt|gamma| dmu dnu
double tangent_inner(const TangentField& a, const TangentField& b, const GeometryCache& c);
double max_abs(const TangentField& u);
// max over nodes of sqrt(gamma_ij u^i u^j)
double max_norm(const TangentField& u, const GeometryCache& c);

}  // namespace surfvort
