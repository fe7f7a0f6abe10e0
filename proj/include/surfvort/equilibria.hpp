// Diffusive equilibria: Helmholtz modes on the sphere and the poloidal
// Fourier recurrence on the axisymmetric torus.
#pragma once

#include <array>
#include <vector>

#include "surfvort/cache.hpp"
#include "surfvort/poisson.hpp"
#include "surfvort/riemannian_diffusion.hpp"

namespace surfvort {

struct SphereModes {
  double B0 = 0.0, A1 = 0.0, B1 = 0.0;
};

struct SphereEquilibrium {
  SphereModes modes;
  double R = 1.0;
  ScalarField omega, psi;
  TangentField u;       // closed-form flow, contravariant
  double des_residual;  // max |Delta_S omega + 2 omega| / max(1, max |omega|)
};

// omega = B0 cos(theta) - sin(theta)(A1 sin(phi) + B1 cos(phi)), psi = R^2 omega / 2.
SphereEquilibrium sphere_equilibrium(const SphereModes& modes, const GeometryCache& sphere);

// b with u = b x x on the sphere, least squares over the nodes in the
// orthonormal frame. residual is the max pointwise misfit.
struct RotationFit {
  std::array<double, 3> b{};
  double residual = 0.0;
};
RotationFit fit_rigid_rotation(const TangentField& u, const GeometryCache& sphere);

struct HelmholtzOptions {
  double shift = -2.05;
  int block = 6;
  int max_iter = 60;
  double tol = 1e-10;  // |Delta x + 2 x| / |x| in the area L2 norm, every kept Ritz vector
  unsigned seed = 7;
};

struct HelmholtzEigenspace {
  int dimension = 0;
  std::vector<ScalarField> basis;  // orthonormal under dmu dnu / J
  std::vector<double> rayleigh;
  int iterations = 0;
};

// Eigenvectors of the discrete Delta_S at eigenvalue -2 (unit sphere cache).
HelmholtzEigenspace sphere_helmholtz_eigenspace(std::shared_ptr<const GeometryCache> sphere,
                                                const HelmholtzOptions& opts = {});

// Largest principal angle between span(basis) and span(targets), dmu dnu / J inner product.
double subspace_angle(const std::vector<ScalarField>& basis, const std::vector<ScalarField>& targets,
                      const GeometryCache& c);

enum class TorusClass { trivial_only, bounded_candidate };

struct TorusRecurrence {
  double alpha = 0.0;
  int m = 0;
  double c2 = 0.0, cm2 = 0.0;
  int K = 0;
  std::vector<double> c;  // c[k + K], |k| <= K
  TorusClass classification = TorusClass::bounded_candidate;
  double growth_ratio = 0.0;  // min |c_{k+1}/c_k| over the last K/2 terms, worst seed
  bool overflow = false;
  double coeff(int k) const { return c[k + K]; }
};

constexpr double kGrowthRatioMin = 1.5;

// -2 alpha k^2 c_k + c_{k-1}(2 + k - k^2) + c_{k+1}(2 - k - k^2) = 0 propagated
// outward from c_{+-2}. m does not enter at this order in 1/alpha.
TorusRecurrence torus_recurrence(double alpha, double c2, double cm2, int K, int m = 0);

// Q(theta_j) = sum_k c_k exp(i k theta_j) on n uniform nodes (real part).
std::vector<double> torus_q_from_coefficients(const TorusRecurrence& r, int n);

// max |(alpha + cos)Q'' - sin Q' - (m^2/(alpha + cos) - 2 cos)Q| with
// spectral derivatives of uniform periodic samples Q(2 pi (j + offset) / n).
double torus_ode_residual(const std::vector<double>& Q, int m, double alpha, double offset = 0.0);

// omS1 mode m (0 or 1) carried to the poloidal angle through
// sin^2(vartheta) = (1 + 2 alpha cos(vartheta) + alpha^2) cos^2(theta), then
// the ODE residual at that alpha. Zero only in the spherical limit alpha = 0.
double sphere_limit_residual(int m, double alpha, int n);

}  // namespace surfvort
