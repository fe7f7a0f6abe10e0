// Per-node samples of the chart metric on the surface zeta = zeta0.
#pragma once

#include <array>

#include "surfvort/geometry.hpp"
#include "surfvort/grid.hpp"

namespace surfvort {

struct GeometryCache {
  GeometryCache(GridPtr grid, Chart chart, double zeta);

  GridPtr grid;
  Chart chart;
  double zeta;

  ScalarField J, inv_J;
  ScalarField g_mm, g_nn, g_mn;  // covariant, also the induced metric gamma_ab
  ScalarField gzz, sqrt_gzz;     // g^{zeta zeta}
  ScalarField dgzz_mu, dgzz_nu;  // tangential derivatives of g^{zeta zeta}
  ScalarField ricci;             // Ricci scalar of the induced metric
  // Flux-form coefficients of the normal Laplacian.
  ScalarField a_mm, a_mn, a_nn;
  ScalarField gi_mm, gi_mn, gi_nn;  // gamma^{ab}
  ScalarField sqrt_gamma, inv_sqrt_gamma;
  ScalarField christoffel[2][2][2];  // Gamma^k_ij of gamma
  ScalarField ricci_tensor[2][2];
  ScalarField chi[2][2];
  // value, d/dzeta, d^2/dzeta^2 of J g_nunu, J g_mumu, J/g^mumu, J/g^nunu
  std::array<ScalarField, 3> Jg_nn, Jg_mm, J_over_gmm, J_over_gnn;

  double radius() const;  // sphere charts only
};

// sum f / J over the grid against d mu d nu
double surface_integral(const ScalarField& f, const GeometryCache& cache);
double surface_mean(const ScalarField& f, const GeometryCache& cache);

}  // namespace surfvort
