// Spherical-harmonic truncation on pole grids.
#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include "surfvort/grid.hpp"

namespace surfvort {

// Orthogonal projection onto spherical harmonics of degree <= L under
// sin(theta) dtheta dphi, with coefficients from the grid quadrature. The
// quadrature is exact for the projection of products of three fields of
// degree <= L when 3L < N_mu, which makes a projected bracket conserve the
// quadratic invariants exactly.
class SphericalProjector {
 public:
  SphericalProjector(GridPtr grid, int degree);
  static int default_degree(const Grid& g) { return std::max(1, (g.n_mu() - 1) / 3); }

  int degree() const { return L_; }
  ScalarField project(const ScalarField& f) const;
  // Complex coefficients c_lm (m >= 0) of an even field, index [m][l - m].
  std::vector<std::vector<std::complex<double>>> analyze(const ScalarField& f) const;

 private:
  GridPtr grid_;
  int L_;
  std::vector<double> q_;                     // quadrature weight times sin(theta) per row
  std::vector<std::vector<double>> legendre_;  // [m][(l - m) * n_mu + i]
  std::vector<double> cos_, sin_;             // [m * n_nu + j]
};

}  // namespace surfvort
