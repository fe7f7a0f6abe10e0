// Analytic and seeded random grid functions.
#pragma once

#include <cstdint>

#include "surfvort/grid.hpp"

namespace surfvort {

// Real spherical harmonic: normalized P_l^|m|(cos theta) times cos(m phi) (m >= 0) or sin(|m| phi).
double real_spherical_harmonic(int l, int m, double theta, double phi);
ScalarField spherical_harmonic(GridPtr grid, int l, int m);

struct RandomFieldSpec {
  std::uint64_t seed = 1;
  int max_mode = 0;      // 0: N_nu / 4
  double decay = 0.0;    // e-folding mode number of the amplitude envelope; 0: max_mode / 4
  double amplitude = 1.0;  // max |field| after scaling
};

// Band-limited random field with zero mean in the plain grid sense
// (spherical harmonics l >= 1 on pole grids, Fourier modes k != 0 otherwise).
ScalarField random_band_limited(GridPtr grid, const RandomFieldSpec& spec);

}  // namespace surfvort
