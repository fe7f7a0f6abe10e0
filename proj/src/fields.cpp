#include "surfvort/fields.hpp"

#include <cmath>
#include <random>

namespace surfvort {

double real_spherical_harmonic(int l, int m, double theta, double phi) {
  int am = std::abs(m);
  double p = std::sph_legendre(l, am, theta);
  return m >= 0 ? p * std::cos(am * phi) : p * std::sin(am * phi);
}

ScalarField spherical_harmonic(GridPtr grid, int l, int m) {
  return ScalarField::sample(grid, [l, m](double th, double ph) { return real_spherical_harmonic(l, m, th, ph); });
}

ScalarField random_band_limited(GridPtr grid, const RandomFieldSpec& spec) {
  const int K = spec.max_mode > 0 ? spec.max_mode : grid->n_nu() / 4;
  const double k0 = spec.decay > 0.0 ? spec.decay : std::max(1.0, K / 4.0);
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ScalarField f(grid, 0.0);
  const GridSpec& gs = grid->spec();
  if (grid->has_pole()) {
    for (int l = 1; l <= K; ++l) {
      double env = std::exp(-(l * l) / (k0 * k0));
      for (int m = -l; m <= l; ++m) {
        double a = env * normal(rng);
        for (int i = 0; i < grid->n_mu(); ++i) {
          double p = std::sph_legendre(l, std::abs(m), grid->mu(i));
          for (int j = 0; j < grid->n_nu(); ++j) {
            double ph = grid->nu(j);
            f(i, j) += a * p * (m >= 0 ? std::cos(m * ph) : std::sin(-m * ph));
          }
        }
      }
    }
  } else {
    const double Lm = gs.mu_max - gs.mu_min, Ln = gs.nu_max - gs.nu_min;
    for (int km = 0; km <= K; ++km)
      for (int kn = -K; kn <= K; ++kn) {
        if (km == 0 && kn <= 0) continue;
        double env = std::exp(-(km * km + kn * kn) / (k0 * k0));
        double a = env * normal(rng), b = env * normal(rng);
        for (int i = 0; i < grid->n_mu(); ++i)
          for (int j = 0; j < grid->n_nu(); ++j) {
            double arg = 2.0 * M_PI * (km * (grid->mu(i) - gs.mu_min) / Lm + kn * (grid->nu(j) - gs.nu_min) / Ln);
            f(i, j) += a * std::cos(arg) + b * std::sin(arg);
          }
      }
  }
  double mx = f.max_abs();
  if (mx > 0.0) f *= spec.amplitude / mx;
  return f;
}

}  // namespace surfvort
