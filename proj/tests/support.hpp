// Shared fixtures for the unit tests.
#pragma once

#include <cmath>
#include <memory>

#include "surfvort/cache.hpp"
#include "surfvort/fields.hpp"

namespace surfvort::testing {

// Prolate spheroidal (eta, phi, xi) with focal half-distance a; the surface xi = xi0 is a spheroid.
inline Chart prolate_chart(double a = 1.0) {
  ChartDomain d;
  d.mu_min = 0.0;
  d.mu_max = M_PI;
  d.nu_min = 0.0;
  d.nu_max = 2.0 * M_PI;
  d.pole = PoleRule::sphere_offset;
  return Chart::user(
      "prolate", {"eta", "phi", "xi"}, d, true,
      [a](const Point& p) {
        double s = std::sinh(p[2]), e = std::sin(p[0]);
        double q = a * a * (s * s + e * e);
        Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
        g(0, 0) = q;
        g(1, 1) = a * a * s * s * e * e;
        g(2, 2) = q;
        return g;
      },
      1e-5, 1);
}

// Flat doubly periodic chart with sheared coordinates X = mu + s nu, Y = nu.
inline Chart sheared_chart(double s) {
  ChartDomain d;
  return Chart::user(
      "sheared", {"mu", "nu", "z"}, d, false,
      [s](const Point&) {
        Eigen::Matrix3d g = Eigen::Matrix3d::Identity();
        g(0, 1) = g(1, 0) = s;
        g(1, 1) = 1.0 + s * s;
        return g;
      },
      1e-5, 0);
}

inline std::shared_ptr<const GeometryCache> make_cache(const Chart& chart, int n_mu, int n_nu, double zeta,
                                                       DiffScheme scheme = DiffScheme::spectral) {
  return std::make_shared<const GeometryCache>(Grid::for_chart(chart, n_mu, n_nu, scheme), chart, zeta);
}

inline double rel_diff(const ScalarField& a, const ScalarField& b) {
  return max_abs_diff(a, b) / std::max(1e-300, b.max_abs());
}

}  // namespace surfvort::testing
