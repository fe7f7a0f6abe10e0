#include "surfvort/cache.hpp"

namespace surfvort {

namespace {
// Parity of a quantity with n_mu lower/upper mu indices and n_j Jacobian-like factors.
Parity par(int n_mu, int n_j = 0) { return (n_mu + n_j) % 2 ? Parity::odd : Parity::even; }
}  // namespace

GeometryCache::GeometryCache(GridPtr g, Chart c, double z) : grid(std::move(g)), chart(std::move(c)), zeta(z) {
  auto mk = [&](Parity p) { return ScalarField(grid, 0.0, p); };
  J = mk(par(0, 1));
  inv_J = mk(par(0, 1));
  g_mm = mk(par(2));
  g_nn = mk(par(0));
  g_mn = mk(par(1));
  gzz = mk(par(0));
  sqrt_gzz = mk(par(0));
  dgzz_mu = mk(par(1));
  dgzz_nu = mk(par(0));
  ricci = mk(par(0));
  a_mm = mk(par(0, 1));
  a_nn = mk(par(0, 1));
  a_mn = mk(par(1, 1));
  gi_mm = mk(par(2));
  gi_nn = mk(par(0));
  gi_mn = mk(par(1));
  sqrt_gamma = mk(par(0, 1));
  inv_sqrt_gamma = mk(par(0, 1));
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) christoffel[k][i][j] = mk(par((k == 0) + (i == 0) + (j == 0)));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      ricci_tensor[i][j] = mk(par((i == 0) + (j == 0)));
      chi[i][j] = mk(par((i == 0) + (j == 0)));
    }
  for (int d = 0; d < 3; ++d) {
    Jg_nn[d] = mk(par(0, 1));
    Jg_mm[d] = mk(par(0, 1));
    J_over_gmm[d] = mk(par(0, 1));
    J_over_gnn[d] = mk(par(0, 1));
  }
  for (int i = 0; i < grid->n_mu(); ++i)
    for (int j = 0; j < grid->n_nu(); ++j) {
      SurfacePoint sp = surface_point(chart, {grid->mu(i), grid->nu(j), zeta});
      const MetricSample& m = sp.metric;
      J(i, j) = m.J;
      inv_J(i, j) = 1.0 / m.J;
      g_mm(i, j) = m.g(0, 0);
      g_nn(i, j) = m.g(1, 1);
      g_mn(i, j) = m.g(0, 1);
      gzz(i, j) = m.gzz;
      sqrt_gzz(i, j) = std::sqrt(m.gzz);
      dgzz_mu(i, j) = sp.dgzz[0];
      dgzz_nu(i, j) = sp.dgzz[1];
      ricci(i, j) = sp.curv.ricci_scalar;
      a_mm(i, j) = m.J * m.g(1, 1);
      a_nn(i, j) = m.J * m.g(0, 0);
      a_mn(i, j) = -m.J * m.g(0, 1);
      gi_mm(i, j) = sp.gamma_inv[0][0];
      gi_nn(i, j) = sp.gamma_inv[1][1];
      gi_mn(i, j) = sp.gamma_inv[0][1];
      sqrt_gamma(i, j) = sp.sqrt_gamma;
      inv_sqrt_gamma(i, j) = 1.0 / sp.sqrt_gamma;
      for (int k = 0; k < 2; ++k)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) christoffel[k][a][b](i, j) = sp.curv.christoffel2[k][a][b];
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          ricci_tensor[a][b](i, j) = sp.curv.ricci_tensor[a][b];
          chi[a][b](i, j) = sp.curv.chi_tensor[a][b];
        }
      for (int d = 0; d < 3; ++d) {
        Jg_nn[d](i, j) = sp.Jg_nn[d];
        Jg_mm[d](i, j) = sp.Jg_mm[d];
        J_over_gmm[d](i, j) = sp.J_over_gmm[d];
        J_over_gnn[d](i, j) = sp.J_over_gnn[d];
      }
    }
}

double GeometryCache::radius() const {
  if (chart.kind() != ChartKind::sphere) throw ChartError("radius requested on non-sphere chart " + chart.name());
  return zeta;
}

double surface_integral(const ScalarField& f, const GeometryCache& cache) {
  return integrate(f * cache.inv_J);
}

double surface_mean(const ScalarField& f, const GeometryCache& cache) {
  return surface_integral(f, cache) / integrate(cache.inv_J);
}

}  // namespace surfvort
