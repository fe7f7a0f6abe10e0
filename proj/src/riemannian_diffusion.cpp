#include "surfvort/riemannian_diffusion.hpp"

#include <algorithm>
#include <cmath>

#include "surfvort/operators.hpp"

namespace surfvort {

namespace {

void check_nodes(const TangentField& u, const GeometryCache& c) {
  if (u.mu.grid() != c.grid || u.nu.grid() != c.grid) throw std::invalid_argument("tangent field on a different grid");
  double floor = std::sqrt(c.chart.det_floor());
  for (int k = 0; k < c.sqrt_gamma.size(); ++k)
    if (!(std::abs(c.sqrt_gamma[k]) > floor)) throw SingularPointError("degenerate induced metric at node " + std::to_string(k));
}

const ScalarField& comp(const TangentField& u, int i) { return i == 0 ? u.mu : u.nu; }

const ScalarField& gcov(const GeometryCache& c, int i, int j) {
  if (i != j) return c.g_mn;
  return i == 0 ? c.g_mm : c.g_nn;
}
const ScalarField& gcon(const GeometryCache& c, int i, int j) {
  if (i != j) return c.gi_mn;
  return i == 0 ? c.gi_mm : c.gi_nn;
}

ScalarField laplace_beltrami(const ScalarField& f, const GeometryCache& c) {
  ScalarField fm, fn;
  gradient(f, fm, fn);
  ScalarField fluxm = c.sqrt_gamma * (c.gi_mm * fm + c.gi_mn * fn);
  ScalarField fluxn = c.sqrt_gamma * (c.gi_mn * fm + c.gi_nn * fn);
  return (d_mu(fluxm) + d_nu(fluxn)) * c.inv_sqrt_gamma;
}

// Derivatives act on the covariant components only: on pole grids u^nu is
// singular like cot(theta) while u_mu, u_nu are smooth across the pole.
void covariant_gradient(const TangentField& ul, const GeometryCache& c, ScalarField D[2][2]) {
  ScalarField d[2][2];  // d[j][i] = d_i u_j
  gradient(ul.mu, d[0][0], d[0][1]);
  gradient(ul.nu, d[1][0], d[1][1]);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) D[i][j] = d[j][i] - c.christoffel[0][i][j] * ul.mu - c.christoffel[1][i][j] * ul.nu;
}

}  // namespace

TangentField velocity_from_stream(const ScalarField& psi, const GeometryCache& c) {
  ScalarField pm, pn;
  gradient(psi, pm, pn);
  return {c.inv_sqrt_gamma * pn, -(c.inv_sqrt_gamma * pm)};
}

ScalarField divergence(const TangentField& u, const GeometryCache& c) {
  return (d_mu(c.sqrt_gamma * u.mu) + d_nu(c.sqrt_gamma * u.nu)) * c.inv_sqrt_gamma;
}

TangentField lower(const TangentField& u, const GeometryCache& c) {
  return {c.g_mm * u.mu + c.g_mn * u.nu, c.g_mn * u.mu + c.g_nn * u.nu};
}

TangentField raise(const TangentField& cov, const GeometryCache& c) {
  return {c.gi_mm * cov.mu + c.gi_mn * cov.nu, c.gi_mn * cov.mu + c.gi_nn * cov.nu};
}

SymmetricTensor strain_tensor(const TangentField& u, const GeometryCache& c) {
  check_nodes(u, c);
  ScalarField D[2][2];
  covariant_gradient(lower(u, c), c, D);
  SymmetricTensor K;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) K.c[i][j] = D[i][j] + D[j][i];
  return K;
}

double dissipation_functional(const TangentField& u, const GeometryCache& c) {
  SymmetricTensor K = strain_tensor(u, c);
  ScalarField q(c.grid, 0.0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) q = q + K.c[i][j] * gcon(c, i, k) * gcon(c, j, l) * K.c[k][l];
  return 0.25 * integrate(q * c.sqrt_gamma);
}

TangentField killing_diffusion_operator(const TangentField& u, const GeometryCache& c) {
  check_nodes(u, c);
  TangentField ul = lower(u, c);
  ScalarField D[2][2];
  covariant_gradient(ul, c, D);
  ScalarField du[2][2];  // du[l][k] = d_k u^l = gamma^{la} D_ka - Gamma^l_kp u^p
  for (int l = 0; l < 2; ++l)
    for (int k = 0; k < 2; ++k)
      du[l][k] = gcon(c, l, 0) * D[k][0] + gcon(c, l, 1) * D[k][1] - c.christoffel[l][k][0] * u.mu -
                 c.christoffel[l][k][1] * u.nu;
  ScalarField res[2];
  for (int m = 0; m < 2; ++m) {
    // dU/du^m = -Lap u_m - (2 R_lm - chi_lm) u^l + 2 d_k u^l g^ik Gamma_lim
    ScalarField n = -laplace_beltrami(comp(ul, m), c);
    for (int l = 0; l < 2; ++l) n = n - (2.0 * c.ricci_tensor[l][m] - c.chi[l][m]) * comp(u, l);
    for (int l = 0; l < 2; ++l)
      for (int i = 0; i < 2; ++i) {
        ScalarField G1 = gcov(c, l, 0) * c.christoffel[0][i][m] + gcov(c, l, 1) * c.christoffel[1][i][m];
        ScalarField s = du[l][0] * gcon(c, i, 0) + du[l][1] * gcon(c, i, 1);
        n = n + 2.0 * s * G1;
      }
    res[m] = -n;
  }
  return raise({res[0], res[1]}, c);
}

TangentField sphere_projected_laplacian(const TangentField& u, const GeometryCache& c) {
  if (c.chart.kind() != ChartKind::sphere || std::abs(c.radius() - 1.0) > 1e-12)
    throw ChartError("sphere_projected_laplacian needs the unit sphere");
  check_nodes(u, c);
  TangentField ul = lower(u, c);
  ScalarField cot = ScalarField::sample(c.grid, [](double th, double) { return std::cos(th) / std::sin(th); }, Parity::odd);
  ScalarField tm, tn, pm;
  gradient(ul.mu, tm, tn);
  pm = d_mu(ul.nu);
  ScalarField bt = sphere_laplace_beltrami(ul.mu) + 2.0 * ul.mu + ul.mu * (cot * cot - ScalarField(c.grid, 1.0)) + 2.0 * cot * tm;
  ScalarField bp = sphere_laplace_beltrami(ul.nu) + 2.0 * ul.nu + 2.0 * cot * (tn - pm);
  return raise({bt, bp}, c);
}

double tangent_inner(const TangentField& a, const TangentField& b, const GeometryCache& c) {
  TangentField bl = lower(b, c);
  return integrate((a.mu * bl.mu + a.nu * bl.nu) * c.sqrt_gamma);
}

double max_abs(const TangentField& u) { return std::max(u.mu.max_abs(), u.nu.max_abs()); }

double max_norm(const TangentField& u, const GeometryCache& c) {
  TangentField ul = lower(u, c);
  ScalarField q = u.mu * ul.mu + u.nu * ul.nu;
  double m = 0.0;
  for (int k = 0; k < q.size(); ++k) m = std::max(m, std::sqrt(std::max(0.0, q[k])));
  return m;
}

}  // namespace surfvort
