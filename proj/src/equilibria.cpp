#include "surfvort/equilibria.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "surfvort/operators.hpp"
#include "surfvort/poisson.hpp"

namespace surfvort {

namespace {

void require_sphere(const GeometryCache& c) {
  if (c.chart.kind() != ChartKind::sphere) throw ChartError("sphere cache required, got " + c.chart.name());
}

double area_inner(const ScalarField& a, const ScalarField& b, const GeometryCache& c) {
  return surface_integral(a * b, c);
}

// Modified Gram-Schmidt, twice.
void orthonormalize(std::vector<ScalarField>& v, const GeometryCache& c) {
  for (int pass = 0; pass < 2; ++pass)
    for (size_t i = 0; i < v.size(); ++i) {
      for (size_t j = 0; j < i; ++j) v[i].axpy(-area_inner(v[i], v[j], c), v[j]);
      v[i] *= 1.0 / std::sqrt(area_inner(v[i], v[i], c));
    }
}

}  // namespace

SphereEquilibrium sphere_equilibrium(const SphereModes& m, const GeometryCache& c) {
  require_sphere(c);
  SphereEquilibrium e;
  e.modes = m;
  e.R = c.radius();
  e.omega = ScalarField::sample(c.grid, [&](double th, double ph) {
    return m.B0 * std::cos(th) - std::sin(th) * (m.A1 * std::sin(ph) + m.B1 * std::cos(ph));
  });
  e.psi = (0.5 * e.R * e.R) * e.omega;
  e.u.mu = ScalarField::sample(c.grid, [&](double, double ph) { return 0.5 * (m.B1 * std::sin(ph) - m.A1 * std::cos(ph)); },
                               Parity::odd);
  e.u.nu = ScalarField::sample(c.grid, [&](double th, double ph) {
    return 0.5 * (m.B0 + std::cos(th) / std::sin(th) * (m.A1 * std::sin(ph) + m.B1 * std::cos(ph)));
  });
  ScalarField r = sphere_laplace_beltrami(e.omega) + 2.0 * e.omega;
  e.des_residual = r.max_abs() / std::max(1.0, e.omega.max_abs());
  return e;
}

RotationFit fit_rigid_rotation(const TangentField& u, const GeometryCache& c) {
  require_sphere(c);
  // orthonormal frame: u_theta_hat = u^theta, u_phi_hat = sin(theta) u^phi
  //   b x x: (b_y cos - b_x sin, b_z sin(theta) - cos(theta)(b_x cos + b_y sin))
  const GridPtr& g = c.grid;
  const int n = g->n_mu() * g->n_nu();
  Eigen::MatrixXd A(2 * n, 3);
  Eigen::VectorXd y(2 * n);
  for (int i = 0; i < g->n_mu(); ++i)
    for (int j = 0; j < g->n_nu(); ++j) {
      int k = i * g->n_nu() + j;
      double th = g->mu(i), ph = g->nu(j);
      A.row(2 * k) << -std::sin(ph), std::cos(ph), 0.0;
      A.row(2 * k + 1) << -std::cos(th) * std::cos(ph), -std::cos(th) * std::sin(ph), std::sin(th);
      y(2 * k) = u.mu(i, j);
      y(2 * k + 1) = std::sin(th) * u.nu(i, j);
    }
  Eigen::Vector3d b = A.colPivHouseholderQr().solve(y);
  RotationFit f;
  f.b = {b(0), b(1), b(2)};
  f.residual = (A * b - y).cwiseAbs().maxCoeff();
  return f;
}

HelmholtzEigenspace sphere_helmholtz_eigenspace(std::shared_ptr<const GeometryCache> c, const HelmholtzOptions& o) {
  require_sphere(*c);
  const double R = c->radius();
  if (std::abs(R - 1.0) > 1e-12) throw ChartError("Helmholtz eigenspace is computed on the unit sphere");
  // near the shift the operator has condition ~ |L| / 0.05, so the solver's
  // own residual check sits at a few 1e-8 on 64 x 128
  PoissonOptions popts;
  popts.modal_check_tol = 1e-6;
  PoissonSolver inv(c, popts, o.shift);
  std::mt19937_64 rng(o.seed);
  std::normal_distribution<double> nd;
  std::vector<ScalarField> V;
  for (int b = 0; b < o.block; ++b) {
    ScalarField v(c->grid, 0.0);
    for (int k = 0; k < v.size(); ++k) v[k] = nd(rng);
    V.push_back(remove_nyquist(v));
  }
  orthonormalize(V, *c);
  const int p = o.block;
  HelmholtzEigenspace out;
  for (int it = 1; it <= o.max_iter; ++it) {
    // Nyquist rows carry spurious copies of the l = 1 modes (the first
    // derivative annihilates them), so iterate in their complement
    for (auto& v : V) v = remove_nyquist(inv.apply_inverse(v));
    orthonormalize(V, *c);
    // Rayleigh-Ritz with the discrete operator
    std::vector<ScalarField> LV;
    for (auto& v : V) LV.push_back(normal_laplacian(v, *c));
    Eigen::MatrixXd H(p, p);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) H(i, j) = area_inner(V[i], LV[j], *c);
    // the discrete pole operator is not exactly symmetric: use the general Ritz pairs
    Eigen::EigenSolver<Eigen::MatrixXd> es(H);
    std::vector<ScalarField> basis;
    std::vector<double> ray;
    double worst = 0.0;
    for (int e = 0; e < p; ++e) {
      std::complex<double> lam = es.eigenvalues()(e);
      if (std::abs(lam + 2.0) > 0.5) continue;
      Eigen::VectorXd y = es.eigenvectors().col(e).real();
      ScalarField x(c->grid, 0.0), Lx(c->grid, 0.0);
      for (int i = 0; i < p; ++i) {
        x.axpy(y(i), V[i]);
        Lx.axpy(y(i), LV[i]);
      }
      ScalarField r = Lx + 2.0 * x;
      // area L2: max-norm residuals at the near-pole nodes sit at ||L|| eps ~ 1e-8 for 64 x 128
      worst = std::max(worst, std::sqrt(area_inner(r, r, *c) / area_inner(x, x, *c)));
      basis.push_back(x);
      ray.push_back(area_inner(x, Lx, *c) / area_inner(x, x, *c));
    }
    if (!basis.empty() && worst <= o.tol) {
      orthonormalize(basis, *c);
      out.dimension = static_cast<int>(basis.size());
      out.basis = std::move(basis);
      out.rayleigh = std::move(ray);
      out.iterations = it;
      return out;
    }
    if (it == o.max_iter) throw ConvergenceError("Helmholtz inverse iteration did not converge", worst, it);
  }
  return out;
}

double subspace_angle(const std::vector<ScalarField>& basis, const std::vector<ScalarField>& targets,
                      const GeometryCache& c) {
  std::vector<ScalarField> A = basis, B = targets;
  orthonormalize(A, c);
  orthonormalize(B, c);
  Eigen::MatrixXd M(A.size(), B.size());
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < B.size(); ++j) M(i, j) = area_inner(A[i], B[j], c);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  double smin = A.size() == B.size() ? svd.singularValues().minCoeff() : 0.0;
  return std::acos(std::clamp(smin, -1.0, 1.0));
}

TorusRecurrence torus_recurrence(double alpha, double c2, double cm2, int K, int m) {
  if (!(alpha > 0.0)) throw std::invalid_argument("torus_recurrence needs alpha > 0");
  if (K < 6) throw std::invalid_argument("torus_recurrence needs K >= 6");
  auto propagate = [&](double s2, double sm2, std::vector<double>& c, bool& overflow) {
    c.assign(2 * K + 1, 0.0);
    auto at = [&](int k) -> double& { return c[k + K]; };
    at(2) = s2;
    at(-2) = sm2;
    overflow = false;
    for (int k = 2; k < K; ++k) {
      // c_{k+1}(2 - k - k^2) = 2 alpha k^2 c_k - c_{k-1}(2 + k - k^2)
      at(k + 1) = (2.0 * alpha * k * k * at(k) - at(k - 1) * (2.0 + k - k * k)) / (2.0 - k - k * k);
      if (!std::isfinite(at(k + 1)) || std::abs(at(k + 1)) > 1e250) {
        overflow = true;
        break;
      }
    }
    for (int k = -2; k > -K; --k) {
      at(k - 1) = (2.0 * alpha * k * k * at(k) - at(k + 1) * (2.0 - k - k * k)) / (2.0 + k - k * k);
      if (!std::isfinite(at(k - 1)) || std::abs(at(k - 1)) > 1e250) {
        overflow = true;
        break;
      }
    }
  };
  auto min_ratio = [&](const std::vector<double>& c, int sign) {
    double r = std::numeric_limits<double>::infinity();
    for (int j = K - K / 2; j < K; ++j) {
      double a = c[sign * j + K], b = c[sign * (j + 1) + K];
      if (a == 0.0) return 0.0;
      r = std::min(r, std::abs(b / a));
    }
    return r;
  };

  TorusRecurrence out;
  out.alpha = alpha;
  out.m = m;
  out.c2 = c2;
  out.cm2 = cm2;
  out.K = K;
  bool ov = false;
  propagate(c2, cm2, out.c, ov);
  out.overflow = ov;
  // classification from unit seeds on each side: any nonzero seed feeds one of them
  std::vector<double> up, down;
  bool o1 = false, o2 = false;
  propagate(1.0, 0.0, up, o1);
  propagate(0.0, 1.0, down, o2);
  double ru = o1 ? std::numeric_limits<double>::infinity() : min_ratio(up, 1);
  double rd = o2 ? std::numeric_limits<double>::infinity() : min_ratio(down, -1);
  out.growth_ratio = std::min(ru, rd);
  out.classification = out.growth_ratio >= kGrowthRatioMin ? TorusClass::trivial_only : TorusClass::bounded_candidate;
  return out;
}

std::vector<double> torus_q_from_coefficients(const TorusRecurrence& r, int n) {
  std::vector<double> q(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double th = 2.0 * M_PI * j / n;
    for (int k = -r.K; k <= r.K; ++k) q[j] += r.coeff(k) * std::cos(k * th);
  }
  return q;
}

double torus_ode_residual(const std::vector<double>& Q, int m, double alpha, double offset) {
  const int n = static_cast<int>(Q.size());
  if (n < 4 || n % 2) throw std::invalid_argument("torus_ode_residual needs an even number of samples");
  const int nc = n / 2 + 1;
  std::vector<double> in(Q), d1(n), d2(n);
  std::vector<std::complex<double>> spec(nc), w(nc);
  auto cast = [](std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); };
  fftw_plan fwd = fftw_plan_dft_r2c_1d(n, in.data(), cast(spec.data()), FFTW_ESTIMATE);
  fftw_plan bwd = fftw_plan_dft_c2r_1d(n, cast(w.data()), d1.data(), FFTW_ESTIMATE);
  fftw_execute(fwd);
  const std::complex<double> I(0.0, 1.0);
  for (int k = 0; k < nc; ++k) w[k] = (2 * k == n ? 0.0 : 1.0) * I * double(k) * spec[k] / double(n);
  fftw_execute_dft_c2r(bwd, cast(w.data()), d1.data());
  for (int k = 0; k < nc; ++k) w[k] = -double(k) * double(k) * spec[k] / double(n);
  fftw_execute_dft_c2r(bwd, cast(w.data()), d2.data());
  fftw_destroy_plan(fwd);
  fftw_destroy_plan(bwd);
  double r = 0.0;
  for (int j = 0; j < n; ++j) {
    double th = 2.0 * M_PI * (j + offset) / n, a = alpha + std::cos(th);
    double res = a * d2[j] - std::sin(th) * d1[j] - (m * m / a - 2.0 * std::cos(th)) * Q[j];
    r = std::max(r, std::abs(res));
  }
  return r;
}

double sphere_limit_residual(int m, double alpha, int n) {
  if (m != 0 && m != 1) throw std::invalid_argument("sphere_limit_residual: m must be 0 or 1");
  std::vector<double> Q(n);
  for (int j = 0; j < n; ++j) {
    // half-offset nodes keep cos(vartheta) away from zero at alpha = 0
    double th = 2.0 * M_PI * (j + 0.5) / n;
    double cos_theta = std::sin(th) / std::sqrt(1.0 + 2.0 * alpha * std::cos(th) + alpha * alpha);
    double sin_theta = (std::cos(th) + alpha) / std::sqrt(1.0 + 2.0 * alpha * std::cos(th) + alpha * alpha);
    Q[j] = m == 0 ? cos_theta : sin_theta;
  }
  return torus_ode_residual(Q, m, alpha, 0.5);
}

}  // namespace surfvort
