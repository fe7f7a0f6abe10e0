#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "surfvort/hamiltonian.hpp"

using namespace surfvort;
using namespace surfvort::testing;

namespace {

double X(double th, double ph) { return std::sin(th) * std::cos(ph); }
double Y(double th, double ph) { return std::sin(th) * std::sin(ph); }
double Z(double th, double) { return std::cos(th); }

struct SphereSetup {
  std::shared_ptr<const GeometryCache> c;
  std::unique_ptr<SphericalProjector> P;
  ScalarField omega;
  explicit SphereSetup(int n, int degree = 10) {
    c = make_cache(sphere_chart(), n, 2 * n, 1.2);
    P = std::make_unique<SphericalProjector>(c->grid, degree);
    omega = P->project(random_band_limited(c->grid, {31, degree, 4, 1.0}));
  }
};

}  // namespace

TEST_CASE("functional derivatives match directional differences") {
  SphereSetup s(32);
  PoissonSolver solver(s.c);
  ScalarField v = s.P->project(random_band_limited(s.c->grid, {32, 8, 4, 1.0}));
  std::vector<Functional> fs{energy_functional(solver), enstrophy_functional(s.c),
                             casimir_functional(s.c, [](double w) { return w * w * w; }, [](double w) { return 3 * w * w; }),
                             linear_functional(s.c, ScalarField::sample(s.c->grid, [](double t, double p) { return X(t, p); }) * s.c->inv_J),
                             quadratic_functional(s.c, ScalarField::sample(s.c->grid, [](double t, double p) { return 1 + Z(t, p) * Z(t, p); }))};
  for (auto& F : fs) {
    CAPTURE(F.name);
    const double h = 1e-5;
    ScalarField p = s.omega, m = s.omega;
    p.axpy(h, v);
    m.axpy(-h, v);
    double fd = (F.value(p) - F.value(m)) / (2 * h);
    double an = integrate(F.derivative(s.omega) * v);
    CHECK(fd == doctest::Approx(an).epsilon(1e-7));
  }
}

TEST_CASE("bracket antisymmetry") {
  SphereSetup s(32);
  PoissonSolver solver(s.c);
  auto H = energy_functional(solver);
  auto W = enstrophy_functional(s.c);
  auto Q = quadratic_functional(s.c, ScalarField::sample(s.c->grid, [](double t, double p) { return std::exp(Y(t, p)); }));
  CHECK(poisson_bracket(H, H, s.omega, *s.c) == 0.0);
  CHECK(poisson_bracket(Q, Q, s.omega, *s.c) == 0.0);
  double a = poisson_bracket(H, Q, s.omega, *s.c), b = poisson_bracket(Q, H, s.omega, *s.c);
  CHECK(std::abs(a + b) <= 1e-14 * std::abs(a));
  CHECK(std::abs(a) > 1e-6);
  (void)W;
}

TEST_CASE("casimirs commute with the energy") {
  SphereSetup s(64, 12);
  PoissonSolver solver(s.c);
  auto H = energy_functional(solver);
  double scale = std::abs(H.value(s.omega)) * s.omega.max_abs();
  for (int p : {1, 2, 3}) {
    auto C = casimir_functional(s.c, [p](double w) { return std::pow(w, p); },
                                [p](double w) { return p * std::pow(w, p - 1); });
    CHECK(std::abs(poisson_bracket(C, H, s.omega, *s.c)) <= 1e-10 * scale);
  }
}

TEST_CASE("linear functionals against a closed form") {
  auto c = make_cache(flat_chart(), 32, 32, 0.0);
  auto a = ScalarField::sample(c->grid, [](double x, double) { return std::sin(2 * M_PI * x); });
  auto b = ScalarField::sample(c->grid, [](double, double y) { return std::cos(2 * M_PI * y); });
  auto w = ScalarField::sample(c->grid, [](double x, double y) { return std::sin(2 * M_PI * y) * std::cos(2 * M_PI * x); });
  // [a, b] = -4 pi^2 cos(2 pi x) sin(2 pi y)
  double got = poisson_bracket(linear_functional(c, a), linear_functional(c, b), w, *c);
  CHECK(got == doctest::Approx(-M_PI * M_PI).epsilon(1e-12));
}

TEST_CASE("hamiltonian right-hand side") {
  auto c = make_cache(sphere_chart(), 32, 64, 1.0);
  for (auto conv : {AdvectionConvention::euclidean_J, AdvectionConvention::riemannian_sqrtg}) {
    SimConfig cfg;
    cfg.advection = conv;
    Dynamics d(c, cfg);
    SimState s = d.make_state(random_band_limited(c->grid, {77, 12, 4, 2.0}));
    CHECK(hamiltonian_rhs_check(d, s) <= 1e-10);
    SimState k = d.make_state(ScalarField(c->grid, 0.0));
    CHECK(d.rhs(k).max_abs() == 0.0);
    CHECK(hamiltonian_rhs_check(d, k) == 0.0);
  }
  SimConfig cfg;
  cfg.sphere_truncation = 0;
  Dynamics d(c, cfg);
  SimState s = d.make_state(random_band_limited(c->grid, {78, 12, 4, 2.0}));
  CHECK(hamiltonian_rhs_check(d, s) <= 1e-10);
}

TEST_CASE("cosymplectic operator is anti-self-adjoint") {
  SphereSetup s(32);
  ScalarField f = s.P->project(random_band_limited(s.c->grid, {5, 10, 4, 1.0})) * s.c->inv_J;
  ScalarField g = s.P->project(random_band_limited(s.c->grid, {6, 10, 4, 1.0})) * s.c->inv_J;
  CHECK(anti_self_adjointness(s.omega, f, g, *s.c) <= 1e-10);
}

TEST_CASE("Jacobi identity") {
  SphereSetup s(32);
  auto kern = [&](std::function<double(double, double)> k) { return ScalarField::sample(s.c->grid, k); };
  auto F = quadratic_functional(s.c, kern([](double t, double p) { return 1 + 0.3 * X(t, p); }));
  auto G = quadratic_functional(s.c, kern([](double t, double p) { return std::exp(0.4 * Z(t, p)); }));

  SUBCASE("repeated functional") {
    JacobiResult r = jacobi_residual(F, G, G, s.omega, *s.c);
    CHECK(r.residual <= 1e-9 * r.scale);
  }
  SUBCASE("linear functionals") {
    auto lin = [&](std::function<double(double, double)> k) {
      return linear_functional(s.c, ScalarField::sample(s.c->grid, k) * s.c->inv_J);
    };
    JacobiResult r = jacobi_residual(lin([](double t, double p) { return X(t, p); }),
                                     lin([](double t, double p) { return Y(t, p) * Z(t, p); }),
                                     lin([](double t, double) { return std::cos(2 * t); }), s.omega, *s.c);
    CHECK(r.residual <= 1e-12);
  }
  SUBCASE("quadratic functionals converge at the stencil order") {
    std::vector<double> res;
    for (int n : {32, 64, 128}) {
      auto c = make_cache(sphere_chart(), n, 2 * n, 1.0, DiffScheme::fd4);
      auto k = [&](std::function<double(double, double)> f) { return quadratic_functional(c, ScalarField::sample(c->grid, f)); };
      auto w = ScalarField::sample(c->grid, [](double t, double p) { return std::sin(X(t, p) + 0.5 * Z(t, p)) + 0.3 * Y(t, p) * Y(t, p); });
      JacobiResult r = jacobi_residual(k([](double t, double p) { return 1 + 0.3 * X(t, p); }),
                                       k([](double t, double p) { return std::exp(0.4 * Z(t, p)); }),
                                       k([](double t, double p) { return 1 / (2 + Y(t, p) * Z(t, p)); }), w, *c);
      res.push_back(r.residual);
    }
    double p1 = std::log2(res[0] / res[1]), p2 = std::log2(res[1] / res[2]);
    CHECK(p1 > 3.5);
    CHECK(p2 > 3.5);
  }
}
