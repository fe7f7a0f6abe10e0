#include <doctest.h>

#include <cmath>
#include <sstream>

#include "surfvort/grid.hpp"
#include "surfvort/snapshot.hpp"

using namespace surfvort;

namespace {

GridPtr flat_grid(int n, DiffScheme s = DiffScheme::spectral) {
  return Grid::for_chart(flat_chart(), n, n, s);
}

GridPtr sphere_grid(int nmu, DiffScheme s = DiffScheme::spectral) {
  return Grid::for_chart(sphere_chart(), nmu, 2 * nmu, s);
}

// smooth regular functions on the unit sphere (even under the pole reflection)
double sph_f(double th, double ph) {
  double x = std::sin(th) * std::cos(ph), y = std::sin(th) * std::sin(ph), z = std::cos(th);
  return std::exp(0.5 * x) * std::cos(y + 0.3 * z);
}
double sph_g(double th, double ph) {
  double x = std::sin(th) * std::cos(ph), y = std::sin(th) * std::sin(ph), z = std::cos(th);
  return std::sin(1.2 * z + 0.4 * x) + 0.2 * y * y;
}
double sph_h(double th, double ph) {
  double x = std::sin(th) * std::cos(ph), y = std::sin(th) * std::sin(ph), z = std::cos(th);
  return 1.0 / (2.0 + x * z - 0.3 * y);
}

}  // namespace

TEST_CASE("grid validation") {
  GridSpec s;
  s.n_mu = 7;
  CHECK_THROWS(Grid::create(s));
  s.n_mu = 6;
  CHECK_THROWS(Grid::create(s));
  s.n_mu = 8;
  CHECK_NOTHROW(Grid::create(s));
  GridPtr g = sphere_grid(16);
  CHECK(g->mu(0) == doctest::Approx(0.5 * M_PI / 16));
  CHECK(g->mu(15) == doctest::Approx(M_PI - 0.5 * M_PI / 16));
}

TEST_CASE("spectral derivatives on periodic directions") {
  GridPtr g = flat_grid(32);
  auto f = ScalarField::sample(g, [](double, double nu) { return std::sin(2 * M_PI * nu); });
  auto expect = ScalarField::sample(g, [](double, double nu) { return 2 * M_PI * std::cos(2 * M_PI * nu); });
  CHECK(max_abs_diff(d_nu(f), expect) < 1e-12);
  CHECK(d_mu(f).max_abs() < 1e-12);
  ScalarField c(g, 3.7);
  CHECK(d_mu(c).max_abs() < 1e-13);
  CHECK(d_nu(c).max_abs() < 1e-13);
}

TEST_CASE("theta derivative across the poles") {
  auto err = [](int n, DiffScheme s) {
    GridPtr g = sphere_grid(n, s);
    auto f = ScalarField::sample(g, [](double th, double) { return std::cos(th); });
    auto e = ScalarField::sample(g, [](double th, double) { return -std::sin(th); }, Parity::odd);
    ScalarField d = d_mu(f);
    CHECK(d.parity() == Parity::odd);
    return max_abs_diff(d, e);
  };
  double e16 = err(16, DiffScheme::fd4), e32 = err(32, DiffScheme::fd4), e64 = err(64, DiffScheme::fd4);
  CHECK(e16 / e32 == doctest::Approx(16.0).epsilon(0.05));
  CHECK(e32 / e64 == doctest::Approx(16.0).epsilon(0.05));
  CHECK(err(16, DiffScheme::spectral) < 1e-13);

  // odd fields continue with a sign change: d/dtheta of sin(theta)cos(phi) = cos(theta)cos(phi)
  GridPtr g = sphere_grid(24);
  auto f = ScalarField::sample(g, [](double th, double ph) { return std::sin(th) * std::cos(ph); });
  auto e = ScalarField::sample(g, [](double th, double ph) { return std::cos(th) * std::cos(ph); }, Parity::odd);
  CHECK(max_abs_diff(d_mu(f), e) < 1e-12);
}

TEST_CASE("bracket") {
  GridPtr g = flat_grid(32);
  auto f = ScalarField::sample(g, [](double mu, double) { return std::sin(2 * M_PI * mu); });
  auto h = ScalarField::sample(g, [](double, double nu) { return std::sin(2 * M_PI * nu); });
  auto expect = ScalarField::sample(g, [](double mu, double nu) {
    return 4 * M_PI * M_PI * std::cos(2 * M_PI * mu) * std::cos(2 * M_PI * nu);
  });
  CHECK(max_abs_diff(bracket(f, h), expect) < 1e-10);
  CHECK(bracket(f, f).max_abs() == 0.0);

  GridPtr s = sphere_grid(32);
  auto a = ScalarField::sample(s, sph_f), b = ScalarField::sample(s, sph_g);
  ScalarField ab = bracket(a, b), ba = bracket(b, a);
  for (int k = 0; k < ab.size(); ++k) CHECK(ab[k] == -ba[k]);
  CHECK(bracket(a, a).max_abs() == 0.0);
  CHECK(ab.parity() == Parity::odd);
  CHECK(std::abs(integrate(ab)) < 1e-10);
}

TEST_CASE("bracket obeys Leibniz to stencil accuracy") {
  GridPtr s = sphere_grid(48);
  auto f = ScalarField::sample(s, sph_f), g = ScalarField::sample(s, sph_g), h = ScalarField::sample(s, sph_h);
  ScalarField lhs = bracket(f * g, h);
  ScalarField rhs = f * bracket(g, h) + g * bracket(f, h);
  CHECK(max_abs_diff(lhs, rhs) < 1e-9 * lhs.max_abs());
}

TEST_CASE("pointwise Jacobi identity residual shrinks under refinement") {
  auto residual = [](int n) {
    GridPtr s = sphere_grid(n, DiffScheme::fd4);
    auto f = ScalarField::sample(s, sph_f), g = ScalarField::sample(s, sph_g), h = ScalarField::sample(s, sph_h);
    ScalarField r = bracket(f, bracket(g, h)) + bracket(g, bracket(h, f)) + bracket(h, bracket(f, g));
    return r.max_abs();
  };
  double r16 = residual(16), r32 = residual(32), r64 = residual(64);
  CHECK(r32 < r16 / 8);
  CHECK(r64 < r32 / 8);
}

TEST_CASE("quadrature") {
  const double R = 1.7;
  GridPtr s = sphere_grid(64);
  auto area = ScalarField::sample(s, [R](double th, double) { return R * R * std::sin(th); }, Parity::odd);
  CHECK(integrate(area) == doctest::Approx(4 * M_PI * R * R).epsilon(1e-10));
  // Y_2^0-like integrand integrates to zero, cos^2 weight to 4 pi / 3
  auto c2 = ScalarField::sample(s, [](double th, double) { return std::pow(std::cos(th), 2) * std::sin(th); }, Parity::odd);
  CHECK(integrate(c2) == doctest::Approx(4 * M_PI / 3).epsilon(1e-12));
  GridPtr t = Grid::for_chart(torus_chart(2.0), 32, 32);
  const double rho = std::sqrt(0.5);
  auto da = ScalarField::sample(t, [&](double, double th) { return (2.0 + rho * std::cos(th)) * rho; });
  CHECK(integrate(da) == doctest::Approx(4 * M_PI * M_PI * 2.0 * rho).epsilon(1e-12));
  CHECK(integrate(ScalarField(t, 0.0)) == 0.0);
}

TEST_CASE("dealiasing keeps band-limited fields and is idempotent") {
  GridPtr g = flat_grid(32);
  auto f = ScalarField::sample(g, [](double mu, double nu) { return std::cos(2 * M_PI * (3 * mu - 2 * nu)); });
  CHECK(max_abs_diff(dealias(f), f) < 1e-13);
  auto h = ScalarField::sample(g, [](double mu, double) { return std::cos(2 * M_PI * 15 * mu); });
  CHECK(dealias(h).max_abs() < 1e-13);
  GridPtr s = sphere_grid(16);
  auto r = ScalarField::sample(s, sph_f);
  ScalarField once = dealias(r);
  CHECK(max_abs_diff(dealias(once), once) < 1e-13);
}

TEST_CASE("snapshot round trip") {
  GridPtr s = sphere_grid(8);
  auto f = ScalarField::sample(s, sph_f);
  std::stringstream ss;
  write_snapshot(ss, f, "sphere", 1.0, 0.25);
  std::string first;
  std::getline(ss, first);
  CHECK(first.rfind("# grid 0 3.1415926535897931 0 6.2831853071795862 8 16 chart=sphere zeta=1 time=0.25", 0) == 0);
  ss.seekg(0);
  Snapshot back = read_snapshot(ss);
  CHECK(back.header.n_mu == 8);
  CHECK(back.header.n_nu == 16);
  CHECK(back.header.chart == "sphere");
  CHECK(back.header.time == 0.25);
  for (int k = 0; k < f.size(); ++k) CHECK(back.values[k] == f[k]);
  std::stringstream bad("# grid 0 1\n");
  CHECK_THROWS_AS(read_snapshot(bad), FormatError);
}
