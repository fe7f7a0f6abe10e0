#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "surfvort/fields.hpp"
#include "surfvort/riemannian_diffusion.hpp"

using namespace surfvort;
using namespace surfvort::testing;

namespace {

// gamma^{ia} (d_a K_im - Gamma^k_ai K_km - Gamma^k_am K_ik), raised
TangentField divergence_of_strain(const TangentField& u, const GeometryCache& c) {
  SymmetricTensor K = strain_tensor(u, c);
  const ScalarField* gi[2][2] = {{&c.gi_mm, &c.gi_mn}, {&c.gi_mn, &c.gi_nn}};
  ScalarField out[2];
  for (int m = 0; m < 2; ++m) {
    ScalarField s;
    bool first = true;
    for (int i = 0; i < 2; ++i) {
      ScalarField dK[2];
      gradient(K.c[i][m], dK[0], dK[1]);
      for (int a = 0; a < 2; ++a) {
        ScalarField t = dK[a];
        for (int k = 0; k < 2; ++k) t = t - c.christoffel[k][a][i] * K.c[k][m] - c.christoffel[k][a][m] * K.c[i][k];
        s = first ? *gi[i][a] * t : s + *gi[i][a] * t;
        first = false;
      }
    }
    out[m] = s;
  }
  return raise({out[0], out[1]}, c);
}

TangentField minus(const TangentField& a, const TangentField& b) { return {a.mu - b.mu, a.nu - b.nu}; }

// pointwise metric norm, so the 1/sin(theta) of contravariant components near the poles does not count
double rel(const TangentField& a, const TangentField& b, const GeometryCache& c) {
  return max_norm(minus(a, b), c) / std::max(1e-300, max_norm(b, c));
}

}  // namespace

TEST_CASE("strain tensor") {
  auto flat = make_cache(flat_chart(), 32, 32, 0.0);
  SUBCASE("shear flow") {
    TangentField u{ScalarField::sample(flat->grid, [](double, double y) { return std::sin(2 * M_PI * y); }),
                   ScalarField(flat->grid, 0.0)};
    SymmetricTensor K = strain_tensor(u, *flat);
    auto e = ScalarField::sample(flat->grid, [](double, double y) { return 2 * M_PI * std::cos(2 * M_PI * y); });
    CHECK(max_abs_diff(K.c[0][1], e) < 1e-12);
    CHECK(max_abs_diff(K.c[1][0], e) < 1e-12);
    CHECK(K.c[0][0].max_abs() < 1e-12);
    CHECK(K.c[1][1].max_abs() < 1e-12);
    CHECK(dissipation_functional(u, *flat) == doctest::Approx(M_PI * M_PI).epsilon(1e-12));
  }
  SUBCASE("zero field") {
    TangentField u{ScalarField(flat->grid, 0.0), ScalarField(flat->grid, 0.0)};
    CHECK(dissipation_functional(u, *flat) == 0.0);
  }
  SUBCASE("sphere rotation is a Killing field") {
    auto s = make_cache(sphere_chart(), 32, 64, 1.3);
    TangentField u{ScalarField(s->grid, 0.0, Parity::odd), ScalarField(s->grid, 1.0)};
    SymmetricTensor K = strain_tensor(u, *s);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(K.c[i][j].max_abs() < 1e-12);
    CHECK(std::abs(dissipation_functional(u, *s)) < 1e-20);
    CHECK(max_norm(killing_diffusion_operator(u, *s), *s) < 1e-10);
  }
  SUBCASE("dissipation is nonnegative") {
    auto t = make_cache(torus_chart(2.0), 32, 32, 0.5);
    for (unsigned seed : {1u, 2u, 3u}) {
      auto u = velocity_from_stream(random_band_limited(t->grid, {seed, 0, 0, 1.0}), *t);
      CHECK(dissipation_functional(u, *t) > 0.0);
    }
  }
}

TEST_CASE("killing diffusion operator on the flat square is the Laplacian") {
  auto c = make_cache(flat_chart(), 32, 32, 0.0);
  auto psi = ScalarField::sample(c->grid, [](double x, double y) { return std::cos(2 * M_PI * (x + 2 * y)) + std::sin(2 * M_PI * x); });
  auto u = velocity_from_stream(psi, *c);
  TangentField lap{d_mu(d_mu(u.mu)) + d_nu(d_nu(u.mu)), d_mu(d_mu(u.nu)) + d_nu(d_nu(u.nu))};
  CHECK(rel(killing_diffusion_operator(u, *c), lap, *c) < 1e-12);
  TangentField shear{ScalarField::sample(c->grid, [](double, double y) { return std::sin(2 * M_PI * y); }),
                     ScalarField(c->grid, 0.0)};
  auto out = killing_diffusion_operator(shear, *c);
  auto e = ScalarField::sample(c->grid, [](double, double y) { return -4 * M_PI * M_PI * std::sin(2 * M_PI * y); });
  CHECK(max_abs_diff(out.mu, e) < 1e-9);
  CHECK(out.nu.max_abs() < 1e-9);
}

TEST_CASE("unit sphere") {
  auto c = make_cache(sphere_chart(), 32, 64, 1.0);
  SUBCASE("harmonic stream functions are eigenfields") {
    for (int l = 1; l <= 4; ++l)
      for (int m : {0, l - 1, -l}) {
        auto u = velocity_from_stream(spherical_harmonic(c->grid, l, m), *c);
        TangentField e{(2.0 - l * (l + 1)) * u.mu, (2.0 - l * (l + 1)) * u.nu};
        CAPTURE(l);
        CAPTURE(m);
        CHECK(max_norm(minus(killing_diffusion_operator(u, *c), e), *c) <= 1e-8 * max_norm(u, *c));
      }
  }
  SUBCASE("projected Laplacian agrees") {
    auto zonal = velocity_from_stream(ScalarField::sample(c->grid, [](double t, double) { return std::cos(t); }), *c);
    CHECK(max_norm(sphere_projected_laplacian(zonal, *c), *c) < 1e-9);
    CHECK(max_norm(killing_diffusion_operator(zonal, *c), *c) < 1e-9);
    auto u = velocity_from_stream(random_band_limited(c->grid, {11, 8, 0, 1.0}), *c);
    CHECK(rel(sphere_projected_laplacian(u, *c), killing_diffusion_operator(u, *c), *c) < 1e-10);
    TangentField z{ScalarField(c->grid, 0.0, Parity::odd), ScalarField(c->grid, 0.0)};
    CHECK(max_abs(sphere_projected_laplacian(z, *c)) == 0.0);
  }
  SUBCASE("projected Laplacian needs the unit sphere") {
    auto r2 = make_cache(sphere_chart(), 16, 32, 2.0);
    TangentField z{ScalarField(r2->grid, 0.0, Parity::odd), ScalarField(r2->grid, 0.0)};
    CHECK_THROWS_AS(sphere_projected_laplacian(z, *r2), ChartError);
    auto f = make_cache(flat_chart(), 16, 16, 0.0);
    TangentField zf{ScalarField(f->grid, 0.0), ScalarField(f->grid, 0.0)};
    CHECK_THROWS_AS(sphere_projected_laplacian(zf, *f), ChartError);
  }
}

TEST_CASE("operator equals the divergence of the strain for solenoidal fields") {
  auto check = [](std::shared_ptr<const GeometryCache> c, unsigned seed, double tol) {
    auto u = velocity_from_stream(random_band_limited(c->grid, {seed, 6, 0, 1.0}), *c);
    CHECK(divergence(u, *c).max_abs() < 1e-10 * max_abs(u) * 64);
    CHECK(rel(killing_diffusion_operator(u, *c), divergence_of_strain(u, *c), *c) < tol);
  };
  check(make_cache(sphere_chart(), 32, 64, 1.7), 4, 1e-8);
  check(make_cache(torus_chart(2.0), 48, 48, 0.5), 5, 1e-10);
  check(make_cache(torus_chart(3.0), 48, 48, 0.3), 6, 1e-10);
  check(make_cache(sheared_chart(0.3), 32, 32, 0.0), 7, 1e-10);
}

TEST_CASE("variation of the dissipation functional") {
  for (auto c : {make_cache(sphere_chart(), 32, 64, 1.0), make_cache(torus_chart(2.0), 48, 48, 0.5)}) {
    auto u = velocity_from_stream(random_band_limited(c->grid, {21, 6, 0, 1.0}), *c);
    auto v = velocity_from_stream(random_band_limited(c->grid, {22, 6, 0, 1.0}), *c);
    const double h = 1e-4;
    TangentField p{u.mu + h * v.mu, u.nu + h * v.nu}, m{u.mu - h * v.mu, u.nu - h * v.nu};
    double fd = (dissipation_functional(p, *c) - dissipation_functional(m, *c)) / (2 * h);
    double an = -tangent_inner(killing_diffusion_operator(u, *c), v, *c);
    CHECK(fd == doctest::Approx(an).epsilon(1e-7));
  }
}

TEST_CASE("output divergence is measurable") {
  auto c = make_cache(torus_chart(2.0), 32, 32, 0.5);
  auto u = velocity_from_stream(random_band_limited(c->grid, {9, 6, 0, 1.0}), *c);
  double d = divergence(killing_diffusion_operator(u, *c), *c).max_abs();
  CHECK(std::isfinite(d));
  MESSAGE("torus output divergence " << d);
}
