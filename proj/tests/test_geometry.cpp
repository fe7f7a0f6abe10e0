#include <doctest.h>

#include <cmath>
#include <random>

#include "surfvort/geometry.hpp"

using namespace surfvort;

namespace {

std::vector<Point> random_points(std::mt19937& rng, double lo0, double hi0, double lo1, double hi1,
                                 double lo2, double hi2, int n) {
  std::uniform_real_distribution<double> a(lo0, hi0), b(lo1, hi1), c(lo2, hi2);
  std::vector<Point> pts;
  for (int k = 0; k < n; ++k) pts.push_back({a(rng), b(rng), c(rng)});
  return pts;
}

// RiccT written in (r, z) of the torus cross-section.
double ricci_torus_closed(double r0, double r, double z) {
  double s = r - r0;
  return 2.0 / (r * s * (1.0 + z * z / (s * s)));
}

}  // namespace

TEST_CASE("flat chart is Cartesian") {
  Chart c = flat_chart();
  MetricSample m = metric_at(c, {0.3, -2.0, 5.0});
  CHECK((m.g - Eigen::Matrix3d::Identity()).norm() == 0.0);
  CHECK(m.J == 1.0);
  CurvatureSample cs = christoffel_at(c, {0.3, -2.0, 5.0});
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(cs.christoffel2[k][i][j] == 0.0);
  CHECK(cs.ricci_scalar == 0.0);
}

TEST_CASE("sphere metric sample at the equator") {
  MetricSample m = metric_at(sphere_chart(), {M_PI / 2, 0.7, 2.0});
  CHECK(m.ginv(0, 0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(m.ginv(1, 1) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(m.ginv(2, 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m.J == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(m.gzz == doctest::Approx(1.0));
}

TEST_CASE("torus (phi,z,T) contravariant components") {
  const double r0 = 2.0, T = 0.25, z = 0.3;
  Chart c = torus_phiz_chart(r0);
  MetricSample m = metric_at(c, {0.4, z, T});
  double r = r0 + std::sqrt(2 * T - z * z);
  CHECK(m.ginv(0, 0) == doctest::Approx(1.0 / (r * r)).epsilon(1e-12));
  CHECK(m.ginv(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.ginv(1, 2) == doctest::Approx(z).epsilon(1e-12));
  CHECK(m.ginv(2, 2) == doctest::Approx(2 * T).epsilon(1e-12));
  CHECK(std::abs(m.ginv(0, 1)) < 1e-15);
  CHECK(m.J == doctest::Approx((r - r0) / r).epsilon(1e-12));
}

TEST_CASE("inverse metric and Jacobian identities at random points") {
  std::mt19937 rng(7);
  struct Case {
    Chart chart;
    std::vector<Point> pts;
  };
  std::vector<Case> cases = {
      {flat_chart(), random_points(rng, -3, 3, -3, 3, -3, 3, 1000)},
      {sphere_chart(), random_points(rng, 0.05, M_PI - 0.05, 0, 2 * M_PI, 0.5, 3, 1000)},
      {torus_chart(2.0), random_points(rng, 0, 2 * M_PI, 0, 2 * M_PI, 0.05, 0.5, 1000)},
      {torus_phiz_chart(2.0), random_points(rng, 0, 2 * M_PI, -0.6, 0.6, 0.2, 0.5, 1000)},
  };
  for (auto& cs : cases) {
    double worst_inv = 0.0, worst_j = 0.0;
    for (const Point& p : cs.pts) {
      if (cs.chart.kind() == ChartKind::torus_phiz && 2 * p[2] - p[1] * p[1] < 0.01) continue;
      MetricSample m = metric_at(cs.chart, p);
      worst_inv = std::max(worst_inv, (m.g * m.ginv - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff());
      worst_j = std::max(worst_j, std::abs(m.J * std::sqrt(m.det) - 1.0));
      CHECK((m.g - m.g.transpose()).norm() == 0.0);
    }
    INFO(cs.chart.name());
    CHECK(worst_inv < 1e-12);
    CHECK(worst_j < 1e-12);
  }
}

TEST_CASE("Christoffel symbols of the induced metrics") {
  SUBCASE("sphere Gamma^theta_phiphi") {
    for (double th : {0.3, 1.0, 2.5}) {
      CurvatureSample cs = christoffel_at(sphere_chart(), {th, 1.0, 1.7});
      CHECK(cs.christoffel2[0][1][1] == doctest::Approx(-std::sin(th) * std::cos(th)).epsilon(1e-13));
      CHECK(cs.christoffel2[1][0][1] == doctest::Approx(std::cos(th) / std::sin(th)).epsilon(1e-13));
    }
  }
  SUBCASE("torus Gamma^phi_phiz = (1/r) dr/dz") {
    const double r0 = 2.0, T = 0.25;
    for (double z : {-0.5, 0.1, 0.6}) {
      CurvatureSample cs = christoffel_at(torus_phiz_chart(r0), {0.0, z, T});
      double s = std::sqrt(2 * T - z * z), r = r0 + s;
      CHECK(cs.christoffel2[0][0][1] == doctest::Approx((1.0 / r) * (-z / s)).epsilon(1e-12));
    }
  }
  SUBCASE("lower-index symmetry and metric compatibility") {
    std::mt19937 rng(3);
    for (const Chart& c : {sphere_chart(), torus_chart(2.0), torus_phiz_chart(3.0)}) {
      for (const Point& p : random_points(rng, 0.2, 2.9, 0.0, 0.5, 0.3, 0.4, 50)) {
        CurvatureSample cs = christoffel_at(c, p);
        for (int k = 0; k < 2; ++k) CHECK(cs.christoffel2[k][0][1] == cs.christoffel2[k][1][0]);
        CHECK(metric_compatibility_residual(c, p) < 1e-12);
      }
    }
  }
}

TEST_CASE("finite-difference Christoffel symbols converge at second order") {
  Chart exact = sphere_chart();
  auto metric = [exact](const Point& p) { return exact.metric_cov(p); };
  Point p{0.9, 0.4, 1.3};
  CurvatureSample ref = christoffel_at(exact, p);
  auto err = [&](double h) {
    Chart fd = Chart::user("sphere_fd", {"theta", "phi", "R"}, exact.domain(), true, metric, h);
    CurvatureSample cs = christoffel_at(fd, p);
    double e = 0.0;
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          e = std::max(e, std::abs(cs.christoffel2[k][i][j] - ref.christoffel2[k][i][j]));
    return e;
  };
  double e1 = err(1e-2), e2 = err(5e-3), e3 = err(2.5e-3);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.05));
  // default step reproduces the analytic curvature closely
  Chart fd = Chart::user("sphere_fd", {"theta", "phi", "R"}, exact.domain(), true, metric);
  CHECK(ricci_scalar(fd, p) == doctest::Approx(2.0 / (1.3 * 1.3)).epsilon(1e-8));
}

TEST_CASE("Ricci curvature") {
  SUBCASE("sphere is Einstein with scalar 2/R^2") {
    for (double R : {0.5, 1.0, 3.0}) {
      Point p{1.1, 2.0, R};
      CurvatureSample cs = christoffel_at(sphere_chart(), p);
      CHECK(cs.ricci_scalar == doctest::Approx(2.0 / (R * R)).epsilon(1e-12));
      Eigen::Matrix2d gam = sphere_chart().induced_metric(p);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) CHECK(std::abs(cs.ricci_tensor[a][b] - gam(a, b) / (R * R)) < 1e-12);
    }
  }
  SUBCASE("torus closed form in both charts") {
    const double r0 = 2.0, T = 0.25, rho = std::sqrt(2 * T);
    for (double th : {0.2, 1.0, 2.0, 3.0, 4.0, 5.5}) {
      double r = r0 + rho * std::cos(th), z = rho * std::sin(th);
      double expect = ricci_torus_closed(r0, r, z);
      CHECK(std::abs(ricci_scalar(torus_chart(r0), {0.3, th, T}) - expect) < 1e-10);
      TorusBranch br = std::cos(th) > 0 ? TorusBranch::outer : TorusBranch::inner;
      CHECK(std::abs(ricci_scalar(torus_phiz_chart(r0, br), {0.3, z, T}) - expect) < 1e-10);
    }
  }
  SUBCASE("torus ricci sign follows the side of the tube") {
    CHECK(ricci_scalar(torus_chart(2.0), {0.0, 0.0, 0.25}) > 0.0);
    CHECK(ricci_scalar(torus_chart(2.0), {0.0, M_PI, 0.25}) < 0.0);
  }
  SUBCASE("vanishing major radius recovers the sphere") {
    const double T = 0.3, R2 = 2 * T;
    double prev = 1e300;
    for (int k = 1; k <= 7; ++k) {
      double r0 = std::pow(10.0, -k), dev = 0.0;
      for (double th : {-1.0, -0.5, 0.0, 0.4, 1.0})
        dev = std::max(dev, std::abs(ricci_scalar(torus_chart(r0), {0.0, th, T}) * R2 / 2.0 - 1.0));
      CHECK(dev < prev);
      prev = dev;
    }
    CHECK(prev < 1e-6);
  }
}

TEST_CASE("singular points fail loudly") {
  CHECK_THROWS_AS(metric_at(sphere_chart(), {0.0, 1.0, 1.0}), SingularPointError);
  CHECK_THROWS_AS(metric_at(torus_phiz_chart(2.0), {0.0, std::sqrt(0.5), 0.25}), SingularPointError);
  CHECK_THROWS_AS(metric_at(torus_chart(2.0), {0.0, 0.0, 0.0}), SingularPointError);
  Chart c = sphere_chart();
  c.set_det_floor(1e-2);
  CHECK_THROWS_AS(metric_at(c, {0.05, 1.0, 1.0}), SingularPointError);
  CHECK_NOTHROW(metric_at(sphere_chart(), {0.05, 1.0, 1.0}));
}

TEST_CASE("Killing residual") {
  std::mt19937 rng(11);
  SUBCASE("Euclidean isometries in Cartesian coordinates") {
    Eigen::Vector3d a(0.3, -1.0, 2.0), b(0.7, 0.1, -0.4);
    VectorCallback u = [&](const Point& p) {
      Eigen::Vector3d v = a + b.cross(Eigen::Vector3d(p[0], p[1], p[2]));
      return std::array<double, 3>{v[0], v[1], v[2]};
    };
    CHECK(killing_residual(flat_chart(), u, random_points(rng, -2, 2, -2, 2, -2, 2, 20), 3) < 1e-9);
  }
  SUBCASE("rotations restricted to the sphere") {
    Eigen::Vector3d b(0.4, -0.9, 0.25);
    VectorCallback u = [&](const Point& p) {
      double th = p[0], ph = p[1], R = p[2];
      Eigen::Vector3d x(R * std::sin(th) * std::cos(ph), R * std::sin(th) * std::sin(ph), R * std::cos(th));
      Eigen::Vector3d v = b.cross(x);
      Eigen::Vector3d et(std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th));
      Eigen::Vector3d ep(-std::sin(ph), std::cos(ph), 0.0);
      return std::array<double, 3>{v.dot(et) / R, v.dot(ep) / (R * std::sin(th)), 0.0};
    };
    CHECK(killing_residual(sphere_chart(), u, random_points(rng, 0.3, 2.8, 0, 6, 1.5, 1.5, 20)) < 1e-8);
    VectorCallback bad = [](const Point& p) { return std::array<double, 3>{std::sin(p[0]), 0.0, 0.0}; };
    CHECK(killing_residual(sphere_chart(), bad, {{1.0, 0.0, 1.0}}) > 0.1);
  }
  SUBCASE("toroidal rotation on the torus") {
    VectorCallback u = [](const Point&) { return std::array<double, 3>{1.0, 0.0, 0.0}; };
    CHECK(killing_residual(torus_chart(2.0), u, random_points(rng, 0, 6, 0, 6, 0.25, 0.25, 20)) < 1e-12);
    VectorCallback bad = [](const Point&) { return std::array<double, 3>{0.0, 1.0, 0.0}; };
    CHECK(killing_residual(torus_chart(2.0), bad, {{0.0, 1.0, 0.25}}) > 0.1);
  }
}
