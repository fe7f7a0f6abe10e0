// Coordinate charts (mu, nu, zeta) of R^3 whose zeta-level sets are the
// simulated surfaces, and pointwise metric / curvature evaluation.
#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "surfvort/jet.hpp"

namespace surfvort {

using Point = std::array<double, 3>;
using MetricJet = std::array<std::array<Jet, 3>, 3>;

struct SingularPointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ChartError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ChartKind { flat, sphere, torus, torus_phiz, user };
enum class PoleRule { none, sphere_offset };

// Coordinate ranges of the surface parametrization. With the sphere_offset
// pole rule mu is the polar angle-like coordinate in [mu_min, mu_max] and nu
// is periodic.
struct ChartDomain {
  double mu_min = 0.0, mu_max = 1.0;
  double nu_min = 0.0, nu_max = 1.0;
  PoleRule pole = PoleRule::none;
};

struct MetricSample {
  Eigen::Matrix3d g;
  Eigen::Matrix3d ginv;
  double det = 0.0;
  double J = 0.0;
  double gzz = 0.0;  // g^{zeta zeta}
};

// Curvature of the 2-D induced metric gamma_ab (a, b in {mu, nu}).
struct CurvatureSample {
  double christoffel2[2][2][2]{};  // [k][i][j] = Gamma^k_ij
  double christoffel1[2][2][2]{};  // [i][j][k] = Gamma_ijk = gamma_im Gamma^m_jk
  double ricci_tensor[2][2]{};
  double ricci_scalar = 0.0;
  double chi_tensor[2][2]{};
};

class Chart {
 public:
  using JetMetric = std::function<MetricJet(const Point&)>;
  using PlainMetric = std::function<Eigen::Matrix3d(const Point&)>;

  Chart(std::string name, std::array<std::string, 3> symbols, ChartDomain domain, bool orthogonal,
        ChartKind kind, JetMetric metric, int invariant_direction = -1);

  // User chart from a covariant-metric callback; derivatives by central
  // differences with step fd_step * max(1, |x|).
  static Chart user(std::string name, std::array<std::string, 3> symbols, ChartDomain domain,
                    bool orthogonal, PlainMetric metric, double fd_step = 1e-5,
                    int invariant_direction = -1);

  const std::string& name() const { return name_; }
  const std::array<std::string, 3>& symbols() const { return symbols_; }
  const ChartDomain& domain() const { return domain_; }
  bool orthogonal() const { return orthogonal_; }
  ChartKind kind() const { return kind_; }
  // Coordinate (0 = mu, 1 = nu) on which the metric does not depend, or -1.
  int invariant_direction() const { return invariant_; }

  double det_floor() const { return det_floor_; }
  void set_det_floor(double f) { det_floor_ = f; }

  MetricJet metric_jet(const Point& p) const;
  Eigen::Matrix3d metric_cov(const Point& p) const;
  Eigen::Matrix3d metric_con(const Point& p) const;
  double jacobian(const Point& p) const;
  Eigen::Matrix2d induced_metric(const Point& p) const;

 private:
  std::string name_;
  std::array<std::string, 3> symbols_;
  ChartDomain domain_;
  bool orthogonal_;
  ChartKind kind_;
  JetMetric metric_;
  int invariant_;
  double det_floor_ = 1e-14;
};

// Cartesian (x, y, z) with a doubly periodic [0,Lx) x [0,Ly) patch.
Chart flat_chart(double Lx = 1.0, double Ly = 1.0);
// Spherical (theta, phi, R).
Chart sphere_chart();
// Torus (phi, vartheta, T): r = r0 + sqrt(2T) cos(vartheta), z = sqrt(2T) sin(vartheta).
Chart torus_chart(double r0);
// Torus (phi, z, T) with r = r0 +/- sqrt(2T - z^2); singular on r = r0.
enum class TorusBranch { outer, inner };
Chart torus_phiz_chart(double r0, TorusBranch branch = TorusBranch::outer);

MetricSample metric_at(const Chart& chart, const Point& p);
CurvatureSample christoffel_at(const Chart& chart, const Point& p);
double ricci_scalar(const Chart& chart, const Point& p);

// Full 3-D Christoffel symbols [k][i][j] of g_ij.
std::array<std::array<std::array<double, 3>, 3>, 3> christoffel3_at(const Chart& chart,
                                                                     const Point& p);
// max_{ijk} |d_k g_ij - Gamma^m_ki g_mj - Gamma^m_kj g_im| in three dimensions.
double metric_compatibility_residual(const Chart& chart, const Point& p);

// u maps a point to contravariant components. dim == 2 uses the induced
// metric of the zeta-level surface through the point (u[2] ignored), dim == 3
// the full metric.
using VectorCallback = std::function<std::array<double, 3>(const Point&)>;
double killing_residual(const Chart& chart, const VectorCallback& u, const std::vector<Point>& points,
                        int dim = 2, double step = 1e-5);

// Everything the grid cache needs at one surface node.
struct SurfacePoint {
  MetricSample metric;
  CurvatureSample curv;
  double gamma[2][2]{};
  double gamma_inv[2][2]{};
  double sqrt_gamma = 0.0;
  double dgzz[2]{};  // d_a g^{zeta zeta}
  // value, d/dzeta, d^2/dzeta^2 of J g_nunu, J g_mumu, J / g^mumu, J / g^nunu
  std::array<double, 3> Jg_nn{}, Jg_mm{}, J_over_gmm{}, J_over_gnn{};
};
SurfacePoint surface_point(const Chart& chart, const Point& p);

}  // namespace surfvort
