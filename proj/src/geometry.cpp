#include "surfvort/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace surfvort {

namespace {

Jet det3(const MetricJet& g) {
  return g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
         g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
         g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
}

// cofactor C_ij; inverse is C_ji / det (symmetric here)
Jet cofactor(const MetricJet& g, int i, int j) {
  int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
  int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
  return g[r0][c0] * g[r1][c1] - g[r0][c1] * g[r1][c0];
}

std::string where(const Chart& c, const Point& p) {
  std::ostringstream os;
  os << c.name() << " chart at (" << p[0] << ", " << p[1] << ", " << p[2] << ")";
  return os.str();
}

void check_det(const Chart& c, const Point& p, double det) {
  if (!std::isfinite(det) || std::abs(det) < c.det_floor() || 1.0 / std::abs(det) < c.det_floor()) {
    std::ostringstream os;
    os << "singular metric (|g| = " << det << ") on " << where(c, p);
    throw SingularPointError(os.str());
  }
}

std::array<double, 3> zeta_derivs(const Jet& j) { return {j.v, j.d[2], j.h[2][2]}; }

}  // namespace

Chart::Chart(std::string name, std::array<std::string, 3> symbols, ChartDomain domain,
             bool orthogonal, ChartKind kind, JetMetric metric, int invariant_direction)
    : name_(std::move(name)),
      symbols_(std::move(symbols)),
      domain_(domain),
      orthogonal_(orthogonal),
      kind_(kind),
      metric_(std::move(metric)),
      invariant_(invariant_direction) {}

Chart Chart::user(std::string name, std::array<std::string, 3> symbols, ChartDomain domain,
                  bool orthogonal, PlainMetric metric, double fd_step, int invariant_direction) {
  auto jet = [metric, fd_step](const Point& p) {
    std::array<double, 3> h1, h2;
    for (int k = 0; k < 3; ++k) {
      double s = std::max(1.0, std::abs(p[k]));
      h1[k] = fd_step * s;
      h2[k] = 2e-3 * s;  // second derivatives: fixed step, 4th-order stencils
    }
    auto at = [&](std::initializer_list<std::pair<int, double>> shifts) {
      Point q = p;
      for (auto [k, d] : shifts) q[k] += d;
      return metric(q);
    };
    Eigen::Matrix3d g0 = metric(p);
    std::array<Eigen::Matrix3d, 3> d1;
    std::array<std::array<Eigen::Matrix3d, 3>, 3> d2;
    for (int k = 0; k < 3; ++k) {
      d1[k] = (at({{k, h1[k]}}) - at({{k, -h1[k]}})) / (2.0 * h1[k]);
      double h = h2[k];
      d2[k][k] = (-at({{k, 2 * h}}) + 16.0 * at({{k, h}}) - 30.0 * g0 + 16.0 * at({{k, -h}}) -
                  at({{k, -2 * h}})) /
                 (12.0 * h * h);
    }
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        auto mixed = [&](double s) {
          double ha = s * h2[a], hb = s * h2[b];
          return Eigen::Matrix3d((at({{a, ha}, {b, hb}}) - at({{a, ha}, {b, -hb}}) -
                                  at({{a, -ha}, {b, hb}}) + at({{a, -ha}, {b, -hb}})) /
                                 (4.0 * ha * hb));
        };
        d2[a][b] = (4.0 * mixed(1.0) - mixed(2.0)) / 3.0;
        d2[b][a] = d2[a][b];
      }
    MetricJet m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Jet& e = m[i][j];
        e.v = g0(i, j);
        for (int k = 0; k < 3; ++k) {
          e.d[k] = d1[k](i, j);
          for (int l = 0; l < 3; ++l) e.h[k][l] = d2[k][l](i, j);
        }
      }
    return m;
  };
  return Chart(std::move(name), std::move(symbols), domain, orthogonal, ChartKind::user, jet,
               invariant_direction);
}

MetricJet Chart::metric_jet(const Point& p) const { return metric_(p); }

Eigen::Matrix3d Chart::metric_cov(const Point& p) const { return metric_at(*this, p).g; }
Eigen::Matrix3d Chart::metric_con(const Point& p) const { return metric_at(*this, p).ginv; }
double Chart::jacobian(const Point& p) const { return metric_at(*this, p).J; }
Eigen::Matrix2d Chart::induced_metric(const Point& p) const {
  return metric_at(*this, p).g.topLeftCorner<2, 2>();
}

Chart flat_chart(double Lx, double Ly) {
  ChartDomain d{0.0, Lx, 0.0, Ly, PoleRule::none};
  return Chart("flat", {"x", "y", "z"}, d, true, ChartKind::flat, [](const Point&) {
    MetricJet g;
    for (int i = 0; i < 3; ++i) g[i][i] = Jet(1.0);
    return g;
  }, 1);
}

Chart sphere_chart() {
  ChartDomain d{0.0, M_PI, 0.0, 2.0 * M_PI, PoleRule::sphere_offset};
  return Chart("sphere", {"theta", "phi", "R"}, d, true, ChartKind::sphere, [](const Point& p) {
    Jet th = Jet::variable(p[0], 0), R = Jet::variable(p[2], 2);
    Jet s = sin(th);
    MetricJet g;
    g[0][0] = R * R;
    g[1][1] = R * R * s * s;
    g[2][2] = Jet(1.0);
    return g;
  }, 1);
}

Chart torus_chart(double r0) {
  ChartDomain d{0.0, 2.0 * M_PI, 0.0, 2.0 * M_PI, PoleRule::none};
  return Chart("torus", {"phi", "vartheta", "T"}, d, true, ChartKind::torus, [r0](const Point& p) {
    Jet th = Jet::variable(p[1], 1), T = Jet::variable(p[2], 2);
    Jet r = Jet(r0) + sqrt(2.0 * T) * cos(th);
    MetricJet g;
    g[0][0] = r * r;
    g[1][1] = 2.0 * T;
    g[2][2] = inv(2.0 * T);
    return g;
  }, 0);
}

Chart torus_phiz_chart(double r0, TorusBranch branch) {
  double sgn = branch == TorusBranch::outer ? 1.0 : -1.0;
  ChartDomain d{0.0, 2.0 * M_PI, -1.0, 1.0, PoleRule::none};
  return Chart(branch == TorusBranch::outer ? "torus_phiz" : "torus_phiz_inner", {"phi", "z", "T"}, d,
               false, ChartKind::torus_phiz, [r0, sgn](const Point& p) {
                 Jet z = Jet::variable(p[1], 1), T = Jet::variable(p[2], 2);
                 Jet s = sgn * sqrt(2.0 * T - z * z);  // r - r0
                 Jet r = Jet(r0) + s;
                 Jet is2 = inv(s * s);
                 MetricJet g;
                 g[0][0] = r * r;
                 g[1][1] = 2.0 * T * is2;
                 g[1][2] = -z * is2;
                 g[2][1] = g[1][2];
                 g[2][2] = is2;
                 return g;
               }, 0);
}

MetricSample metric_at(const Chart& chart, const Point& p) {
  MetricJet m = chart.metric_jet(p);
  MetricSample s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s.g(i, j) = m[i][j].v;
  s.det = s.g.determinant();
  check_det(chart, p, s.det);
  s.ginv = s.g.inverse();
  s.J = 1.0 / std::sqrt(s.det);
  s.gzz = s.ginv(2, 2);
  return s;
}

namespace {

// Induced-metric curvature from a metric jet (rows/cols 0..1).
CurvatureSample curvature_from_jet(const MetricJet& m, double gi[2][2]) {
  double dg[2][2][2], ddg[2][2][2][2];  // dg[a][b][c] = d_c gamma_ab
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        dg[a][b][c] = m[a][b].d[c];
        for (int e = 0; e < 2; ++e) ddg[a][b][c][e] = m[a][b].h[c][e];
      }
  double dgi[2][2][2];  // d_c gamma^ab
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        double s = 0.0;
        for (int e = 0; e < 2; ++e)
          for (int f = 0; f < 2; ++f) s -= gi[a][e] * dg[e][f][c] * gi[f][b];
        dgi[a][b][c] = s;
      }
  CurvatureSample cs;
  double G[2][2][2], dG[2][2][2][2];  // G[k][i][j], dG[k][i][j][c]
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double g = 0.0;
        double dgc[2] = {0.0, 0.0};
        for (int mm = 0; mm < 2; ++mm) {
          double S = dg[mm][j][i] + dg[mm][i][j] - dg[i][j][mm];
          g += 0.5 * gi[k][mm] * S;
          for (int c = 0; c < 2; ++c) {
            double dS = ddg[mm][j][i][c] + ddg[mm][i][j][c] - ddg[i][j][mm][c];
            dgc[c] += 0.5 * (dgi[k][mm][c] * S + gi[k][mm] * dS);
          }
        }
        G[k][i][j] = g;
        dG[k][i][j][0] = dgc[0];
        dG[k][i][j][1] = dgc[1];
        cs.christoffel2[k][i][j] = g;
      }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        double s = 0.0;
        for (int mm = 0; mm < 2; ++mm) s += m[i][mm].v * G[mm][j][k];
        cs.christoffel1[i][j][k] = s;
      }
  double trG[2];  // Gamma^p_cp
  for (int c = 0; c < 2; ++c) trG[c] = G[0][c][0] + G[1][c][1];
  for (int l = 0; l < 2; ++l)
    for (int mm = 0; mm < 2; ++mm) {
      double r = 0.0;
      for (int s = 0; s < 2; ++s) {
        r += dG[s][l][mm][s] - dG[s][mm][s][l];
        for (int i = 0; i < 2; ++i) r += G[i][i][s] * G[s][l][mm] - G[s][l][i] * G[i][s][mm];
      }
      cs.ricci_tensor[l][mm] = r;
    }
  cs.ricci_scalar = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) cs.ricci_scalar += gi[a][b] * cs.ricci_tensor[a][b];
  for (int l = 0; l < 2; ++l)
    for (int mm = 0; mm < 2; ++mm) {
      double x = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
          x += trG[k] * gi[i][k] * dg[i][l][mm] + dgi[i][k][k] * dg[i][l][mm] +
               gi[i][k] * ddg[i][l][mm][k];
      for (int k = 0; k < 2; ++k) x -= dG[k][mm][k][l];
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k) x += G[j][i][l] * gi[i][k] * (dg[j][mm][k] - dg[k][mm][j]);
      cs.chi_tensor[l][mm] = x;
    }
  return cs;
}

void induced_inverse(const MetricJet& m, double gi[2][2]) {
  double a = m[0][0].v, b = m[0][1].v, d = m[1][1].v;
  double det = a * d - b * b;
  gi[0][0] = d / det;
  gi[1][1] = a / det;
  gi[0][1] = gi[1][0] = -b / det;
}

}  // namespace

CurvatureSample christoffel_at(const Chart& chart, const Point& p) {
  metric_at(chart, p);  // singularity check
  MetricJet m = chart.metric_jet(p);
  double gi[2][2];
  induced_inverse(m, gi);
  return curvature_from_jet(m, gi);
}

double ricci_scalar(const Chart& chart, const Point& p) { return christoffel_at(chart, p).ricci_scalar; }

std::array<std::array<std::array<double, 3>, 3>, 3> christoffel3_at(const Chart& chart, const Point& p) {
  MetricSample s = metric_at(chart, p);
  MetricJet m = chart.metric_jet(p);
  std::array<std::array<std::array<double, 3>, 3>, 3> G{};
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double g = 0.0;
        for (int mm = 0; mm < 3; ++mm)
          g += 0.5 * s.ginv(k, mm) * (m[mm][j].d[i] + m[mm][i].d[j] - m[i][j].d[mm]);
        G[k][i][j] = g;
      }
  return G;
}

double metric_compatibility_residual(const Chart& chart, const Point& p) {
  auto G = christoffel3_at(chart, p);
  MetricJet m = chart.metric_jet(p);
  double r = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        double v = m[i][j].d[k];
        for (int mm = 0; mm < 3; ++mm) v -= G[mm][k][i] * m[mm][j].v + G[mm][k][j] * m[i][mm].v;
        r = std::max(r, std::abs(v));
      }
  return r;
}

double killing_residual(const Chart& chart, const VectorCallback& u, const std::vector<Point>& points,
                        int dim, double step) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("killing_residual: dim must be 2 or 3");
  double worst = 0.0;
  for (const Point& p : points) {
    metric_at(chart, p);
    MetricJet m = chart.metric_jet(p);
    auto u0 = u(p);
    double du[3][3] = {};  // du[i][k] = d_i u^k
    for (int i = 0; i < dim; ++i) {
      double h = step * std::max(1.0, std::abs(p[i]));
      Point a = p, b = p;
      a[i] += h;
      b[i] -= h;
      auto ua = u(a), ub = u(b);
      for (int k = 0; k < dim; ++k) du[i][k] = (ua[k] - ub[k]) / (2.0 * h);
    }
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        double v = 0.0;
        for (int k = 0; k < dim; ++k)
          v += m[j][k].v * du[i][k] + m[k][i].v * du[j][k] + m[i][j].d[k] * u0[k];
        worst = std::max(worst, std::abs(v));
      }
  }
  return worst;
}

SurfacePoint surface_point(const Chart& chart, const Point& p) {
  SurfacePoint sp;
  sp.metric = metric_at(chart, p);
  MetricJet m = chart.metric_jet(p);
  Jet det = det3(m);
  Jet J = inv(sqrt(det));
  Jet gmm_con = cofactor(m, 0, 0) / det;
  Jet gnn_con = cofactor(m, 1, 1) / det;
  Jet gzz_con = cofactor(m, 2, 2) / det;
  sp.dgzz[0] = gzz_con.d[0];
  sp.dgzz[1] = gzz_con.d[1];
  sp.Jg_nn = zeta_derivs(J * m[1][1]);
  sp.Jg_mm = zeta_derivs(J * m[0][0]);
  sp.J_over_gmm = zeta_derivs(J / gmm_con);
  sp.J_over_gnn = zeta_derivs(J / gnn_con);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) sp.gamma[a][b] = m[a][b].v;
  induced_inverse(m, sp.gamma_inv);
  double gdet = sp.gamma[0][0] * sp.gamma[1][1] - sp.gamma[0][1] * sp.gamma[1][0];
  if (!(gdet > chart.det_floor())) throw SingularPointError("degenerate induced metric on " + where(chart, p));
  sp.sqrt_gamma = std::sqrt(gdet);
  sp.curv = curvature_from_jet(m, sp.gamma_inv);
  return sp;
}

}  // namespace surfvort
